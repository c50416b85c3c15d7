#include "commdet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace commdet {

void DecayPolicy::validate() const {
    if (!(decay_factor > 0.0) || !(decay_factor < 1.0))
        throw std::invalid_argument("decay_factor must lie in (0,1)");
    if (cut_after_idle < 1) throw std::invalid_argument("cut_after_idle must be >= 1");
}

IntervalReport apply_interval(InteractionGraph& g, const std::vector<MessageEvent>& events,
                              const DecayPolicy& policy) {
    policy.validate();
    IntervalReport report;

    // Aggregate the interval per unordered pair. Sizes are sorted before
    // summing so the totals do not depend on event order.
    std::map<std::pair<NodeId, NodeId>, std::vector<double>> sizes;
    std::set<NodeId> mentioned;
    for (const MessageEvent& e : events) {
        if (!(e.size > 0.0) || !std::isfinite(e.size))
            throw std::invalid_argument("event size must be a positive finite value");
        mentioned.insert(e.sender);
        mentioned.insert(e.receiver);
        if (e.sender == e.receiver) {
            ++report.self_messages_dropped;
            continue;
        }
        sizes[edge_key(e.sender, e.receiver)].push_back(e.size);
        ++report.events_applied;
    }
    for (NodeId id : mentioned) g.ensure_node(id);

    std::map<std::pair<NodeId, NodeId>, double> traffic;
    std::set<std::pair<NodeId, NodeId>> preexisting;
    for (auto& [key, vec] : sizes) {
        std::sort(vec.begin(), vec.end());
        double sum = 0.0;
        for (double s : vec) sum += s;
        traffic.emplace(key, sum);
        if (g.has_edge(key.first, key.second)) preexisting.insert(key);
    }

    // Existing edges: reinforce the active, decay the silent, cut the stale.
    for (const auto& e : g.edges()) {
        auto key = std::make_pair(e.u, e.v);
        auto it = traffic.find(key);
        if (it != traffic.end()) {
            g.set_edge(e.u, e.v, e.weight + it->second, 0);
            report.reinforced.push_back(key);
        } else {
            int idle = e.idle_intervals + 1;
            if (idle >= policy.cut_after_idle) {
                g.remove_edge(e.u, e.v);
                report.cut.push_back(key);
            } else {
                g.set_edge(e.u, e.v, e.weight * policy.decay_factor, idle);
                report.decayed.push_back(key);
            }
        }
    }

    // New pairs appearing this interval.
    for (const auto& [key, sum] : traffic) {
        if (preexisting.count(key)) continue;
        g.set_edge(key.first, key.second, sum, 0);
        report.created.push_back(key);
    }
    return report;
}

double rate(const InteractionGraph& g, NodeId a, NodeId b) { return g.edge_weight(a, b); }

}  // namespace commdet
