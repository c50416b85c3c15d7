#include "commdet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace commdet {

namespace {

std::string id_str(NodeId id) { return std::to_string(id); }

}  // namespace

bool InteractionGraph::has_node(NodeId id) const { return origin_.count(id) != 0; }

bool InteractionGraph::has_edge(NodeId a, NodeId b) const {
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.count(b) != 0;
}

NodeId InteractionGraph::origin(NodeId id) const {
    auto it = origin_.find(id);
    if (it == origin_.end()) throw std::invalid_argument("unknown node id " + id_str(id));
    return it->second;
}

std::size_t InteractionGraph::degree(NodeId id) const { return neighbors(id).size(); }

const std::map<NodeId, EdgeState>& InteractionGraph::neighbors(NodeId id) const {
    auto it = adj_.find(id);
    if (it == adj_.end()) throw std::invalid_argument("unknown node id " + id_str(id));
    return it->second;
}

double InteractionGraph::edge_weight(NodeId a, NodeId b) const {
    auto it = adj_.find(a);
    if (it == adj_.end()) return 0.0;
    auto jt = it->second.find(b);
    return jt == it->second.end() ? 0.0 : jt->second.weight;
}

int InteractionGraph::idle_intervals(NodeId a, NodeId b) const {
    auto it = adj_.find(a);
    if (it == adj_.end()) throw std::invalid_argument("no such edge");
    auto jt = it->second.find(b);
    if (jt == it->second.end()) throw std::invalid_argument("no such edge");
    return jt->second.idle_intervals;
}

std::vector<NodeId> InteractionGraph::node_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(origin_.size());
    for (const auto& [id, _] : origin_) ids.push_back(id);
    return ids;
}

std::vector<InteractionGraph::Edge> InteractionGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [u, nbrs] : adj_)
        for (const auto& [v, st] : nbrs)
            if (u < v) out.push_back({u, v, st.weight, st.idle_intervals});
    return out;
}

double InteractionGraph::total_weight() const {
    double sum = 0.0;
    for (const auto& [u, nbrs] : adj_)
        for (const auto& [v, st] : nbrs)
            if (u < v) sum += st.weight;
    return sum;
}

void InteractionGraph::insert_node(NodeId id, NodeId origin) {
    origin_.emplace(id, origin);
    adj_.emplace(id, std::map<NodeId, EdgeState>{});
    if (id >= next_id_) next_id_ = id + 1;
}

void InteractionGraph::ensure_node(NodeId id) {
    if (!has_node(id)) insert_node(id, id);
}

void InteractionGraph::add_message_weight(NodeId a, NodeId b, double amount) {
    if (a == b)
        throw std::invalid_argument("self-loop rejected: node " + id_str(a));
    if (!(amount > 0.0) || !std::isfinite(amount))
        throw std::invalid_argument("message weight must be a positive finite value");
    ensure_node(a);
    ensure_node(b);
    EdgeState& fwd = adj_[a][b];
    bool created = fwd.weight == 0.0;
    fwd.weight += amount;
    fwd.idle_intervals = 0;
    adj_[b][a] = fwd;
    if (created) ++edge_count_;
}

void InteractionGraph::set_edge(NodeId a, NodeId b, double weight, int idle_intervals) {
    if (a == b) throw std::invalid_argument("self-loop rejected: node " + id_str(a));
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("edge weight must be a positive finite value");
    if (idle_intervals < 0) throw std::invalid_argument("idle_intervals must be >= 0");
    ensure_node(a);
    ensure_node(b);
    bool created = adj_[a].count(b) == 0;
    adj_[a][b] = EdgeState{weight, idle_intervals};
    adj_[b][a] = EdgeState{weight, idle_intervals};
    if (created) ++edge_count_;
}

void InteractionGraph::remove_edge(NodeId a, NodeId b) {
    auto it = adj_.find(a);
    if (it == adj_.end() || it->second.erase(b) == 0)
        throw std::invalid_argument("no such edge (" + id_str(a) + "," + id_str(b) + ")");
    adj_[b].erase(a);
    --edge_count_;
}

std::pair<NodeId, NodeId> InteractionGraph::split_vertex(NodeId v,
                                                         const std::vector<NodeId>& side_a,
                                                         const std::vector<NodeId>& side_b) {
    NodeId a = next_id_;
    NodeId b = next_id_ + 1;
    return split_vertex_with_ids(v, side_a, side_b, a, b);
}

std::pair<NodeId, NodeId> InteractionGraph::split_vertex_with_ids(
    NodeId v, const std::vector<NodeId>& side_a, const std::vector<NodeId>& side_b,
    NodeId copy_a, NodeId copy_b) {
    if (!has_node(v)) throw std::invalid_argument("unknown node id " + id_str(v));
    if (side_a.empty() || side_b.empty())
        throw std::invalid_argument("a split must keep at least one neighbor on each side");
    if (copy_a == copy_b || has_node(copy_a) || has_node(copy_b))
        throw std::invalid_argument("split copy ids must be fresh and distinct");

    const auto& nbrs = neighbors(v);
    std::set<NodeId> sa(side_a.begin(), side_a.end());
    std::set<NodeId> sb(side_b.begin(), side_b.end());
    if (sa.size() + sb.size() != nbrs.size())
        throw std::invalid_argument("split sides must partition the neighbor set");
    for (NodeId n : sa)
        if (sb.count(n) || !nbrs.count(n))
            throw std::invalid_argument("split sides must partition the neighbor set");
    for (NodeId n : sb)
        if (!nbrs.count(n)) throw std::invalid_argument("split sides must partition the neighbor set");

    NodeId org = origin(v);
    std::map<NodeId, EdgeState> saved = nbrs;

    for (const auto& [n, _] : saved) adj_[n].erase(v);
    edge_count_ -= saved.size();
    adj_.erase(v);
    origin_.erase(v);

    insert_node(copy_a, org);
    insert_node(copy_b, org);
    for (NodeId n : sa) {
        const EdgeState& st = saved[n];
        adj_[copy_a][n] = st;
        adj_[n][copy_a] = st;
        ++edge_count_;
    }
    for (NodeId n : sb) {
        const EdgeState& st = saved[n];
        adj_[copy_b][n] = st;
        adj_[n][copy_b] = st;
        ++edge_count_;
    }
    return {copy_a, copy_b};
}

void InteractionGraph::restore_origins(const std::map<NodeId, NodeId>& origins) {
    for (const auto& [id, org] : origins) {
        auto it = origin_.find(id);
        if (it == origin_.end())
            throw std::invalid_argument("cannot set origin of unknown node " + id_str(id));
        it->second = org;
    }
}

std::vector<NodeId> Partition::overlapping_nodes() const {
    std::map<NodeId, int> seen;
    for (const auto& c : communities)
        for (NodeId id : c) ++seen[id];
    std::vector<NodeId> out;
    for (const auto& [id, n] : seen)
        if (n > 1) out.push_back(id);
    return out;
}

bool Partition::contains(NodeId id) const {
    for (const auto& c : communities)
        if (std::binary_search(c.begin(), c.end(), id)) return true;
    return false;
}

std::vector<std::vector<NodeId>> node_components(const InteractionGraph& g) {
    std::vector<std::vector<NodeId>> comps;
    std::set<NodeId> visited;
    for (NodeId start : g.node_ids()) {
        if (visited.count(start)) continue;
        std::vector<NodeId> comp;
        std::vector<NodeId> stack{start};
        visited.insert(start);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& [n, _] : g.neighbors(v))
                if (visited.insert(n).second) stack.push_back(n);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

Partition to_origin_partition(const std::vector<std::vector<NodeId>>& components,
                              const InteractionGraph& g) {
    std::vector<std::vector<NodeId>> sets;
    for (const auto& comp : components) {
        std::set<NodeId> origins;
        for (NodeId v : comp) origins.insert(g.origin(v));
        sets.emplace_back(origins.begin(), origins.end());
    }
    // lexicographic order doubles as ordering by first member
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return Partition{std::move(sets)};
}

Partition connected_components(const InteractionGraph& g) {
    return to_origin_partition(node_components(g), g);
}

InteractionGraph origin_collapsed(const InteractionGraph& g) {
    InteractionGraph out;
    for (NodeId id : g.node_ids()) out.ensure_node(g.origin(id));
    for (const auto& e : g.edges()) {
        NodeId u = g.origin(e.u), v = g.origin(e.v);
        if (u == v) continue;
        out.add_message_weight(u, v, e.weight);
    }
    return out;
}

}  // namespace commdet
