#include "commdet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace commdet {

double modularity(const InteractionGraph& g, const std::vector<std::vector<NodeId>>& communities,
                  bool weighted) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("modularity is undefined on an edgeless graph (m = 0)");

    std::map<NodeId, std::size_t> member;
    for (std::size_t c = 0; c < communities.size(); ++c)
        for (NodeId id : communities[c]) {
            if (!g.has_node(id))
                throw std::invalid_argument("community member " + std::to_string(id) +
                                            " is not a graph node");
            if (!member.emplace(id, c).second)
                throw std::invalid_argument("communities overlap on node " + std::to_string(id) +
                                            "; harden the partition first");
        }

    double m = 0.0;
    std::vector<double> intra(communities.size(), 0.0);
    std::vector<double> degsum(communities.size(), 0.0);
    for (const auto& e : g.edges()) {
        double w = weighted ? e.weight : 1.0;
        m += w;
        auto iu = member.find(e.u);
        auto iv = member.find(e.v);
        if (iu != member.end()) degsum[iu->second] += w;
        if (iv != member.end()) degsum[iv->second] += w;
        if (iu != member.end() && iv != member.end() && iu->second == iv->second)
            intra[iu->second] += w;
    }

    double q = 0.0;
    for (std::size_t c = 0; c < communities.size(); ++c) {
        double frac = degsum[c] / (2.0 * m);
        q += intra[c] / m - frac * frac;
    }
    return q;
}

namespace {

// label index per node for a non-overlapping partition restricted to `keep`
std::map<NodeId, int> membership(const Partition& p, const std::set<NodeId>& keep) {
    std::map<NodeId, int> out;
    for (std::size_t c = 0; c < p.communities.size(); ++c)
        for (NodeId id : p.communities[c]) {
            if (!keep.count(id)) continue;
            if (!out.emplace(id, static_cast<int>(c)).second)
                throw std::invalid_argument("found partition overlaps on labeled node " +
                                            std::to_string(id) + "; harden it first");
        }
    return out;
}

}  // namespace

ConfusionMatrix confusion_matrix(const Partition& found, const GroundTruth& truth) {
    std::set<NodeId> common;
    for (const auto& [id, _] : truth.labels)
        if (found.contains(id)) common.insert(id);
    if (common.empty())
        throw std::runtime_error("found partition and ground truth share no node ids");

    std::map<NodeId, int> fm = membership(found, common);
    std::map<std::string, int> truth_index;
    for (NodeId id : common) {
        const std::string& lab = truth.labels.at(id);
        truth_index.emplace(lab, static_cast<int>(truth_index.size()));
    }
    std::map<int, int> found_index;
    for (const auto& [id, c] : fm) found_index.emplace(c, static_cast<int>(found_index.size()));

    ConfusionMatrix cm;
    cm.counts.assign(truth_index.size(), std::vector<double>(found_index.size(), 0.0));
    for (NodeId id : common) {
        int i = truth_index.at(truth.labels.at(id));
        int j = found_index.at(fm.at(id));
        cm.counts[i][j] += 1.0;
    }
    cm.row_sums.assign(truth_index.size(), 0.0);
    cm.col_sums.assign(found_index.size(), 0.0);
    for (std::size_t i = 0; i < cm.counts.size(); ++i)
        for (std::size_t j = 0; j < cm.counts[i].size(); ++j) {
            cm.row_sums[i] += cm.counts[i][j];
            cm.col_sums[j] += cm.counts[i][j];
            cm.total += cm.counts[i][j];
        }
    return cm;
}

double nmi(const Partition& found, const GroundTruth& truth) {
    ConfusionMatrix cm = confusion_matrix(found, truth);
    double n = cm.total;

    double numer = 0.0;
    for (std::size_t i = 0; i < cm.counts.size(); ++i)
        for (std::size_t j = 0; j < cm.counts[i].size(); ++j) {
            double nij = cm.counts[i][j];
            if (nij <= 0.0) continue;  // 0 * log(0) terms are 0
            numer += nij * std::log(nij * n / (cm.row_sums[i] * cm.col_sums[j]));
        }
    numer *= -2.0;

    double denom = 0.0;
    for (double ni : cm.row_sums) denom += ni * std::log(ni / n);
    for (double nj : cm.col_sums) denom += nj * std::log(nj / n);

    // denom vanishes only when both sides are the single-block partition,
    // i.e. the partitions agree perfectly
    if (denom == 0.0) return 1.0;
    return std::clamp(numer / denom, 0.0, 1.0);
}

GroundTruth to_ground_truth(const Partition& p) {
    GroundTruth out;
    for (std::size_t c = 0; c < p.communities.size(); ++c)
        for (NodeId id : p.communities[c]) out.labels[id] = std::to_string(c);
    return out;
}

Partition harden_partition(const Partition& p, const InteractionGraph& g) {
    std::map<NodeId, std::vector<std::size_t>> where;
    for (std::size_t c = 0; c < p.communities.size(); ++c)
        for (NodeId id : p.communities[c]) where[id].push_back(c);

    std::map<NodeId, std::size_t> keep;
    for (const auto& [id, cs] : where) {
        std::size_t best = cs.front();
        if (cs.size() > 1) {
            double best_w = -1.0;
            for (std::size_t c : cs) {
                double w = 0.0;
                if (g.has_node(id))
                    for (NodeId other : p.communities[c])
                        if (other != id) w += g.edge_weight(id, other);
                if (w > best_w) {  // ties keep the smallest community index
                    best_w = w;
                    best = c;
                }
            }
        }
        keep[id] = best;
    }

    std::vector<std::vector<NodeId>> rebuilt(p.communities.size());
    for (const auto& [id, c] : keep) rebuilt[c].push_back(id);
    std::vector<std::vector<NodeId>> communities;
    for (auto& c : rebuilt) {
        if (c.empty()) continue;
        std::sort(c.begin(), c.end());
        communities.push_back(std::move(c));
    }
    std::sort(communities.begin(), communities.end());
    return Partition{std::move(communities)};
}

}  // namespace commdet
