#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "commdet/graph.hpp"
#include "commdet/ingest.hpp"

namespace testutil {

inline bool near(double a, double b, double tol = 1e-9) { return std::fabs(a - b) <= tol; }

using commdet::InteractionGraph;
using commdet::MessageEvent;
using commdet::NodeId;

inline InteractionGraph path_graph(const std::vector<NodeId>& ids, double w = 1.0) {
    InteractionGraph g;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) g.set_edge(ids[i], ids[i + 1], w);
    return g;
}

inline InteractionGraph complete_graph(const std::vector<NodeId>& ids, double w = 1.0) {
    InteractionGraph g;
    for (NodeId id : ids) g.ensure_node(id);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) g.set_edge(ids[i], ids[j], w);
    return g;
}

inline void add_clique(InteractionGraph& g, const std::vector<NodeId>& ids, double w = 1.0) {
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) g.set_edge(ids[i], ids[j], w);
}

/// Two K_k cliques {0..k-1} and {k..2k-1} joined by the bridge (k-1, k).
inline InteractionGraph two_cliques_bridge(int k, double w = 1.0) {
    InteractionGraph g;
    std::vector<NodeId> a, b;
    for (int i = 0; i < k; ++i) a.push_back(i);
    for (int i = k; i < 2 * k; ++i) b.push_back(i);
    add_clique(g, a, w);
    add_clique(g, b, w);
    g.set_edge(k - 1, k, w);
    return g;
}

inline InteractionGraph random_tree(std::mt19937& rng, int n, bool weighted = false) {
    InteractionGraph g;
    g.ensure_node(0);
    std::uniform_real_distribution<double> wdist(0.5, 4.0);
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        g.set_edge(pick(rng), v, weighted ? wdist(rng) : 1.0);
    }
    return g;
}

inline InteractionGraph random_connected(std::mt19937& rng, int n, bool weighted = false) {
    InteractionGraph g = random_tree(rng, n, weighted);
    std::uniform_real_distribution<double> p(0.0, 1.0);
    std::uniform_real_distribution<double> wdist(0.5, 4.0);
    double density = p(rng) * 0.5;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v) && p(rng) < density)
                g.set_edge(u, v, weighted ? wdist(rng) : 1.0);
    return g;
}

inline std::vector<std::vector<NodeId>> random_partition(std::mt19937& rng,
                                                         const std::vector<NodeId>& ids,
                                                         int max_parts) {
    int parts = std::uniform_int_distribution<int>(1, max_parts)(rng);
    std::vector<std::vector<NodeId>> out(parts);
    for (NodeId id : ids) out[std::uniform_int_distribution<int>(0, parts - 1)(rng)].push_back(id);
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const std::vector<NodeId>& c) { return c.empty(); }),
              out.end());
    for (auto& c : out) std::sort(c.begin(), c.end());
    return out;
}

inline bool same_graph(const InteractionGraph& a, const InteractionGraph& b) {
    if (a.node_ids() != b.node_ids()) return false;
    auto ea = a.edges(), eb = b.edges();
    if (ea.size() != eb.size()) return false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].u != eb[i].u || ea[i].v != eb[i].v) return false;
        if (ea[i].weight != eb[i].weight) return false;
        if (ea[i].idle_intervals != eb[i].idle_intervals) return false;
    }
    for (NodeId id : a.node_ids())
        if (a.origin(id) != b.origin(id)) return false;
    return true;
}

}  // namespace testutil
