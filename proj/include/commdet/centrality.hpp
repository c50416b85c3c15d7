#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

enum class DistanceMode {
    unit,            // every edge has length 1
    inverse_weight,  // edge length = 1 / weight, so strong ties are short
};

const char* to_string(DistanceMode mode);
DistanceMode distance_mode_from_string(const std::string& name);

/// Shortest-path betweenness over unordered node pairs {s,t}: for a vertex,
/// the sum of sigma_st(v)/sigma_st with s != v != t; for an edge, the same
/// with the edge on the path. Disconnected pairs contribute 0.
struct BetweennessScores {
    std::map<NodeId, double> vertex;
    std::map<std::pair<NodeId, NodeId>, double> edge;  // key is (u < v)
};

/// Per-source accumulation (one SSSP per source with dependency
/// back-propagation). Results are bit-identical for any `threads` value:
/// sources are processed in fixed blocks and block partials are reduced in
/// order. In inverse-weight mode two path lengths tie when
/// |d1 - d2| <= 1e-12 * max(1, d).
BetweennessScores betweenness(const InteractionGraph& g, DistanceMode mode, int threads = 1);

/// Independent oracle: explicit enumeration of every shortest path of every
/// pair. Refuses graphs above `node_cap` nodes.
BetweennessScores betweenness_bruteforce(const InteractionGraph& g, DistanceMode mode,
                                         std::size_t node_cap = 64);

/// The best way to split one vertex: the two neighbor sides and the
/// betweenness the imaginary edge between them would carry.
struct SplitChoice {
    double score = 0.0;
    std::vector<NodeId> side_a;  // contains the vertex's smallest neighbor
    std::vector<NodeId> side_b;
};

struct SplitScores {
    std::map<NodeId, SplitChoice> best_split;  // only vertices with degree >= 2
};

enum class SplitMethod {
    automatic,   // exhaustive when degree <= 12, greedy above
    exhaustive,  // all 2^(deg-1)-1 bipartitions
    greedy,      // merge neighbor groups with minimum inter-group flow
};

/// For every vertex of degree >= 2, break the shortest-path flow through it
/// down by (entry neighbor, exit neighbor) pair and find the bipartition of
/// its neighbors maximizing the cross-side flow: the betweenness of the
/// imagined edge between the two halves. The split score never exceeds the
/// vertex's own betweenness.
SplitScores split_betweenness(const InteractionGraph& g, const BetweennessScores& scores,
                              DistanceMode mode, SplitMethod method = SplitMethod::automatic);

}  // namespace commdet
