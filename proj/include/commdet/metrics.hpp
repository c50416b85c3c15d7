#pragma once

#include <map>
#include <string>
#include <vector>

#include "commdet/graph.hpp"
#include "commdet/ingest.hpp"

namespace commdet {

/// Newman modularity of a hard partition:
///   Q = sum_c [ l_c/m - (d_c/(2m))^2 ]
/// with l_c the intra-community edge count, d_c the degree sum and m the
/// edge count (weighted variant: weight sums instead of counts).
/// Communities must be disjoint and contain only current graph nodes; an
/// edgeless graph is an error (m = 0 leaves Q undefined).
double modularity(const InteractionGraph& g, const std::vector<std::vector<NodeId>>& communities,
                  bool weighted = false);

struct ConfusionMatrix {
    std::vector<std::vector<double>> counts;  // rows: truth communities, cols: found
    std::vector<double> row_sums;
    std::vector<double> col_sums;
    double total = 0.0;
};

/// Counts over the node ids present in both arguments.
ConfusionMatrix confusion_matrix(const Partition& found, const GroundTruth& truth);

/// Normalized mutual information (Danon's form, natural log):
///   -2 * sum_ij N_ij ln(N_ij N / (N_i N_j))
///   -------------------------------------------
///   sum_i N_i ln(N_i/N) + sum_j N_j ln(N_j/N)
/// 1 when both partitions are the identical one-block partition (the 0/0
/// case); 0*ln(0) terms are 0. `found` must not overlap on labeled nodes —
/// harden first.
double nmi(const Partition& found, const GroundTruth& truth);

/// View a partition as ground-truth labels ("0", "1", ...).
GroundTruth to_ground_truth(const Partition& p);

/// Resolve overlap: a node in several communities keeps the one where its
/// total incident edge weight is largest (ties: smallest community index).
Partition harden_partition(const Partition& p, const InteractionGraph& g);

}  // namespace commdet
