#pragma once

#include <map>
#include <string>
#include <utility>

#include "commdet/centrality.hpp"
#include "commdet/graph.hpp"

namespace commdet {

/// Relative importance of betweenness, message rate and similarity in the
/// edge cut score.
struct AlphaWeights {
    double alpha1 = 0.65;
    double alpha2 = 0.83;
    double alpha3 = 0.43;

    void validate() const;  // all must be > 0
};

enum class CutFormula {
    literal,   // a1*cb / (a2*rm * a3*sim) — the alphas are a global scale
    exponent,  // cb^a1 / (rm^a2 * sim^a3) — the alphas reweight the factors
};

enum class SimilarityMode { jaccard, cosine };

const char* to_string(CutFormula f);
CutFormula cut_formula_from_string(const std::string& name);

/// Jaccard coefficient of the two neighbor sets, excluding s and t
/// themselves. 0 when the union is empty.
double similarity(const InteractionGraph& g, NodeId s, NodeId t);

/// Cosine of the incident weight vectors over common neighbors (s and t
/// excluded), an alternative similarity for weight-sensitive setups.
double similarity_cosine(const InteractionGraph& g, NodeId s, NodeId t);

/// cut = a1*cb / (max(a2*rm, eps) * max(a3*sim, eps)).
double cut_score(double cb, double rm, double sim, const AlphaWeights& alphas,
                 double epsilon = 1e-9);

/// cut = cb^a1 / (max(rm, eps)^a2 * max(sim, eps)^a3).
double cut_score_exponent(double cb, double rm, double sim, const AlphaWeights& alphas,
                          double epsilon = 1e-9);

struct ScoringOptions {
    AlphaWeights alphas;
    CutFormula formula = CutFormula::literal;
    SimilarityMode similarity_mode = SimilarityMode::jaccard;
    double epsilon = 1e-9;
    bool use_rate = true;        // when off, RM(s,t) is taken as 1
    bool use_similarity = true;  // when off, S(s,t) is taken as 1
};

/// Cut scores per edge and split scores per vertex, each family min-max
/// normalized to [0,1] independently (a zero-range or single-element family
/// maps to 1.0 so it still competes). The raw values are kept alongside:
/// the detector's cut-vs-split branch decision is taken on raw maxima,
/// which is what a min-max normalization over the union of both families
/// would also decide.
struct ScoredCandidates {
    std::map<std::pair<NodeId, NodeId>, double> edge_cut;  // normalized
    std::map<NodeId, double> vertex_split;                 // normalized
    std::map<std::pair<NodeId, NodeId>, double> edge_cut_raw;
    std::map<NodeId, double> vertex_split_raw;
};

ScoredCandidates score_candidates(const InteractionGraph& g, const BetweennessScores& bet,
                                  const SplitScores& splits, const ScoringOptions& opts);

}  // namespace commdet
