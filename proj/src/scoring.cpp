#include "commdet/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace commdet {

void AlphaWeights::validate() const {
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0) || !(alpha3 > 0.0))
        throw std::invalid_argument("alpha weights must all be > 0");
}

const char* to_string(CutFormula f) { return f == CutFormula::literal ? "literal" : "exponent"; }

CutFormula cut_formula_from_string(const std::string& name) {
    if (name == "literal") return CutFormula::literal;
    if (name == "exponent") return CutFormula::exponent;
    throw std::invalid_argument("unknown cut formula '" + name + "' (literal|exponent)");
}

double similarity(const InteractionGraph& g, NodeId s, NodeId t) {
    const auto& ns = g.neighbors(s);
    const auto& nt = g.neighbors(t);
    std::size_t inter = 0, uni = 0;
    auto counts = [&](const std::map<NodeId, EdgeState>& a, const std::map<NodeId, EdgeState>& b) {
        for (const auto& [id, _] : a) {
            if (id == s || id == t) continue;
            ++uni;
            if (b.count(id)) ++inter;
        }
    };
    counts(ns, nt);
    // union completes with t's exclusive neighbors
    for (const auto& [id, _] : nt) {
        if (id == s || id == t) continue;
        if (!ns.count(id)) ++uni;
    }
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double similarity_cosine(const InteractionGraph& g, NodeId s, NodeId t) {
    const auto& ns = g.neighbors(s);
    const auto& nt = g.neighbors(t);
    double dot = 0.0, norm_s = 0.0, norm_t = 0.0;
    for (const auto& [id, st] : ns) {
        if (id == s || id == t) continue;
        norm_s += st.weight * st.weight;
        auto it = nt.find(id);
        if (it != nt.end()) dot += st.weight * it->second.weight;
    }
    for (const auto& [id, st] : nt) {
        if (id == s || id == t) continue;
        norm_t += st.weight * st.weight;
    }
    if (norm_s == 0.0 || norm_t == 0.0) return 0.0;
    return dot / (std::sqrt(norm_s) * std::sqrt(norm_t));
}

double cut_score(double cb, double rm, double sim, const AlphaWeights& alphas, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    alphas.validate();
    double denom = std::max(alphas.alpha2 * rm, epsilon) * std::max(alphas.alpha3 * sim, epsilon);
    return alphas.alpha1 * cb / denom;
}

double cut_score_exponent(double cb, double rm, double sim, const AlphaWeights& alphas,
                          double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    alphas.validate();
    if (cb <= 0.0) return 0.0;
    double denom = std::pow(std::max(rm, epsilon), alphas.alpha2) *
                   std::pow(std::max(sim, epsilon), alphas.alpha3);
    return std::pow(cb, alphas.alpha1) / denom;
}

namespace {

// Min-max over a nonempty family; zero range (including single element)
// maps everything to 1.0 so the family still competes.
template <typename Map>
Map min_max_normalize(const Map& raw) {
    Map out;
    if (raw.empty()) return out;
    double lo = raw.begin()->second, hi = lo;
    for (const auto& [k, v] : raw) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (const auto& [k, v] : raw) out[k] = (hi > lo) ? (v - lo) / (hi - lo) : 1.0;
    return out;
}

}  // namespace

ScoredCandidates score_candidates(const InteractionGraph& g, const BetweennessScores& bet,
                                  const SplitScores& splits, const ScoringOptions& opts) {
    ScoredCandidates out;
    for (const auto& e : g.edges()) {
        auto key = std::make_pair(e.u, e.v);
        auto it = bet.edge.find(key);
        double cb = it == bet.edge.end() ? 0.0 : it->second;
        double rm = opts.use_rate ? e.weight : 1.0;
        double sim = 1.0;
        if (opts.use_similarity)
            sim = opts.similarity_mode == SimilarityMode::jaccard ? similarity(g, e.u, e.v)
                                                                  : similarity_cosine(g, e.u, e.v);
        out.edge_cut_raw[key] = opts.formula == CutFormula::literal
                                    ? cut_score(cb, rm, sim, opts.alphas, opts.epsilon)
                                    : cut_score_exponent(cb, rm, sim, opts.alphas, opts.epsilon);
    }
    for (const auto& [v, choice] : splits.best_split) out.vertex_split_raw[v] = choice.score;

    out.edge_cut = min_max_normalize(out.edge_cut_raw);
    out.vertex_split = min_max_normalize(out.vertex_split_raw);
    return out;
}

}  // namespace commdet
