#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "commdet/centrality.hpp"
#include "commdet/dynamics.hpp"
#include "commdet/graph.hpp"
#include "commdet/ingest.hpp"
#include "commdet/scoring.hpp"

namespace commdet {

struct DetectorConfig {
    AlphaWeights alphas;
    DecayPolicy policy;
    int n_phases = 6;  // used by callers that build the PhasedLog; echoed in reports
    DistanceMode distance = DistanceMode::inverse_weight;
    CutFormula formula = CutFormula::literal;
    SimilarityMode similarity_mode = SimilarityMode::jaccard;
    double epsilon = 1e-9;
    bool use_rate = true;
    bool use_similarity = true;
    bool allow_splitting = true;
    bool split_on_tie = true;  // exact raw tie between max cut and max split
    bool q_on_phase_graph = false;  // evaluate Q against the phase-start edge set
    long max_iterations = 1'000'000;
    int threads = 1;
    long seed = 0;  // reserved; the default pipeline has no randomness

    ScoringOptions scoring_options() const;
};

enum class TraceAction { remove_edge, split_vertex };

struct TraceEntry {
    long iteration = 0;  // global, 0-based
    int phase = 0;
    TraceAction action = TraceAction::remove_edge;
    NodeId u = 0, v = 0;           // removed edge (u < v)
    NodeId vertex = 0;             // split vertex
    NodeId copy_a = 0, copy_b = 0; // ids minted by the split
    std::vector<NodeId> side_a, side_b;
    double score_normalized = 0.0;  // winner's min-max-normalized score (1 by construction)
    double score_raw = 0.0;
    double q = 0.0;  // modularity after the action; -1 marks the edgeless state
};

struct DetectionTrace {
    std::vector<TraceEntry> entries;
    long best_iteration = -1;  // first global max of the q sequence; -1 when no actions ran
    bool hit_iteration_limit = false;

    double best_q() const;  // -1 when no actions ran
};

struct DetectionResult {
    Partition partition;      // origin-level communities at the best-Q snapshot
    DetectionTrace trace;
    InteractionGraph graph;   // the graph at that snapshot
};

/// Full per-run state kept for snapshot export and replay.
struct DetectionRun {
    DetectionResult result;
    std::vector<InteractionGraph> phase_graphs;  // after each phase's apply_interval
    std::vector<IntervalReport> phase_reports;
};

/// The main loop. Per phase: apply the interval's messages, then repeatedly
/// score the graph and either remove the max-cut edge or split the
/// max-split-betweenness vertex (strictly greater raw cut removes; otherwise,
/// with split candidates available, the vertex is split), recording the
/// modularity of the current components after every action. A phase's
/// detection ends when the graph has no edges; the whole run also stops when
/// max_iterations is exhausted (not an error — best-so-far is returned and
/// the trace is flagged). The returned partition is the origin-mapped
/// components at the best-Q snapshot.
DetectionResult detect(const PhasedLog& log, const DetectorConfig& config);
DetectionRun detect_run(const PhasedLog& log, const DetectorConfig& config);

/// Detection loop only, on an already-built graph (no phases, no dynamics).
DetectionResult detect_on_graph(const InteractionGraph& graph, const DetectorConfig& config);

/// Girvan–Newman baseline: repeatedly remove the edge with maximum
/// betweenness (unit distances, no dynamics, no splitting), ties broken by
/// lexicographically smallest endpoint pair; returns the best-Q partition.
/// Implemented as its own selection loop so it stays an independent
/// reference for the detector's reduction property.
std::pair<Partition, DetectionTrace> girvan_newman(const InteractionGraph& graph,
                                                   long max_iterations = 1'000'000);

/// Graph state right after the recorded action `upto_iteration`: starts
/// from that action's phase graph and reapplies the phase's actions up to
/// and including it. -1 returns the first phase graph untouched.
InteractionGraph replay_to(const DetectionRun& run, long upto_iteration);

}  // namespace commdet
