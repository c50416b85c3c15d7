#include "commdet/detector.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "commdet/metrics.hpp"

namespace commdet {

ScoringOptions DetectorConfig::scoring_options() const {
    ScoringOptions opts;
    opts.alphas = alphas;
    opts.formula = formula;
    opts.similarity_mode = similarity_mode;
    opts.epsilon = epsilon;
    opts.use_rate = use_rate;
    opts.use_similarity = use_similarity;
    return opts;
}

double DetectionTrace::best_q() const {
    return best_iteration < 0 ? -1.0 : entries[static_cast<std::size_t>(best_iteration)].q;
}

namespace {

// Modularity of the components partition after an action. The pruned-graph
// convention scores the current components on the current edges; an
// edgeless state gets the sentinel -1 (below the attainable range, so it
// can never win the best-Q selection against a real snapshot).
double snapshot_q(const InteractionGraph& g, const std::vector<std::vector<NodeId>>& comps,
                  const InteractionGraph* phase_reference) {
    if (phase_reference != nullptr) {
        InteractionGraph ref = origin_collapsed(*phase_reference);
        if (ref.edge_count() == 0) return -1.0;
        Partition origin = to_origin_partition(comps, g);
        Partition hard = harden_partition(origin, ref);
        return modularity(ref, hard.communities);
    }
    if (g.edge_count() == 0) return -1.0;
    return modularity(g, comps);
}

struct LoopState {
    long iteration = 0;
    DetectionTrace trace;
    Partition best_partition;
    bool budget_exhausted = false;
};

// Scores within one part in 1e12 of each other count as tied, so
// accumulation noise cannot override the lexicographic tie rule: two edges
// with mathematically equal betweenness must resolve the same way whether
// the ranking looks at raw betweenness or any rescaling of it.
bool score_tie(double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

template <typename Map>
typename Map::const_iterator pick_max(const Map& m) {
    auto best = m.begin();
    for (auto it = m.begin(); it != m.end(); ++it)
        if (it->second > best->second && !score_tie(it->second, best->second)) best = it;
    return best;
}

void validate(const DetectorConfig& cfg) {
    cfg.alphas.validate();
    cfg.policy.validate();
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
}

// Score, act, record — repeated until this phase's graph has no edges or
// the global iteration budget runs out.
void detection_loop(InteractionGraph& g, const DetectorConfig& cfg, int phase,
                    const InteractionGraph* phase_reference, LoopState& st) {
    ScoringOptions sopts = cfg.scoring_options();
    while (g.edge_count() > 0) {
        if (st.iteration >= cfg.max_iterations) {
            st.budget_exhausted = true;
            st.trace.hit_iteration_limit = true;
            return;
        }
        BetweennessScores bet = betweenness(g, cfg.distance, cfg.threads);
        SplitScores splits;
        if (cfg.allow_splitting) splits = split_betweenness(g, bet, cfg.distance);
        ScoredCandidates cand = score_candidates(g, bet, splits, sopts);

        // Family maxima on raw scores; map order makes ties land on the
        // lexicographically smallest edge / smallest vertex id.
        auto best_edge = pick_max(cand.edge_cut_raw);
        bool have_split = !cand.vertex_split_raw.empty();
        auto best_vertex = cand.vertex_split_raw.cbegin();
        if (have_split) best_vertex = pick_max(cand.vertex_split_raw);

        bool do_split = false;
        if (cfg.allow_splitting && have_split) {
            if (best_vertex->second > best_edge->second)
                do_split = true;
            else if (best_vertex->second == best_edge->second)
                do_split = cfg.split_on_tie;
        }

        TraceEntry entry;
        entry.iteration = st.iteration;
        entry.phase = phase;
        if (do_split) {
            NodeId v = best_vertex->first;
            const SplitChoice& choice = splits.best_split.at(v);
            auto [ca, cb] = g.split_vertex(v, choice.side_a, choice.side_b);
            entry.action = TraceAction::split_vertex;
            entry.vertex = v;
            entry.copy_a = ca;
            entry.copy_b = cb;
            entry.side_a = choice.side_a;
            entry.side_b = choice.side_b;
            entry.score_raw = best_vertex->second;
            entry.score_normalized = cand.vertex_split.at(v);
        } else {
            auto [u, v] = best_edge->first;
            g.remove_edge(u, v);
            entry.action = TraceAction::remove_edge;
            entry.u = u;
            entry.v = v;
            entry.score_raw = best_edge->second;
            entry.score_normalized = cand.edge_cut.at(best_edge->first);
        }

        std::vector<std::vector<NodeId>> comps = node_components(g);
        entry.q = snapshot_q(g, comps, phase_reference);
        st.trace.entries.push_back(entry);
        if (st.trace.best_iteration < 0 ||
            entry.q > st.trace.entries[static_cast<std::size_t>(st.trace.best_iteration)].q) {
            st.trace.best_iteration = st.iteration;
            st.best_partition = to_origin_partition(comps, g);
        }
        ++st.iteration;
    }
}

// Origins that only enter the graph after the best-Q snapshot still belong
// to the result: they come back as singleton communities.
void cover_all_origins(Partition& p, const InteractionGraph& final_graph) {
    std::set<NodeId> covered;
    for (const auto& c : p.communities) covered.insert(c.begin(), c.end());
    bool grew = false;
    for (NodeId id : final_graph.node_ids()) {
        NodeId org = final_graph.origin(id);
        if (!covered.count(org)) {
            p.communities.push_back({org});
            covered.insert(org);
            grew = true;
        }
    }
    if (grew) std::sort(p.communities.begin(), p.communities.end());
}

DetectionRun finalize_run(std::vector<InteractionGraph> phase_graphs,
                          std::vector<IntervalReport> phase_reports, LoopState&& st,
                          InteractionGraph&& final_graph) {
    DetectionRun run;
    run.phase_graphs = std::move(phase_graphs);
    run.phase_reports = std::move(phase_reports);
    run.result.trace = std::move(st.trace);
    if (run.result.trace.best_iteration >= 0) {
        run.result.partition = std::move(st.best_partition);
        run.result.graph = replay_to(run, run.result.trace.best_iteration);
    } else {
        run.result.partition = connected_components(final_graph);
        run.result.graph = final_graph;
    }
    cover_all_origins(run.result.partition, final_graph);
    return run;
}

}  // namespace

DetectionRun detect_run(const PhasedLog& log, const DetectorConfig& config) {
    validate(config);
    if (log.total_events() == 0) throw std::invalid_argument("detect requires a nonempty log");

    InteractionGraph g;
    LoopState st;
    std::vector<InteractionGraph> phase_graphs;
    std::vector<IntervalReport> phase_reports;
    for (std::size_t p = 0; p < log.phases.size(); ++p) {
        // every phase's dynamics apply; the budget only caps detection actions
        IntervalReport report = apply_interval(g, log.phases[p], config.policy);
        phase_graphs.push_back(g);
        phase_reports.push_back(std::move(report));
        if (st.budget_exhausted) continue;
        const InteractionGraph* ref = config.q_on_phase_graph ? &phase_graphs.back() : nullptr;
        detection_loop(g, config, static_cast<int>(p), ref, st);
    }
    return finalize_run(std::move(phase_graphs), std::move(phase_reports), std::move(st),
                        std::move(g));
}

DetectionResult detect(const PhasedLog& log, const DetectorConfig& config) {
    return detect_run(log, config).result;
}

DetectionResult detect_on_graph(const InteractionGraph& graph, const DetectorConfig& config) {
    validate(config);
    InteractionGraph g = graph;
    LoopState st;
    std::vector<InteractionGraph> phase_graphs{graph};
    const InteractionGraph* ref = config.q_on_phase_graph ? &phase_graphs.front() : nullptr;
    detection_loop(g, config, 0, ref, st);
    return finalize_run(std::move(phase_graphs), {}, std::move(st), std::move(g)).result;
}

std::pair<Partition, DetectionTrace> girvan_newman(const InteractionGraph& graph,
                                                   long max_iterations) {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    InteractionGraph g = graph;
    DetectionTrace trace;
    Partition best_partition;
    long iteration = 0;
    while (g.edge_count() > 0) {
        if (iteration >= max_iterations) {
            trace.hit_iteration_limit = true;
            break;
        }
        BetweennessScores bet = betweenness(g, DistanceMode::unit, 1);
        auto best = pick_max(bet.edge);

        TraceEntry entry;
        entry.iteration = iteration;
        entry.phase = 0;
        entry.action = TraceAction::remove_edge;
        entry.u = best->first.first;
        entry.v = best->first.second;
        entry.score_raw = best->second;
        entry.score_normalized = 1.0;  // the winner is its family's min-max maximum
        g.remove_edge(entry.u, entry.v);

        std::vector<std::vector<NodeId>> comps = node_components(g);
        entry.q = snapshot_q(g, comps, nullptr);
        trace.entries.push_back(entry);
        if (trace.best_iteration < 0 ||
            entry.q > trace.entries[static_cast<std::size_t>(trace.best_iteration)].q) {
            trace.best_iteration = iteration;
            best_partition = to_origin_partition(comps, g);
        }
        ++iteration;
    }
    if (trace.best_iteration < 0) best_partition = connected_components(g);
    return {std::move(best_partition), std::move(trace)};
}

InteractionGraph replay_to(const DetectionRun& run, long upto_iteration) {
    if (run.phase_graphs.empty()) return InteractionGraph{};
    if (upto_iteration < 0) return run.phase_graphs.front();
    const auto& entries = run.result.trace.entries;
    if (upto_iteration >= static_cast<long>(entries.size()))
        throw std::invalid_argument("iteration " + std::to_string(upto_iteration) +
                                    " is outside the recorded trace");
    int phase = entries[static_cast<std::size_t>(upto_iteration)].phase;
    InteractionGraph g = run.phase_graphs.at(static_cast<std::size_t>(phase));
    for (const TraceEntry& e : entries) {
        if (e.phase != phase || e.iteration > upto_iteration) continue;
        if (e.action == TraceAction::remove_edge)
            g.remove_edge(e.u, e.v);
        else
            g.split_vertex_with_ids(e.vertex, e.side_a, e.side_b, e.copy_a, e.copy_b);
    }
    return g;
}

}  // namespace commdet
