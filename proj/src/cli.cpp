#include "commdet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "json.hpp"

#include "commdet/errors.hpp"
#include "commdet/metrics.hpp"
#include "commdet/report.hpp"

namespace commdet {

namespace fs = std::filesystem;

namespace {

const char* kReferenceNote =
    "reference value supplied for comparison only; exact reproduction is not expected because "
    "the similarity measure, decay law, score normalization and weight semantics are "
    "implementation-defined choices";

nlohmann::json config_to_json(const RunConfig& c) {
    const DetectorConfig& d = c.detector;
    nlohmann::json j{{"input", c.input_path},
                     {"weighting", to_string(c.weighting)},
                     {"phases", d.n_phases},
                     {"alpha1", d.alphas.alpha1},
                     {"alpha2", d.alphas.alpha2},
                     {"alpha3", d.alphas.alpha3},
                     {"decay", d.policy.decay_factor},
                     {"cut_after_idle", d.policy.cut_after_idle},
                     {"distance", to_string(d.distance)},
                     {"cut_formula", to_string(d.formula)},
                     {"epsilon", d.epsilon},
                     {"splitting", d.allow_splitting},
                     {"split_on_tie", d.split_on_tie},
                     {"q_on_phase_graph", d.q_on_phase_graph},
                     {"max_iterations", d.max_iterations},
                     {"threads", d.threads},
                     {"seed", d.seed},
                     {"baseline", c.baseline_gn ? nlohmann::json("gn") : nlohmann::json()},
                     {"truth", c.truth_path.empty() ? nlohmann::json() : nlohmann::json(c.truth_path)},
                     {"out", c.out_dir}};
    return j;
}

struct DatasetStats {
    std::size_t nodes = 0;
    std::size_t messages = 0;
    std::size_t self_messages = 0;
    double t_min = 0.0, t_max = 0.0;
};

DatasetStats dataset_stats(const std::vector<MessageEvent>& events) {
    DatasetStats st;
    std::set<NodeId> ids;
    st.messages = events.size();
    for (const auto& e : events) {
        ids.insert(e.sender);
        ids.insert(e.receiver);
        if (e.sender == e.receiver) ++st.self_messages;
    }
    st.nodes = ids.size();
    if (!events.empty()) {
        st.t_min = st.t_max = events.front().timestamp;
        for (const auto& e : events) {
            st.t_min = std::min(st.t_min, e.timestamp);
            st.t_max = std::max(st.t_max, e.timestamp);
        }
    }
    return st;
}

InteractionGraph cumulative_graph(const std::vector<MessageEvent>& events) {
    InteractionGraph g;
    for (const auto& e : events) {
        g.ensure_node(e.sender);
        g.ensure_node(e.receiver);
        if (e.sender == e.receiver) continue;  // the model has no self-loops
        g.add_message_weight(e.sender, e.receiver, e.size);
    }
    return g;
}

std::vector<MessageEvent> load_events(const RunConfig& config) {
    if (config.input_path.empty()) throw input_error("--input is required");
    std::vector<MessageEvent> events = parse_message_log(config.input_path, config.weighting);
    if (events.empty()) throw input_error("message log '" + config.input_path + "' is empty");
    return events;
}

void write_report(const std::string& dir, const std::string& name, const nlohmann::json& j) {
    write_text_file((fs::path(dir) / name).string(), json_dump(j));
}

DetectionRun baseline_run(const std::vector<MessageEvent>& events, const DetectorConfig& cfg) {
    InteractionGraph g = cumulative_graph(events);
    auto [partition, trace] = girvan_newman(g, cfg.max_iterations);
    DetectionRun run;
    run.phase_graphs.push_back(std::move(g));
    run.result.trace = std::move(trace);
    run.result.partition = std::move(partition);
    run.result.graph = run.result.trace.best_iteration >= 0
                           ? replay_to(run, run.result.trace.best_iteration)
                           : run.phase_graphs.front();
    return run;
}

}  // namespace

void run_detect(const RunConfig& config) {
    std::vector<MessageEvent> events = load_events(config);
    DatasetStats stats = dataset_stats(events);

    DetectionRun run;
    PhasedLog log;
    if (config.baseline_gn) {
        run = baseline_run(events, config.detector);
    } else {
        log = partition_phases(events, config.detector.n_phases);
        run = detect_run(log, config.detector);
    }

    if (config.out_dir.empty()) throw input_error("--out is required");
    fs::create_directories(config.out_dir);

    write_report(config.out_dir, "communities.json", partition_to_json(run.result.partition));
    write_report(config.out_dir, "trace.json", trace_to_json(run.result.trace));
    write_report(config.out_dir, "run_state.json", run_state_to_json(run));

    const DetectionTrace& trace = run.result.trace;
    nlohmann::json phase_summaries = nlohmann::json::array();
    for (std::size_t p = 0; p < run.phase_reports.size(); ++p) {
        const IntervalReport& r = run.phase_reports[p];
        phase_summaries.push_back({{"phase", p},
                                   {"events", config.baseline_gn ? 0 : log.phases[p].size()},
                                   {"created", r.created.size()},
                                   {"reinforced", r.reinforced.size()},
                                   {"decayed", r.decayed.size()},
                                   {"cut", r.cut.size()},
                                   {"self_messages_dropped", r.self_messages_dropped}});
    }

    nlohmann::json summary{
        {"config", config_to_json(config)},
        {"dataset",
         {{"nodes", stats.nodes},
          {"messages", stats.messages},
          {"self_messages", stats.self_messages},
          {"time_span", {stats.t_min, stats.t_max}}}},
        {"result",
         {{"best_q", trace.best_q()},
          {"best_iteration", trace.best_iteration},
          {"iterations", trace.entries.size()},
          {"n_communities", run.result.partition.communities.size()},
          {"overlapping_nodes", run.result.partition.overlapping_nodes().size()},
          {"hit_iteration_limit", trace.hit_iteration_limit}}},
        {"phase_reports", phase_summaries},
        {"q_definition", "components of the pruned graph, unweighted"},
        {"reference", nlohmann::json()}};
    if (config.detector.q_on_phase_graph)
        summary["q_definition"] = "origin-collapsed phase graph, unweighted";
    if (config.reference_q)
        summary["reference"] = {{"q", *config.reference_q}, {"note", kReferenceNote}};
    write_report(config.out_dir, "summary.json", summary);
}

void run_evaluate(const RunConfig& config) {
    std::vector<MessageEvent> events = load_events(config);
    InteractionGraph graph = cumulative_graph(events);

    Partition partition;
    if (!config.communities_path.empty()) {
        partition = partition_from_json(read_json_file(config.communities_path));
    } else {
        PhasedLog log = partition_phases(events, config.detector.n_phases);
        partition = detect(log, config.detector).partition;
    }

    Partition hardened = harden_partition(partition, graph);
    double q = modularity(graph, hardened.communities, config.weighted_q);

    nlohmann::json nmi_value;  // null without ground truth
    if (!config.truth_path.empty()) {
        GroundTruth truth = parse_ground_truth(config.truth_path);
        nmi_value = nmi(hardened, truth);
    }

    if (config.out_dir.empty()) throw input_error("--out is required");
    fs::create_directories(config.out_dir);
    nlohmann::json evaluation{
        {"config", config_to_json(config)},
        {"communities_file",
         config.communities_path.empty() ? nlohmann::json() : nlohmann::json(config.communities_path)},
        {"modularity", q},
        {"q_weighting", config.weighted_q ? "weighted" : "unweighted"},
        {"nmi", nmi_value},
        {"hardening", "max-incident-weight"},
        {"evaluation_graph", "cumulative message graph, all phases, no decay"},
        {"n_communities", hardened.communities.size()}};
    write_report(config.out_dir, "evaluation.json", evaluation);
}

void run_export(const RunConfig& config) {
    if (config.out_dir.empty()) throw input_error("--out is required");
    fs::path state_path = fs::path(config.out_dir) / "run_state.json";
    if (!fs::exists(state_path))
        throw input_error("no completed run in '" + config.out_dir + "' (run_state.json missing)");
    DetectionRun run = run_state_from_json(read_json_file(state_path.string()));

    InteractionGraph snapshot;
    std::string label;
    if (config.snapshot == "initial") {
        snapshot = replay_to(run, -1);
        label = "initial";
    } else if (config.snapshot == "final") {
        snapshot = run.result.trace.best_iteration >= 0
                       ? replay_to(run, run.result.trace.best_iteration)
                       : replay_to(run, -1);
        label = "final";
    } else {
        long k = 0;
        try {
            std::size_t pos = 0;
            k = std::stol(config.snapshot, &pos);
            if (pos != config.snapshot.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw input_error("unknown snapshot selector '" + config.snapshot +
                              "' (initial|final|<iteration>)");
        }
        if (k < 0 || k >= static_cast<long>(run.result.trace.entries.size()))
            throw input_error("iteration " + std::to_string(k) + " is outside the recorded trace");
        snapshot = replay_to(run, k);
        label = "iter" + std::to_string(k);
    }

    std::map<NodeId, int> community;
    std::vector<std::vector<NodeId>> comps = node_components(snapshot);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (NodeId id : comps[c]) community[id] = static_cast<int>(c);

    fs::path base = fs::path(config.out_dir) / ("graph_" + label);
    write_text_file(base.string() + ".gexf", graph_to_gexf(snapshot, community));
    write_text_file(base.string() + ".edgelist", graph_to_edge_list(snapshot));
}

}  // namespace commdet
