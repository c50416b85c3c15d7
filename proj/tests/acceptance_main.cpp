// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// argv[1] must point at the commdet CLI binary (used by the determinism
// criterion); a scratch directory is created under the system temp dir.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "commdet/centrality.hpp"
#include "commdet/cli.hpp"
#include "commdet/detector.hpp"
#include "commdet/dynamics.hpp"
#include "commdet/ingest.hpp"
#include "commdet/metrics.hpp"
#include "commdet/report.hpp"
#include "commdet/scoring.hpp"
#include "helpers.hpp"

using namespace commdet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli_path;
fs::path g_scratch;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

// ---------------------------------------------------------------- 1
Outcome betweenness_oracle_equivalence() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937 rng(20260808);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + static_cast<int>(rng() % 7);
        InteractionGraph g = testutil::random_connected(rng, n, true);
        for (DistanceMode mode : {DistanceMode::unit, DistanceMode::inverse_weight}) {
            BetweennessScores fast = betweenness(g, mode);
            BetweennessScores slow = betweenness_bruteforce(g, mode);
            for (const auto& [id, score] : slow.vertex)
                worst = std::max(worst, std::fabs(fast.vertex.at(id) - score));
            for (const auto& [key, score] : slow.edge)
                worst = std::max(worst, std::fabs(fast.edge.at(key) - score));
        }
    }
    double elapsed = seconds_since(t0);
    if (worst > 1e-9) out.fail("max deviation " + std::to_string(worst));
    if (elapsed >= 10.0) out.fail("took " + std::to_string(elapsed) + "s (limit 10)");
    std::ostringstream d;
    d << "100 graphs, both modes, max |diff| " << worst << ", " << elapsed << "s";
    if (out.pass) out.detail = d.str();
    return out;
}

// ---------------------------------------------------------------- 2
Outcome tree_identity() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937 rng(9090);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 2 + static_cast<int>(rng() % 49);
        InteractionGraph g = testutil::random_tree(rng, n, true);
        BetweennessScores s = betweenness(g, DistanceMode::unit);
        for (const auto& e : g.edges()) {
            InteractionGraph cut = g;
            cut.remove_edge(e.u, e.v);
            auto comps = node_components(cut);
            double expected = static_cast<double>(comps[0].size()) * comps[1].size();
            if (s.edge.at({e.u, e.v}) != expected) {
                out.fail("tree edge mismatch at n=" + std::to_string(n));
                return out;
            }
        }
    }
    double elapsed = seconds_since(t0);
    if (elapsed >= 5.0) out.fail("took " + std::to_string(elapsed) + "s (limit 5)");
    if (out.pass) out.detail = "50 trees, exact equality, " + std::to_string(elapsed) + "s";
    return out;
}

// ---------------------------------------------------------------- 3
Outcome modularity_identities() {
    Outcome out;
    InteractionGraph two;
    testutil::add_clique(two, {0, 1, 2, 3});
    testutil::add_clique(two, {4, 5, 6, 7});
    double q = modularity(two, {{0, 1, 2, 3}, {4, 5, 6, 7}});
    if (std::fabs(q - 0.5) > 1e-12) out.fail("K4|K4 clique partition: " + std::to_string(q));

    std::mt19937 rng(333);
    for (int rep = 0; rep < 20; ++rep) {
        InteractionGraph g = testutil::random_connected(rng, 3 + static_cast<int>(rng() % 8), true);
        double single = modularity(g, {g.node_ids()});
        if (std::fabs(single) > 1e-12) out.fail("single community Q != 0");
    }

    for (int rep = 0; rep < 1000; ++rep) {
        InteractionGraph g =
            testutil::random_connected(rng, 2 + static_cast<int>(rng() % 9), rep % 2 == 1);
        auto parts = testutil::random_partition(rng, g.node_ids(), 5);
        double qr = modularity(g, parts);
        if (qr < -0.5 - 1e-12 || qr >= 1.0) {
            out.fail("Q out of bounds: " + std::to_string(qr));
            break;
        }
    }
    if (out.pass) out.detail = "K4|K4 = 0.5, single community = 0, 1000 partitions in bounds";
    return out;
}

// ---------------------------------------------------------------- 4
Outcome nmi_identities() {
    Outcome out;
    std::mt19937 rng(444);
    std::vector<NodeId> ids;
    for (NodeId i = 0; i < 14; ++i) ids.push_back(i);

    for (int rep = 0; rep < 100; ++rep) {
        Partition a{testutil::random_partition(rng, ids, 5)};
        if (a.communities.size() < 2) continue;  // non-trivial partitions only
        if (std::fabs(nmi(a, to_ground_truth(a)) - 1.0) > 1e-12) {
            out.fail("NMI(A,A) != 1");
            break;
        }
    }

    Partition found{{{1, 3}, {2, 4}}};
    GroundTruth truth;
    truth.labels = {{1, "A"}, {2, "A"}, {3, "B"}, {4, "B"}};
    if (std::fabs(nmi(found, truth)) > 1e-12) out.fail("orthogonal case != 0");

    for (int rep = 0; rep < 200; ++rep) {
        Partition a{testutil::random_partition(rng, ids, 4)};
        Partition b{testutil::random_partition(rng, ids, 4)};
        double ab = nmi(a, to_ground_truth(b));
        double ba = nmi(b, to_ground_truth(a));
        if (std::fabs(ab - ba) > 1e-12) {
            out.fail("asymmetric NMI");
            break;
        }
        Partition b2 = b;
        std::reverse(b2.communities.begin(), b2.communities.end());
        if (std::fabs(nmi(a, to_ground_truth(b2)) - ab) > 1e-12) {
            out.fail("relabeling changed NMI");
            break;
        }
    }
    if (out.pass) out.detail = "identity, orthogonality, symmetry, relabel invariance";
    return out;
}

// ---------------------------------------------------------------- 5
Outcome planted_recovery() {
    Outcome out;
    auto t0 = Clock::now();
    InteractionGraph skeleton = testutil::two_cliques_bridge(4);
    std::vector<MessageEvent> events;
    double t = 0.0;
    for (const auto& e : skeleton.edges()) events.push_back({e.u, e.v, t++, 1.0});

    DetectorConfig cfg;
    cfg.n_phases = 1;
    DetectionResult res = detect(partition_phases(events, cfg.n_phases), cfg);

    if (res.trace.entries.empty() || res.trace.entries.front().action != TraceAction::remove_edge ||
        res.trace.entries.front().u != 3 || res.trace.entries.front().v != 4)
        out.fail("first action is not the bridge removal");
    std::vector<std::vector<NodeId>> expected{{0, 1, 2, 3}, {4, 5, 6, 7}};
    if (res.partition.communities != expected) out.fail("partition is not the two cliques");

    GroundTruth planted;
    for (NodeId id = 0; id < 8; ++id) planted.labels[id] = id < 4 ? "a" : "b";
    double score = nmi(res.partition, planted);
    if (std::fabs(score - 1.0) > 1e-12) out.fail("NMI " + std::to_string(score));

    double elapsed = seconds_since(t0);
    if (elapsed >= 1.0) out.fail("took " + std::to_string(elapsed) + "s (limit 1)");
    if (out.pass)
        out.detail = "bridge first, cliques recovered, NMI = 1, " + std::to_string(elapsed) + "s";
    return out;
}

// ---------------------------------------------------------------- 6
Outcome gn_reduction() {
    Outcome out;
    std::mt19937 rng(606);
    DetectorConfig cfg;
    cfg.allow_splitting = false;
    cfg.distance = DistanceMode::unit;
    cfg.use_rate = false;
    cfg.use_similarity = false;
    for (int rep = 0; rep < 20 && out.pass; ++rep) {
        int n = 4 + static_cast<int>(rng() % 27);
        InteractionGraph g = testutil::random_connected(rng, n, true);
        DetectionResult res = detect_on_graph(g, cfg);
        auto [gn_partition, gn_trace] = girvan_newman(g);
        if (res.trace.entries.size() != gn_trace.entries.size()) {
            out.fail("sequence lengths differ on graph " + std::to_string(rep));
            break;
        }
        for (std::size_t i = 0; i < gn_trace.entries.size(); ++i) {
            const TraceEntry &a = res.trace.entries[i], &b = gn_trace.entries[i];
            if (a.action != TraceAction::remove_edge || a.u != b.u || a.v != b.v) {
                out.fail("action " + std::to_string(i) + " differs on graph " +
                         std::to_string(rep));
                break;
            }
        }
        if (res.partition.communities != gn_partition.communities)
            out.fail("best partitions differ on graph " + std::to_string(rep));
    }
    if (out.pass) out.detail = "20 graphs, identical removal sequences and partitions";
    return out;
}

// ---------------------------------------------------------------- 7
Outcome alpha_ranking_invariance() {
    Outcome out;
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> adist(0.05, 3.0);
    for (int rep = 0; rep < 100 && out.pass; ++rep) {
        InteractionGraph g =
            testutil::random_connected(rng, 4 + static_cast<int>(rng() % 7), true);
        BetweennessScores bet = betweenness(g, DistanceMode::inverse_weight);
        SplitScores splits = split_betweenness(g, bet, DistanceMode::inverse_weight);
        ScoringOptions a, b;
        a.alphas = {adist(rng), adist(rng), adist(rng)};
        b.alphas = {adist(rng), adist(rng), adist(rng)};
        ScoredCandidates ca = score_candidates(g, bet, splits, a);
        ScoredCandidates cb = score_candidates(g, bet, splits, b);

        std::vector<std::pair<NodeId, NodeId>> keys;
        for (const auto& [k, v] : ca.edge_cut_raw) keys.push_back(k);
        for (std::size_t i = 0; i < keys.size() && out.pass; ++i)
            for (std::size_t j = i + 1; j < keys.size(); ++j) {
                double da = ca.edge_cut_raw.at(keys[i]) - ca.edge_cut_raw.at(keys[j]);
                double db = cb.edge_cut_raw.at(keys[i]) - cb.edge_cut_raw.at(keys[j]);
                double sa = ca.edge_cut_raw.at(keys[i]) + ca.edge_cut_raw.at(keys[j]);
                double sb = cb.edge_cut_raw.at(keys[i]) + cb.edge_cut_raw.at(keys[j]);
                int ia = std::fabs(da) <= 1e-9 * std::max(1.0, sa) ? 0 : (da > 0 ? 1 : -1);
                int ib = std::fabs(db) <= 1e-9 * std::max(1.0, sb) ? 0 : (db > 0 ? 1 : -1);
                if (ia != ib) {
                    out.fail("ordering changed on graph " + std::to_string(rep));
                    break;
                }
            }
    }
    if (out.pass) out.detail = "100 (graph, alpha, alpha') triples, identical edge order";
    return out;
}

// ---------------------------------------------------------------- 8
Outcome dynamics_contract() {
    Outcome out;
    std::mt19937 rng(888);
    std::uniform_real_distribution<double> size(0.5, 5.0);
    for (int rep = 0; rep < 500 && out.pass; ++rep) {
        DecayPolicy policy{0.1 + 0.8 * (rng() % 100) / 100.0, 1 + static_cast<int>(rng() % 3)};
        int phases = policy.cut_after_idle + static_cast<int>(rng() % 5);

        std::vector<std::vector<MessageEvent>> log(phases);
        for (int p = 0; p < phases; ++p) {
            int n = static_cast<int>(rng() % 12);
            for (int i = 0; i < n; ++i)
                log[p].push_back({static_cast<NodeId>(rng() % 6), static_cast<NodeId>(rng() % 6),
                                  0.0, size(rng)});
        }

        InteractionGraph g, gperm;
        std::map<std::pair<NodeId, NodeId>, int> silence;
        for (int p = 0; p < phases; ++p) {
            apply_interval(g, log[p], policy);
            std::vector<MessageEvent> shuffled = log[p];
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            apply_interval(gperm, shuffled, policy);

            std::set<std::pair<NodeId, NodeId>> active;
            for (const auto& e : log[p])
                if (e.sender != e.receiver) active.insert(edge_key(e.sender, e.receiver));
            for (auto& [key, count] : silence) count = active.count(key) ? 0 : count + 1;
            for (const auto& key : active) silence[key] = 0;

            for (const auto& key : active) {
                if (!g.has_edge(key.first, key.second) ||
                    g.idle_intervals(key.first, key.second) != 0) {
                    out.fail("reinforced edge has a nonzero idle counter");
                    break;
                }
            }
            for (const auto& [key, count] : silence)
                if (count >= policy.cut_after_idle && g.has_edge(key.first, key.second)) {
                    out.fail("stale edge survived " + std::to_string(count) + " silent intervals");
                    break;
                }
        }
        if (!testutil::same_graph(g, gperm)) out.fail("event permutation changed the graph");
    }
    if (out.pass) out.detail = "500 random logs: cut rule, idle reset, permutation invariance";
    return out;
}

// ---------------------------------------------------------------- 9
void write_desk_scale_log(const std::string& path) {
    // 32 nodes in 4 planted groups of 8, 460 messages, mostly intra-group,
    // timestamps spread uniformly so 6 phases all carry traffic
    std::mt19937 rng(123456);
    std::ofstream outf(path);
    outf << "# synthetic desk-scale message log: 32 nodes, 460 messages\n";
    for (int i = 0; i < 460; ++i) {
        int group = static_cast<int>(rng() % 4);
        int a = static_cast<int>(rng() % 8);
        int b = static_cast<int>(rng() % 8);
        while (b == a) b = static_cast<int>(rng() % 8);
        NodeId sender = 1 + group * 8 + a;
        NodeId receiver;
        if (rng() % 100 < 12) {  // occasional inter-group message
            int other = static_cast<int>(rng() % 4);
            receiver = 1 + other * 8 + static_cast<int>(rng() % 8);
            if (receiver == sender) receiver = sender == 32 ? 1 : sender + 1;
        } else {
            receiver = 1 + group * 8 + b;
        }
        outf << sender << "," << receiver << "," << i * 100 << "\n";
    }
}

Outcome desk_scale_run() {
    Outcome out;
    auto t0 = Clock::now();
    fs::path log = g_scratch / "desk_scale.log";
    write_desk_scale_log(log.string());

    std::vector<MessageEvent> events = parse_message_log(log.string(), WeightingMode::messages);
    std::set<NodeId> ids;
    for (const auto& e : events) {
        ids.insert(e.sender);
        ids.insert(e.receiver);
    }
    if (events.size() != 460) out.fail("log does not hold 460 messages");
    if (ids.size() != 32) out.fail("log does not span 32 nodes");

    RunConfig cfg;  // defaults: 6 phases, alphas 0.65/0.83/0.43
    cfg.input_path = log.string();
    cfg.out_dir = (g_scratch / "desk_run").string();
    cfg.reference_q = 0.8947311;
    run_detect(cfg);

    auto summary = read_json_file(cfg.out_dir + "/summary.json");
    double best_q = summary.at("result").at("best_q").get<double>();
    std::size_t communities = summary.at("result").at("n_communities").get<std::size_t>();
    if (best_q < 0.4) out.fail("best Q " + std::to_string(best_q) + " < 0.4");
    if (communities < 2) out.fail("fewer than 2 communities");
    if (summary.at("dataset").at("nodes") != 32 || summary.at("dataset").at("messages") != 460)
        out.fail("summary dataset stats wrong");
    if (!summary.at("reference").is_object() ||
        std::fabs(summary.at("reference").at("q").get<double>() - 0.8947311) > 1e-12 ||
        summary.at("reference").at("note").get<std::string>().empty())
        out.fail("reference value and note missing from the report");

    double elapsed = seconds_since(t0);
    if (elapsed >= 30.0) out.fail("took " + std::to_string(elapsed) + "s (limit 30)");
    if (out.pass) {
        std::ostringstream d;
        d << "32 nodes / 460 messages, best Q " << best_q << ", " << communities
          << " communities, reference recorded, " << elapsed << "s";
        out.detail = d.str();
    }
    return out;
}

// ---------------------------------------------------------------- 10
int run_cli(const std::string& args) {
    std::string cmd = "\"" + g_cli_path + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

Outcome determinism() {
    Outcome out;
    fs::path log = g_scratch / "desk_scale.log";
    if (!fs::exists(log)) write_desk_scale_log(log.string());

    struct Run {
        std::string dir;
        int threads;
    };
    std::vector<Run> runs{{"det_t1_a", 1}, {"det_t1_b", 1}, {"det_t4_a", 4}, {"det_t4_b", 4}};
    for (const auto& r : runs) {
        std::string outdir = (g_scratch / r.dir).string();
        int rc = run_cli("detect --input \"" + log.string() + "\" --out \"" + outdir +
                         "\" --threads " + std::to_string(r.threads));
        if (rc != 0) {
            out.fail("cli run failed in " + r.dir);
            return out;
        }
    }
    for (const char* file : {"communities.json", "trace.json"}) {
        std::string base = read_text_file((g_scratch / runs[0].dir / file).string());
        for (std::size_t i = 1; i < runs.size(); ++i)
            if (read_text_file((g_scratch / runs[i].dir / file).string()) != base) {
                out.fail(std::string(file) + " differs between " + runs[0].dir + " and " +
                         runs[i].dir);
                break;
            }
    }
    if (out.pass) out.detail = "4 CLI runs (threads 1 and 4) byte-identical";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-commdet-cli>\n");
        return 2;
    }
    g_cli_path = argv[1];
    std::string tmpl = (fs::temp_directory_path() / "commdet_acceptance_XXXXXX").string();
    g_scratch = mkdtemp(tmpl.data());

    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"betweenness oracle equivalence", betweenness_oracle_equivalence},
        {"tree edge-betweenness identity", tree_identity},
        {"modularity identities and bounds", modularity_identities},
        {"NMI identities and invariances", nmi_identities},
        {"planted two-clique recovery", planted_recovery},
        {"reduction to girvan-newman", gn_reduction},
        {"alpha ranking invariance", alpha_ranking_invariance},
        {"dynamics contract", dynamics_contract},
        {"desk-scale end-to-end run", desk_scale_run},
        {"byte determinism across workers", determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        Outcome out = criteria[i].run();
        std::printf("[%s] criterion %zu: %s — %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }

    std::error_code ec;
    fs::remove_all(g_scratch, ec);
    if (failures == 0) std::printf("all %zu acceptance criteria passed\n", std::size(criteria));
    return failures == 0 ? 0 : 1;
}
