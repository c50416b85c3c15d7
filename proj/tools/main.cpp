#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commdet/cli.hpp"
#include "commdet/errors.hpp"

namespace {

void add_common_flags(CLI::App* cmd, commdet::RunConfig& cfg, std::string& weighting,
                      std::string& distance, std::string& formula, bool& no_split) {
    commdet::DetectorConfig& d = cfg.detector;
    cmd->add_option("--input", cfg.input_path, "message log file");
    cmd->add_option("--weighting", weighting, "messages|characters (default messages)");
    cmd->add_option("--phases", d.n_phases, "number of equal-duration time intervals")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--alpha1", d.alphas.alpha1, "betweenness weight in the cut score");
    cmd->add_option("--alpha2", d.alphas.alpha2, "message-rate weight in the cut score");
    cmd->add_option("--alpha3", d.alphas.alpha3, "similarity weight in the cut score");
    cmd->add_option("--decay", d.policy.decay_factor, "silent-edge weight multiplier, in (0,1)");
    cmd->add_option("--cut-after-idle", d.policy.cut_after_idle,
                    "consecutive silent intervals before an edge is cut")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--distance", distance, "unit|inverse-weight (default inverse-weight)");
    cmd->add_flag("--no-split", no_split, "disable vertex splitting (no overlaps)");
    cmd->add_option("--cut-formula", formula, "literal|exponent (default literal)");
    cmd->add_option("--max-iterations", d.max_iterations, "global action budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", d.threads, "betweenness worker cap (output-invariant)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", d.seed, "seed for randomized tie exploration (unused by default)");
    cmd->add_option("--truth", cfg.truth_path, "ground-truth file (node_id,label per line)");
    cmd->add_option("--out", cfg.out_dir, "output directory");
}

void resolve_modes(commdet::RunConfig& cfg, const std::string& weighting,
                   const std::string& distance, const std::string& formula, bool no_split) {
    cfg.weighting = commdet::weighting_mode_from_string(weighting);
    cfg.detector.distance = commdet::distance_mode_from_string(distance);
    cfg.detector.formula = commdet::cut_formula_from_string(formula);
    cfg.detector.allow_splitting = !no_split;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"overlapping community detection on temporally weighted message graphs"};
    app.require_subcommand(1);

    commdet::RunConfig cfg;
    std::string weighting = "messages";
    std::string distance = "inverse-weight";
    std::string formula = "literal";
    std::string baseline;
    bool no_split = false;
    double reference_q = 0.0;

    CLI::App* detect = app.add_subcommand("detect", "run detection and write reports");
    add_common_flags(detect, cfg, weighting, distance, formula, no_split);
    detect->add_option("--baseline", baseline, "use a baseline instead of the detector (gn)");
    CLI::Option* ref_opt =
        detect->add_option("--reference-q", reference_q,
                           "externally reported Q to record in summary.json for comparison");

    CLI::App* evaluate = app.add_subcommand("evaluate", "score a partition (Q, NMI)");
    add_common_flags(evaluate, cfg, weighting, distance, formula, no_split);
    evaluate->add_option("--communities", cfg.communities_path,
                         "existing communities.json (otherwise detection runs inline)");
    evaluate->add_flag("--weighted-q", cfg.weighted_q,
                       "modularity over weight sums instead of edge counts");

    CLI::App* exp = app.add_subcommand("export", "export a run snapshot as GEXF + edge list");
    exp->add_option("--out", cfg.out_dir, "directory of a completed run");
    exp->add_option("--snapshot", cfg.snapshot, "initial|final|<iteration> (default final)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems exit 2, --help exits 0
    }

    try {
        if (app.got_subcommand(detect)) {
            resolve_modes(cfg, weighting, distance, formula, no_split);
            if (!baseline.empty()) {
                if (baseline != "gn")
                    throw commdet::input_error("unknown baseline '" + baseline + "' (gn)");
                cfg.baseline_gn = true;
            }
            if (ref_opt->count() > 0) cfg.reference_q = reference_q;
            commdet::run_detect(cfg);
        } else if (app.got_subcommand(evaluate)) {
            resolve_modes(cfg, weighting, distance, formula, no_split);
            commdet::run_evaluate(cfg);
        } else {
            commdet::run_export(cfg);
        }
    } catch (const commdet::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
