#pragma once

#include <optional>
#include <string>

#include "commdet/detector.hpp"
#include "commdet/ingest.hpp"

namespace commdet {

/// Everything one command-line invocation needs. Flags map onto these
/// fields one-to-one; reports echo the resolved values so each run is
/// self-describing.
struct RunConfig {
    std::string input_path;
    WeightingMode weighting = WeightingMode::messages;
    DetectorConfig detector;
    std::string truth_path;        // optional
    std::string communities_path;  // evaluate: reuse a prior communities.json
    std::string out_dir;
    std::string snapshot = "final";  // export selector: initial | final | <iteration>
    bool baseline_gn = false;
    bool weighted_q = false;  // evaluate: weight sums instead of edge counts in Q
    std::optional<double> reference_q;  // recorded in summary.json with a comparison note
};

/// Ingest, run detection (or the GN baseline), write communities.json,
/// trace.json, summary.json and run_state.json into out_dir.
void run_detect(const RunConfig& config);

/// Compute modularity (and NMI when a truth file is given) for a stored or
/// freshly-computed partition against the cumulative message graph; writes
/// evaluation.json.
void run_evaluate(const RunConfig& config);

/// Write a GEXF 1.2 file and a weighted edge list for one snapshot of a
/// completed run: "initial" (after the first phase's weight update),
/// "final" (the best-Q state) or a trace iteration index.
void run_export(const RunConfig& config);

}  // namespace commdet
