#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

enum class WeightingMode { messages, characters };

const char* to_string(WeightingMode mode);
WeightingMode weighting_mode_from_string(const std::string& name);

/// One timestamped directed message. `size` is 1.0 in message mode and the
/// character count in character mode.
struct MessageEvent {
    NodeId sender = 0;
    NodeId receiver = 0;
    double timestamp = 0.0;  // seconds since epoch
    double size = 1.0;
};

/// Message events bucketed into consecutive equal-duration intervals.
struct PhasedLog {
    std::vector<std::vector<MessageEvent>> phases;
    std::vector<double> boundaries;  // size = phases.size() + 1

    std::size_t total_events() const;
};

struct GroundTruth {
    std::map<NodeId, std::string> labels;  // dataset node id -> community label
};

/// Parse a message log: one event per line,
///     sender<sep>receiver<sep>timestamp[<sep>size]
/// where <sep> is "," or a whitespace run (chosen per line by the presence
/// of a comma). Lines starting with '#' or '%' are skipped. Timestamps are
/// ISO-8601 ("2004-05-21 10:30:00", 'T' accepted, seconds optional) or
/// epoch seconds; the style is auto-detected from the first record and must
/// be consistent within the file. Events come back sorted by timestamp.
std::vector<MessageEvent> parse_message_log(const std::string& path, WeightingMode mode);

/// Same parser over an already-open stream; `name` is used in error messages.
std::vector<MessageEvent> parse_message_log_stream(std::istream& in, WeightingMode mode,
                                                   const std::string& name);

/// Split the event span [min_ts, max_ts] into n equal-duration phases.
/// The last interval is closed on the right so max_ts is included; a
/// zero-length span puts every event into the final phase.
PhasedLog partition_phases(const std::vector<MessageEvent>& events, int n_phases);

/// Parse "node_id,label" records (same separator and comment rules as the
/// message log). Duplicate node ids are an error.
GroundTruth parse_ground_truth(const std::string& path);
GroundTruth parse_ground_truth_stream(std::istream& in, const std::string& name);

}  // namespace commdet
