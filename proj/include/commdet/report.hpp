#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "commdet/detector.hpp"
#include "commdet/graph.hpp"

namespace commdet {

/// Serialize with sorted object keys and every float printed as "%.9g",
/// so identical values always produce identical bytes. Non-finite floats
/// become null (no code path should produce them).
std::string json_dump(const nlohmann::json& value, int indent = 2);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

nlohmann::json graph_to_json(const InteractionGraph& g);
InteractionGraph graph_from_json(const nlohmann::json& j);

nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

nlohmann::json trace_entry_to_json(const TraceEntry& e);
TraceEntry trace_entry_from_json(const nlohmann::json& j);
nlohmann::json trace_to_json(const DetectionTrace& t);
DetectionTrace trace_from_json(const nlohmann::json& j);

nlohmann::json interval_report_to_json(const IntervalReport& r);

nlohmann::json run_state_to_json(const DetectionRun& run);
DetectionRun run_state_from_json(const nlohmann::json& j);

/// GEXF 1.2 static undirected graph with origin and community node
/// attributes and edge weights. `community` maps node id -> community index.
std::string graph_to_gexf(const InteractionGraph& g, const std::map<NodeId, int>& community);

/// Plain "u v w" weighted edge list, one edge per line, u < v, sorted.
std::string graph_to_edge_list(const InteractionGraph& g);

}  // namespace commdet
