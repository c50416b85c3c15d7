#include "commdet/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "commdet/errors.hpp"

namespace commdet {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void escape_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump_rec(const nlohmann::json& v, int indent, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (v.type()) {
        case nlohmann::json::value_t::null: out += "null"; break;
        case nlohmann::json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            break;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            break;
        case nlohmann::json::value_t::number_float: out += format_double(v.get<double>()); break;
        case nlohmann::json::value_t::string: escape_string(v.get<std::string>(), out); break;
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out += pad_in;
                dump_rec(v[i], indent, depth + 1, out);
                if (i + 1 < v.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        }
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {  // keys already sorted
                out += pad_in;
                escape_string(it.key(), out);
                out += ": ";
                dump_rec(it.value(), indent, depth + 1, out);
                if (i + 1 < v.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            break;
        }
        default: out += "null"; break;
    }
}

}  // namespace

std::string json_dump(const nlohmann::json& value, int indent) {
    std::string out;
    dump_rec(value, indent, 0, out);
    out += '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw input_error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error("bad JSON in '" + path + "': " + e.what());
    }
}

nlohmann::json graph_to_json(const InteractionGraph& g) {
    nlohmann::json nodes = nlohmann::json::array();
    for (NodeId id : g.node_ids()) nodes.push_back({id, g.origin(id)});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.weight, e.idle_intervals});
    return {{"nodes", nodes}, {"edges", edges}};
}

InteractionGraph graph_from_json(const nlohmann::json& j) {
    InteractionGraph g;
    std::map<NodeId, NodeId> origins;
    for (const auto& n : j.at("nodes")) {
        NodeId id = n.at(0).get<NodeId>();
        origins[id] = n.at(1).get<NodeId>();
        g.ensure_node(id);
    }
    for (const auto& e : j.at("edges"))
        g.set_edge(e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<double>(),
                   e.at(3).get<int>());
    g.restore_origins(origins);  // split copies carry origins != id
    return g;
}

nlohmann::json partition_to_json(const Partition& p) {
    nlohmann::json communities = nlohmann::json::array();
    for (const auto& c : p.communities) communities.push_back(c);
    nlohmann::json overlapping = nlohmann::json::array();
    for (NodeId id : p.overlapping_nodes()) overlapping.push_back(id);
    return {{"communities", communities}, {"overlapping", overlapping}};
}

Partition partition_from_json(const nlohmann::json& j) {
    Partition p;
    for (const auto& c : j.at("communities")) {
        std::vector<NodeId> ids;
        for (const auto& id : c) ids.push_back(id.get<NodeId>());
        std::sort(ids.begin(), ids.end());
        p.communities.push_back(std::move(ids));
    }
    std::sort(p.communities.begin(), p.communities.end());
    return p;
}

nlohmann::json trace_entry_to_json(const TraceEntry& e) {
    nlohmann::json j{{"iteration", e.iteration},
                     {"phase", e.phase},
                     {"score_normalized", e.score_normalized},
                     {"score_raw", e.score_raw},
                     {"q", e.q}};
    if (e.action == TraceAction::remove_edge) {
        j["action"] = "remove_edge";
        j["edge"] = {e.u, e.v};
    } else {
        j["action"] = "split_vertex";
        j["vertex"] = e.vertex;
        j["copies"] = {e.copy_a, e.copy_b};
        j["side_a"] = e.side_a;
        j["side_b"] = e.side_b;
    }
    return j;
}

TraceEntry trace_entry_from_json(const nlohmann::json& j) {
    TraceEntry e;
    e.iteration = j.at("iteration").get<long>();
    e.phase = j.at("phase").get<int>();
    e.score_normalized = j.at("score_normalized").get<double>();
    e.score_raw = j.at("score_raw").get<double>();
    e.q = j.at("q").get<double>();
    if (j.at("action").get<std::string>() == "remove_edge") {
        e.action = TraceAction::remove_edge;
        e.u = j.at("edge").at(0).get<NodeId>();
        e.v = j.at("edge").at(1).get<NodeId>();
    } else {
        e.action = TraceAction::split_vertex;
        e.vertex = j.at("vertex").get<NodeId>();
        e.copy_a = j.at("copies").at(0).get<NodeId>();
        e.copy_b = j.at("copies").at(1).get<NodeId>();
        for (const auto& id : j.at("side_a")) e.side_a.push_back(id.get<NodeId>());
        for (const auto& id : j.at("side_b")) e.side_b.push_back(id.get<NodeId>());
    }
    return e;
}

nlohmann::json trace_to_json(const DetectionTrace& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : t.entries) entries.push_back(trace_entry_to_json(e));
    return {{"entries", entries},
            {"best_iteration", t.best_iteration},
            {"hit_iteration_limit", t.hit_iteration_limit}};
}

DetectionTrace trace_from_json(const nlohmann::json& j) {
    DetectionTrace t;
    for (const auto& e : j.at("entries")) t.entries.push_back(trace_entry_from_json(e));
    t.best_iteration = j.at("best_iteration").get<long>();
    t.hit_iteration_limit = j.at("hit_iteration_limit").get<bool>();
    return t;
}

nlohmann::json interval_report_to_json(const IntervalReport& r) {
    auto pairs = [](const std::vector<std::pair<NodeId, NodeId>>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [a, b] : v) arr.push_back({a, b});
        return arr;
    };
    return {{"created", pairs(r.created)},
            {"reinforced", pairs(r.reinforced)},
            {"decayed", pairs(r.decayed)},
            {"cut", pairs(r.cut)},
            {"events_applied", r.events_applied},
            {"self_messages_dropped", r.self_messages_dropped}};
}

nlohmann::json run_state_to_json(const DetectionRun& run) {
    nlohmann::json phases = nlohmann::json::array();
    for (const auto& g : run.phase_graphs) phases.push_back(graph_to_json(g));
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : run.phase_reports) reports.push_back(interval_report_to_json(r));
    return {{"phases", phases},
            {"phase_reports", reports},
            {"trace", trace_to_json(run.result.trace)}};
}

DetectionRun run_state_from_json(const nlohmann::json& j) {
    DetectionRun run;
    for (const auto& g : j.at("phases")) run.phase_graphs.push_back(graph_from_json(g));
    run.result.trace = trace_from_json(j.at("trace"));
    return run;
}

std::string graph_to_gexf(const InteractionGraph& g, const std::map<NodeId, int>& community) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
        << "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n"
        << "    <attributes class=\"node\">\n"
        << "      <attribute id=\"0\" title=\"origin\" type=\"long\"/>\n"
        << "      <attribute id=\"1\" title=\"community\" type=\"long\"/>\n"
        << "    </attributes>\n"
        << "    <nodes>\n";
    for (NodeId id : g.node_ids()) {
        int comm = 0;
        if (auto it = community.find(id); it != community.end()) comm = it->second;
        out << "      <node id=\"" << id << "\" label=\"" << id << "\">\n"
            << "        <attvalues>\n"
            << "          <attvalue for=\"0\" value=\"" << g.origin(id) << "\"/>\n"
            << "          <attvalue for=\"1\" value=\"" << comm << "\"/>\n"
            << "        </attvalues>\n"
            << "      </node>\n";
    }
    out << "    </nodes>\n    <edges>\n";
    std::size_t eid = 0;
    for (const auto& e : g.edges())
        out << "      <edge id=\"" << eid++ << "\" source=\"" << e.u << "\" target=\"" << e.v
            << "\" weight=\"" << format_double(e.weight) << "\"/>\n";
    out << "    </edges>\n  </graph>\n</gexf>\n";
    return out.str();
}

std::string graph_to_edge_list(const InteractionGraph& g) {
    std::ostringstream out;
    for (const auto& e : g.edges())
        out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
    return out.str();
}

}  // namespace commdet
