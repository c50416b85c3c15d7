#include "commdet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "commdet/errors.hpp"

namespace commdet {

const char* to_string(WeightingMode mode) {
    return mode == WeightingMode::messages ? "messages" : "characters";
}

WeightingMode weighting_mode_from_string(const std::string& name) {
    if (name == "messages") return WeightingMode::messages;
    if (name == "characters") return WeightingMode::characters;
    throw input_error("unknown weighting mode '" + name + "' (messages|characters)");
}

std::size_t PhasedLog::total_events() const {
    std::size_t n = 0;
    for (const auto& p : phases) n += p.size();
    return n;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_comment_or_blank(const std::string& line) {
    std::string t = trim(line);
    return t.empty() || t[0] == '#' || t[0] == '%';
}

// Comma-separated when a comma is present, whitespace-separated otherwise.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    if (line.find(',') != std::string::npos) {
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(trim(cur));
    } else {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) fields.push_back(tok);
    }
    return fields;
}

std::optional<NodeId> parse_node_id(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return static_cast<NodeId>(v);
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Days from 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool valid_date(int y, int mo, int d) {
    static const int dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (mo < 1 || mo > 12 || d < 1) return false;
    int days = dim[mo - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (mo == 2 && leap) days = 29;
    return d <= days;
}

// "YYYY-MM-DD", "YYYY-MM-DD HH:MM[:SS]" or with 'T'; UTC, second resolution.
std::optional<double> parse_iso_timestamp(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char sep = 0;
    int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &sec);
    if (n != 3 && n != 6 && n != 7) return std::nullopt;
    if (n >= 6 && sep != ' ' && sep != 'T') return std::nullopt;
    if (!valid_date(y, mo, d)) return std::nullopt;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 60) return std::nullopt;
    return static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

enum class TimestampStyle { undetected, epoch, iso };

}  // namespace

std::vector<MessageEvent> parse_message_log_stream(std::istream& in, WeightingMode mode,
                                                   const std::string& name) {
    std::vector<MessageEvent> events;
    TimestampStyle style = TimestampStyle::undetected;
    std::string line;
    std::size_t lineno = 0;

    auto fail = [&](const std::string& why) {
        throw input_error(name + ":" + std::to_string(lineno) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        std::vector<std::string> f = split_fields(line);
        if (f.size() < 3) fail("expected sender, receiver, timestamp[, size]");

        auto sender = parse_node_id(f[0]);
        auto receiver = parse_node_id(f[1]);
        if (!sender) fail("bad sender id '" + f[0] + "'");
        if (!receiver) fail("bad receiver id '" + f[1] + "'");

        std::optional<double> ts;
        if (style == TimestampStyle::undetected) {
            if ((ts = parse_number(f[2]))) {
                style = TimestampStyle::epoch;
            } else if ((ts = parse_iso_timestamp(f[2]))) {
                style = TimestampStyle::iso;
            } else {
                fail("unparseable timestamp '" + f[2] + "'");
            }
        } else if (style == TimestampStyle::epoch) {
            ts = parse_number(f[2]);
            if (!ts) fail("timestamp '" + f[2] + "' does not match the file's epoch style");
        } else {
            ts = parse_iso_timestamp(f[2]);
            if (!ts) fail("timestamp '" + f[2] + "' does not match the file's ISO style");
        }

        double size = 1.0;
        if (mode == WeightingMode::characters) {
            if (f.size() < 4) fail("character mode requires a size field");
            auto sz = parse_number(f[3]);
            if (!sz || !(*sz > 0.0)) fail("bad size '" + f[3] + "'");
            size = *sz;
        }
        events.push_back({*sender, *receiver, *ts, size});
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const MessageEvent& a, const MessageEvent& b) {
                         return a.timestamp < b.timestamp;
                     });
    return events;
}

std::vector<MessageEvent> parse_message_log(const std::string& path, WeightingMode mode) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open message log '" + path + "'");
    return parse_message_log_stream(in, mode, path);
}

PhasedLog partition_phases(const std::vector<MessageEvent>& events, int n_phases) {
    if (n_phases < 1) throw input_error("n_phases must be >= 1");
    if (events.empty()) throw input_error("cannot partition an empty event list into phases");

    double lo = events.front().timestamp, hi = lo;
    for (const auto& e : events) {
        lo = std::min(lo, e.timestamp);
        hi = std::max(hi, e.timestamp);
    }
    double span = hi - lo;

    PhasedLog log;
    log.boundaries.resize(n_phases + 1);
    log.boundaries.front() = lo;
    log.boundaries.back() = hi;
    for (int k = 1; k < n_phases; ++k)
        log.boundaries[k] = lo + span * static_cast<double>(k) / n_phases;
    log.phases.assign(n_phases, {});

    std::vector<MessageEvent> sorted = events;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const MessageEvent& a, const MessageEvent& b) {
                         return a.timestamp < b.timestamp;
                     });

    for (const auto& e : sorted) {
        int k;
        if (span == 0.0) {
            k = n_phases - 1;  // zero-length span: everything lands in the closed last interval
        } else {
            k = static_cast<int>((e.timestamp - lo) / span * n_phases);
            k = std::clamp(k, 0, n_phases - 1);
            // settle rounding against the actual boundary list
            while (k > 0 && e.timestamp < log.boundaries[k]) --k;
            while (k < n_phases - 1 && e.timestamp >= log.boundaries[k + 1]) ++k;
        }
        log.phases[k].push_back(e);
    }
    return log;
}

GroundTruth parse_ground_truth_stream(std::istream& in, const std::string& name) {
    GroundTruth truth;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        std::vector<std::string> f = split_fields(line);
        auto fail = [&](const std::string& why) {
            throw input_error(name + ":" + std::to_string(lineno) + ": " + why);
        };
        if (f.size() != 2) fail("expected node_id,label");
        auto id = parse_node_id(f[0]);
        if (!id) fail("bad node id '" + f[0] + "'");
        if (f[1].empty()) fail("empty label");
        if (!truth.labels.emplace(*id, f[1]).second)
            fail("duplicate node id " + std::to_string(*id));
    }
    return truth;
}

GroundTruth parse_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open ground-truth file '" + path + "'");
    return parse_ground_truth_stream(in, path);
}

}  // namespace commdet
