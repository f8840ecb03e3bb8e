#include "thp/io.hpp"

#include "thp/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace thp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& message) {
    throw InvalidInput(source + ":" + std::to_string(line) + ": " + message);
}

template <class T>
T parse_number(std::string_view text, const std::string& source, std::size_t line, const char* what) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        parse_error(source, line, std::string("cannot parse ") + what + " from '" + std::string(text) + "'");
    }
    return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

} // namespace

EdgeListFile parse_edge_list(std::istream& in, const std::string& source) {
    EdgeListFile out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2) parse_error(source, line_no, "expected 'node_a,node_b'");
        const int a = parse_number<int>(fields[0], source, line_no, "node id");
        const int b = parse_number<int>(fields[1], source, line_no, "node id");
        if (a < 0 || b < 0) parse_error(source, line_no, "node ids must be non-negative");
        if (a == b) parse_error(source, line_no, "self-loop " + std::to_string(a) + "," + std::to_string(b));
        out.edges.emplace_back(a, b);
        out.max_node_id = std::max({out.max_node_id, a, b});
    }
    return out;
}

EdgeListFile read_edge_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const TopologyGraph& topology) {
    out << "# undirected topology, " << topology.node_count() << " nodes\n";
    for (const auto& [a, b] : topology.edges()) out << a << ',' << b << '\n';
}

std::vector<EventRecord> parse_events_csv(std::istream& in, const std::string& source) {
    std::vector<EventRecord> out;
    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        if (!header_seen) {
            const auto fields = split(line, ',');
            if (fields.size() != 3 || fields[0] != "node" || fields[1] != "event_type" || fields[2] != "timestamp") {
                parse_error(source, line_no, "expected header 'node,event_type,timestamp'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 3) parse_error(source, line_no, "expected 3 comma-separated fields");
        EventRecord r;
        r.node = parse_number<int>(fields[0], source, line_no, "node");
        r.event_type = parse_number<int>(fields[1], source, line_no, "event_type");
        r.timestamp = parse_number<double>(fields[2], source, line_no, "timestamp");
        if (r.node < 0 || r.event_type < 0) parse_error(source, line_no, "ids must be non-negative");
        if (!(r.timestamp >= 0.0) || !std::isfinite(r.timestamp)) {
            parse_error(source, line_no, "timestamp must be a finite non-negative number");
        }
        out.push_back(r);
    }
    if (!header_seen) parse_error(source, line_no, "missing header 'node,event_type,timestamp'");
    return out;
}

std::vector<EventRecord> read_events_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_events_csv(in, path.string());
}

void write_events_csv(std::ostream& out, std::span<const EventRecord> events) {
    out << "node,event_type,timestamp\n";
    for (const auto& e : events) out << e.node << ',' << e.event_type << ',' << format_double(e.timestamp) << '\n';
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw InvalidInput("cannot format number");
    return std::string(buf, ptr);
}

} // namespace thp
