#pragma once

#include "thp/event_data.hpp"
#include "thp/topology.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace thp {

// Topology edge list: one `a,b` pair per line; blank lines and `#` comments ignored.
struct EdgeListFile {
    std::vector<NodeEdge> edges;
    int max_node_id = -1;
};

EdgeListFile parse_edge_list(std::istream& in, const std::string& source = "<edges>");
EdgeListFile read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const TopologyGraph& topology);

// Event CSV with header `node,event_type,timestamp`.
std::vector<EventRecord> parse_events_csv(std::istream& in, const std::string& source = "<events>");
std::vector<EventRecord> read_events_csv(const std::filesystem::path& path);
void write_events_csv(std::ostream& out, std::span<const EventRecord> events);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

} // namespace thp
