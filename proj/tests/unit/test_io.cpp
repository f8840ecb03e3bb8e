#include "thp/error.hpp"
#include "thp/io.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace thp;

TEST_CASE("edge list parsing skips comments and blanks") {
    std::istringstream in("# topology\n0,1\n\n  2 , 3\n# trailing\n");
    const auto f = parse_edge_list(in);
    REQUIRE(f.edges.size() == 2);
    CHECK(f.edges[1] == NodeEdge{2, 3});
    CHECK(f.max_node_id == 3);
}

TEST_CASE("malformed edge lines report source and line") {
    std::istringstream in("0,1\n0;2\n");
    try {
        parse_edge_list(in, "topo.csv");
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).rfind("topo.csv:2:", 0) == 0);
    }
    std::istringstream negative("-1,2\n");
    CHECK_THROWS_AS(parse_edge_list(negative), InvalidInput);
}

TEST_CASE("events CSV round trip is exact") {
    std::mt19937_64 rng(1);
    std::vector<EventRecord> events;
    for (int i = 0; i < 200; ++i)
        events.push_back({static_cast<int>(rng() % 7), static_cast<int>(rng() % 3), std::uniform_real_distribution<double>(0, 1e5)(rng)});
    std::ostringstream out;
    write_events_csv(out, events);
    CHECK(out.str().rfind("node,event_type,timestamp\n", 0) == 0);
    std::istringstream in(out.str());
    const auto back = parse_events_csv(in);
    REQUIRE(back.size() == events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(back[i].node == events[i].node);
        CHECK(back[i].event_type == events[i].event_type);
        CHECK(back[i].timestamp == events[i].timestamp);
    }
}

TEST_CASE("events CSV errors") {
    std::istringstream no_header("0,0,1.0\n");
    CHECK_THROWS_AS(parse_events_csv(no_header), InvalidInput);
    std::istringstream bad_number("node,event_type,timestamp\n0,0,abc\n");
    try {
        parse_events_csv(bad_number, "ev.csv");
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).rfind("ev.csv:2:", 0) == 0);
    }
    CHECK_THROWS_AS(read_events_csv("/nonexistent/events.csv"), IoError);
}

TEST_CASE("edge list writer round trips") {
    const TopologyGraph g(5, {{0, 1}, {3, 4}, {1, 3}}, 0);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    CHECK(parse_edge_list(in).edges == g.edges());
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format_double(x)) == x);
}
