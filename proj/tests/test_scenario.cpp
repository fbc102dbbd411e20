#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "mbplan/scenario.hpp"
#include "oracles.hpp"

using namespace mbplan;

namespace {

std::string error_field(const NetworkScenario& s) {
    try {
        validate(s);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

std::map<NodeId, int> children_per_hl3(const PhysicalTopology& topo) {
    std::map<NodeId, int> counts;
    for (NodeId id : topo.nodes_at(Level::HL3)) counts[id] = 0;
    for (NodeId id : topo.nodes_at(Level::HL4)) ++counts[*topo.node(id).parent];
    return counts;
}

NetworkScenario random_scenario(std::mt19937_64& rng) {
    NetworkScenario s = oracle::random_case(rng, 120).scenario();
    std::uniform_real_distribution<double> real(0.0, 1.0);
    s.a4_gbps = real(rng) * 1000.0;
    s.eta = real(rng);
    s.channel_rate_gbps = 50.0 + real(rng) * 750.0;
    s.link_length_km = 1.0 + real(rng) * 200.0;
    s.topology_kind = rng() % 2 ? TopologyKind::Ring : TopologyKind::Tree;
    return s;
}

}  // namespace

TEST_CASE("validate accepts the reference network and the degenerate minimum") {
    CHECK(validate(reference_scenario()) == reference_scenario());

    NetworkScenario minimal;
    minimal.h4 = minimal.h3 = minimal.h12 = 1;
    minimal.a4_gbps = 0.0;
    minimal.eta = 0.0;
    CHECK_NOTHROW(validate(minimal));
}

TEST_CASE("validate names the first failing field") {
    NetworkScenario s = reference_scenario();
    s.h4 = 5;
    s.h3 = 10;
    s.h12 = 1;
    CHECK(error_field(s) == "h3");
    CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("h3 exceeds h4"), ConfigError);

    s = reference_scenario();
    s.eta = 1.5;
    CHECK(error_field(s) == "eta");

    s = reference_scenario();
    s.h12 = 41;
    CHECK(error_field(s) == "h12");

    s = reference_scenario();
    s.channel_rate_gbps = 0.0;
    CHECK(error_field(s) == "channel_rate_gbps");

    s = reference_scenario();
    s.fanout_m = 0;
    CHECK(error_field(s) == "fanout_m");

    s = reference_scenario();
    s.a4_gbps = -1.0;
    CHECK(error_field(s) == "a4_gbps");

    s = reference_scenario();
    s.h4 = 0;
    CHECK(error_field(s) == "h4");
}

TEST_CASE("tree topology of the reference network") {
    const auto topo = generate_topology(reference_scenario());
    CHECK(topo.nodes().size() == 245);
    CHECK(topo.links().size() == 240);
    for (const auto& [hl3, children] : children_per_hl3(topo)) CHECK(children == 5);
    CHECK_FALSE(check_topology(topo, reference_scenario()).has_value());

    // 8 HL3 per hub
    std::map<NodeId, int> per_hub;
    for (NodeId id : topo.nodes_at(Level::HL3)) ++per_hub[*topo.node(id).parent];
    CHECK(per_hub.size() == 5);
    for (const auto& [hub, n] : per_hub) CHECK(n == 8);
}

TEST_CASE("minimal tree is a three-node path") {
    NetworkScenario s;
    const auto topo = generate_topology(s);
    CHECK(topo.nodes().size() == 3);
    CHECK(topo.links().size() == 2);
    CHECK(topo.neighbors(topo.nodes_at(Level::HL3).front()).size() == 2);
}

TEST_CASE("small ring: three-node cycle plus four leaves") {
    NetworkScenario s;
    s.h4 = 4;
    s.h3 = 2;
    s.h12 = 1;
    s.topology_kind = TopologyKind::Ring;
    const auto topo = generate_topology(s);
    CHECK(topo.nodes().size() == 7);
    CHECK(topo.links().size() == 7);
    CHECK_FALSE(check_topology(topo, s).has_value());
    for (NodeId id : topo.nodes_at(Level::HL3)) CHECK(topo.neighbors(id).size() == 4);  // 2 ring + 2 leaves
}

TEST_CASE("ring hubs are evenly spaced and HL3 home to the nearest hub") {
    NetworkScenario s = reference_scenario();
    s.topology_kind = TopologyKind::Ring;
    const auto topo = generate_topology(s);
    CHECK_FALSE(check_topology(topo, s).has_value());
    CHECK(topo.links().size() == static_cast<std::size_t>(45 + 200));
    // Every HL3 is at most 4 ring hops from its home hub (blocks of 8 between hubs).
    for (NodeId id : topo.nodes_at(Level::HL3)) {
        NodeId hub = *topo.node(id).parent;
        // BFS restricted to backbone
        std::vector<int> dist(topo.nodes().size(), -1);
        std::vector<NodeId> frontier{hub};
        dist[index(hub)] = 0;
        for (std::size_t k = 0; k < frontier.size(); ++k) {
            for (const auto& adj : topo.neighbors(frontier[k])) {
                if (topo.node(adj.node).level == Level::HL4 || dist[index(adj.node)] >= 0) continue;
                dist[index(adj.node)] = dist[index(frontier[k])] + 1;
                frontier.push_back(adj.node);
            }
        }
        CHECK(dist[index(id)] <= 4);
    }
}

TEST_CASE("two-node ring backbone degenerates to a single link") {
    NetworkScenario s;
    s.h4 = 10;
    s.topology_kind = TopologyKind::Ring;
    const auto topo = generate_topology(s);
    CHECK(topo.links().size() == 11);
    CHECK_FALSE(check_topology(topo, s).has_value());
}

TEST_CASE("property: generated topologies are deterministic, balanced and pass their own checks") {
    std::mt19937_64 rng(0x5eed01);
    for (int trial = 0; trial < 250; ++trial) {
        const NetworkScenario s = random_scenario(rng);
        const auto topo = generate_topology(s);
        CAPTURE(save_scenario(s));
        CHECK(topo == generate_topology(s));
        CHECK_FALSE(check_topology(topo, s).has_value());
        for (const auto& link : topo.links()) CHECK(link.length_km == s.link_length_km);

        auto counts = children_per_hl3(topo);
        auto [lo, hi] = std::minmax_element(counts.begin(), counts.end(),
                                            [](const auto& a, const auto& b) { return a.second < b.second; });
        CHECK(hi->second - lo->second <= 1);
    }
}

TEST_CASE("scenario file: reference values and defaults") {
    const auto s = parse_scenario(R"({"h4": 200, "h3": 40, "h12": 5, "a4_gbps": 300, "eta": 0.5})");
    CHECK(s == reference_scenario());
    CHECK(s.fanout_m == 4);
    CHECK(s.channel_rate_gbps == 400.0);
    CHECK(s.topology_kind == TopologyKind::Tree);
    CHECK(s.link_length_km == 50.0);

    const auto ring = parse_scenario(R"({"h4": 4, "h3": 2, "h12": 1, "a4_gbps": 1, "eta": 0, "topology_kind": "ring"})");
    CHECK(ring.topology_kind == TopologyKind::Ring);
}

TEST_CASE("scenario file: errors carry field or position context") {
    try {
        parse_scenario(R"({"h4": 200, "h3": 40, "h12": 5, "a4_gbps": 300, "eta": "x"})");
        FAIL("expected a type error");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "eta");
        CHECK(std::string(e.what()).find("eta") != std::string::npos);
    }
    try {
        parse_scenario(R"({"h4": 200, "h3": 40, "h12": 5, "a4_gbps": 300, "eta": 0.5, "fanout": 4})");
        FAIL("expected an unknown-field error");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "fanout");
    }
    try {
        parse_scenario("{\n  \"h4\": 200,\n  \"h3\": ,\n}");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario(R"({"h4": 2.5, "h3": 1, "h12": 1, "a4_gbps": 0, "eta": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"h4": 2, "h3": 1, "h12": 1, "a4_gbps": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"h4": 2, "h3": 1, "h12": 1, "a4_gbps": 0, "eta": 0, "topology_kind": "mesh"})"),
                    ConfigError);
    CHECK_THROWS_WITH_AS(load_scenario("/nonexistent/scenario.json"), doctest::Contains("/nonexistent/scenario.json"),
                         ConfigError);
}

TEST_CASE("property: save then load is the identity") {
    std::mt19937_64 rng(0x5eed02);
    for (int trial = 0; trial < 300; ++trial) {
        const NetworkScenario s = random_scenario(rng);
        CHECK(parse_scenario(save_scenario(s)) == s);
        CHECK(scenario_from_json(to_json(s)) == s);
    }
}

TEST_CASE("shipped scenario files load") {
    CHECK(load_scenario(MBPLAN_DATA_DIR "/scenarios/reference.json") == reference_scenario());
    const auto ring = load_scenario(MBPLAN_DATA_DIR "/scenarios/ring_overload.json");
    CHECK(ring.topology_kind == TopologyKind::Ring);
    CHECK(ring.h4 == 150);
}
