#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <tuple>

#include "mbplan/spectrum.hpp"
#include "invariants.hpp"
#include "oracles.hpp"

using namespace mbplan;
using invariants::check_assignment;

namespace {

// c * (1/1530 - 1/1565) and c * (1/1260 - 1/1625), c = 299792.458 nm*THz,
// evaluated independently in double precision.
constexpr double kCBandWidthThz = 4.382106968197271;
constexpr double kFullSpanWidthThz = 53.44285576068375;

Band span(double lo, double hi) {
    return Band{BandName::C, lo, hi, std::nullopt, std::nullopt};
}

SpectrumPlan c_only() {
    const BandName names[] = {BandName::C};
    return restrict_bands(default_plan(), names);
}

}  // namespace

TEST_CASE("frequency and wavelength conversions") {
    CHECK(frequency_thz(1550.0) == doctest::Approx(193.414489));
    std::mt19937_64 rng(0xf00d);
    std::uniform_real_distribution<double> lambda(1200.0, 1700.0);
    for (int i = 0; i < 500; ++i) {
        const double l = lambda(rng);
        CHECK(std::abs(wavelength_nm(frequency_thz(l)) - l) / l <= 1e-6);
    }
}

TEST_CASE("band widths") {
    CHECK(std::abs(band_width_thz(span(1260, 1625)) - 53.44) <= 0.05);
    CHECK(std::abs(band_width_thz(span(1260, 1625)) - kFullSpanWidthThz) < 1e-9);
    CHECK(std::abs(band_width_thz(span(1530, 1565)) - kCBandWidthThz) < 1e-9);
    CHECK(band_width_thz(span(1550, 1550)) == 0.0);

    double sum = 0.0;
    for (const Band& b : default_bands()) sum += band_width_thz(b);
    CHECK(std::abs(sum - band_width_thz(span(1260, 1625))) < 0.01);
    CHECK(band_width_thz(span(1260, 1625)) / band_width_thz(span(1530, 1565)) > 12.0);
}

TEST_CASE("declared channel table") {
    const auto plan = default_plan();
    CHECK(channel_count(plan, *plan.find(BandName::C)) == 80);
    CHECK(total_channels(plan) == 900);
    CHECK(channel_count(plan, *plan.find(BandName::L)) == 120);
    CHECK(channel_count(plan, *plan.find(BandName::S)) == 156);
    CHECK(channel_count(plan, *plan.find(BandName::E)) == 252);
    CHECK(channel_count(plan, *plan.find(BandName::O)) == 292);
}

TEST_CASE("declared table split follows band widths") {
    // Oracle for the derived part of the table: L keeps 120; the other 700
    // are spread over E, S, O in proportion to width, largest remainder.
    const auto bands = default_bands();
    std::map<BandName, double> width;
    for (const Band& b : bands) width[b.name] = band_width_thz(b);
    const double eso = width[BandName::E] + width[BandName::S] + width[BandName::O];
    std::map<BandName, std::int64_t> share;
    std::vector<std::pair<double, BandName>> remainders;
    std::int64_t assigned = 0;
    for (BandName n : {BandName::E, BandName::S, BandName::O}) {
        const double exact = 700.0 * width[n] / eso;
        share[n] = static_cast<std::int64_t>(exact);
        assigned += share[n];
        remainders.push_back({exact - static_cast<double>(share[n]), n});
    }
    std::sort(remainders.rbegin(), remainders.rend());
    for (std::size_t i = 0; assigned < 700; ++i, ++assigned) ++share[remainders[i].second];

    const auto plan = default_plan();
    for (BandName n : {BandName::E, BandName::S, BandName::O}) {
        CHECK(channel_count(plan, *plan.find(n)) == share[n]);
    }
}

TEST_CASE("computed channel counts") {
    const auto plan = computed_plan(50.0);
    CHECK(channel_count(plan, *plan.find(BandName::C)) == 87);
    SpectrumPlan zero = plan;
    zero.bands = {span(1550, 1550)};
    CHECK(channel_count(zero, zero.bands.front()) == 0);
    CHECK(channel_count(computed_plan(100.0), *plan.find(BandName::C)) == 43);  // 40-channel class at 100 GHz
}

TEST_CASE("plan validation and files") {
    SpectrumPlan missing = default_plan();
    missing.bands[2].channel_count_declared.reset();
    CHECK_THROWS_AS(validate_plan(missing), ConfigError);
    CHECK_THROWS_AS(channel_count(missing, missing.bands[2]), ConfigError);

    SpectrumPlan overlap = computed_plan();
    overlap.bands[1].lambda_min_nm = 1560.0;
    CHECK_THROWS_AS(validate_plan(overlap), ConfigError);

    SpectrumPlan duplicate = computed_plan();
    duplicate.bands[1].name = BandName::C;
    CHECK_THROWS_AS(validate_plan(duplicate), ConfigError);

    CHECK(load_plan(MBPLAN_DATA_DIR "/spectrum_plan.json") == default_plan());
    CHECK(load_plan(MBPLAN_DATA_DIR "/spectrum_c_only.json") == c_only());
    CHECK(load_plan(MBPLAN_DATA_DIR "/spectrum_computed.json") == computed_plan());
    CHECK(plan_from_json(to_json(default_plan())) == default_plan());

    CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"bands": [{"name": "X", "lambda_min_nm": 1, "lambda_max_nm": 2}]})")),
                    ConfigError);
    CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"bands": [], "spacing": 50})")), ConfigError);

    const BandName unknown[] = {BandName::O};
    CHECK_THROWS_AS(restrict_bands(c_only(), unknown), ConfigError);
}

TEST_CASE("demands per architecture") {
    const auto s = reference_scenario();
    const auto topo = generate_topology(s);
    const auto cont = demands_for(ArchitectureKind::OpticalContinuum, s, topo);
    CHECK(cont.size() == 200);
    for (const auto& d : cont) {
        CHECK(d.channels == 1);
        CHECK(topo.node(d.destination).level == Level::HL12);
    }

    const auto groom = demands_for(ArchitectureKind::GroomingHierarchical, s, topo);
    CHECK(groom.size() == 240);
    int hl4_up = 0;
    int hl3_up = 0;
    for (const auto& d : groom) {
        if (topo.node(d.source).level == Level::HL4) {
            ++hl4_up;
            CHECK(d.channels == 1);
            CHECK(topo.node(d.destination).level == Level::HL3);
        } else {
            ++hl3_up;
            CHECK(d.channels == 2);
            CHECK(topo.node(d.destination).level == Level::HL12);
        }
    }
    CHECK(hl4_up == 200);
    CHECK(hl3_up == 40);

    auto idle = s;
    idle.a4_gbps = 0.0;
    CHECK(demands_for(ArchitectureKind::OpticalContinuum, idle, topo).empty());
    CHECK(demands_for(ArchitectureKind::GroomingHierarchical, idle, topo).empty());
}

TEST_CASE("first fit on an empty single link") {
    PhysicalTopology topo;
    NodeId a = topo.add_node(Level::HL12, 0);
    NodeId b = topo.add_node(Level::HL3, 0, a);
    topo.add_link(a, b, 50.0);
    const std::vector<Demand> demands{Demand{b, a, 1, 400.0}};
    const auto result = assign_spectrum(default_plan(), topo, demands);
    REQUIRE(result.lightpaths.size() == 1);
    CHECK(result.lightpaths[0].band == BandName::C);
    CHECK(result.lightpaths[0].channel == 0);
    CHECK(result.blocked.empty());
}

TEST_CASE("reach limits push long routes out of short-reach bands") {
    PhysicalTopology topo;
    NodeId a = topo.add_node(Level::HL12, 0);
    NodeId b = topo.add_node(Level::HL3, 0, a);
    topo.add_link(a, b, 120.0);
    SpectrumPlan plan = computed_plan();
    const BandName short_bands[] = {BandName::E, BandName::O};
    plan = restrict_bands(plan, short_bands);
    const std::vector<Demand> demands{Demand{b, a, 3, 1200.0}};
    const auto result = assign_spectrum(plan, topo, demands);
    // O reach is 100 km, E is 150 km: all three land in E.
    REQUIRE(result.lightpaths.size() == 3);
    for (const auto& lp : result.lightpaths) CHECK(lp.band == BandName::E);

    topo.add_link(b, topo.add_node(Level::HL4, 0, b), 100.0);
    const std::vector<Demand> far{Demand{NodeId{2}, a, 1, 400.0}};
    const auto blocked = assign_spectrum(plan, topo, far);
    CHECK(blocked.lightpaths.empty());
    CHECK(blocked.blocked.size() == 1);
}

TEST_CASE("routing ties break towards the smaller node-id sequence") {
    // Square 0-1-3-2-0: two equal routes from 3 to 0, via 1 or via 2.
    PhysicalTopology topo;
    for (int i = 0; i < 4; ++i) topo.add_node(Level::HL3, i);
    topo.add_link(NodeId{0}, NodeId{1}, 10.0);
    topo.add_link(NodeId{1}, NodeId{3}, 10.0);
    topo.add_link(NodeId{3}, NodeId{2}, 10.0);
    topo.add_link(NodeId{2}, NodeId{0}, 10.0);
    CHECK(shortest_route(topo, NodeId{3}, NodeId{0}) == std::vector<NodeId>{NodeId{3}, NodeId{1}, NodeId{0}});

    // Make the 1-3 link long: km routing now prefers the other side.
    PhysicalTopology weighted;
    for (int i = 0; i < 4; ++i) weighted.add_node(Level::HL3, i);
    weighted.add_link(NodeId{0}, NodeId{1}, 10.0);
    weighted.add_link(NodeId{1}, NodeId{3}, 100.0);
    weighted.add_link(NodeId{3}, NodeId{2}, 10.0);
    weighted.add_link(NodeId{2}, NodeId{0}, 10.0);
    CHECK(shortest_route(weighted, NodeId{3}, NodeId{0}, RouteMetric::Length) ==
          std::vector<NodeId>{NodeId{3}, NodeId{2}, NodeId{0}});
    CHECK(shortest_route(weighted, NodeId{3}, NodeId{0}, RouteMetric::Hops) ==
          std::vector<NodeId>{NodeId{3}, NodeId{1}, NodeId{0}});
}

TEST_CASE("structural errors are distinct from blocking") {
    PhysicalTopology topo;
    NodeId a = topo.add_node(Level::HL12, 0);
    NodeId b = topo.add_node(Level::HL3, 0);
    const std::vector<Demand> demands{Demand{b, a, 1, 400.0}};
    CHECK_THROWS_AS(assign_spectrum(default_plan(), topo, demands), RoutingError);
    const std::vector<Demand> unknown{Demand{NodeId{7}, a, 1, 400.0}};
    CHECK_THROWS_AS(assign_spectrum(default_plan(), topo, unknown), RoutingError);
}

TEST_CASE("reference tree continuum fits in the C band") {
    const auto s = reference_scenario();
    const auto topo = generate_topology(s);
    const auto demands = demands_for(ArchitectureKind::OpticalContinuum, s, topo);
    const auto result = assign_spectrum(c_only(), topo, demands);
    CHECK(result.blocked.empty());
    CHECK(result.peak_link_occupancy() == 5);
    for (std::size_t l = 0; l < topo.links().size(); ++l) {
        const Link& link = topo.links()[l];
        const bool backbone = topo.node(link.a).level != Level::HL4 && topo.node(link.b).level != Level::HL4;
        CHECK(result.per_link_peak[l] == (backbone ? 5 : 1));
    }
    CHECK(check_assignment(c_only(), topo, demands, result).empty());

    const auto report = feasibility_report(c_only(), topo, ArchitectureKind::OpticalContinuum, s);
    CHECK(report.feasible);
    CHECK(report.peak_link_occupancy == 5);
    REQUIRE(report.band_utilization.size() == 1);
    CHECK(report.band_utilization[0].used_channels == 5);
    CHECK(report.band_utilization[0].utilization == doctest::Approx(5.0 / 80.0));
}

TEST_CASE("ring overload: blocked under C only, clean with all bands") {
    const auto s = load_scenario(MBPLAN_DATA_DIR "/scenarios/ring_overload.json");
    const auto topo = generate_topology(s);
    const auto demands = demands_for(ArchitectureKind::OpticalContinuum, s, topo);
    CHECK(demands.size() == 150);

    const auto narrow = assign_spectrum(c_only(), topo, demands);
    CHECK(narrow.peak_link_occupancy() == 80);
    CHECK(narrow.blocked.size() == 20);
    CHECK(check_assignment(c_only(), topo, demands, narrow).empty());

    const auto wide = assign_spectrum(default_plan(), topo, demands);
    CHECK(wide.blocked.empty());
    CHECK(wide.peak_link_occupancy() == 100);
    CHECK(check_assignment(default_plan(), topo, demands, wide).empty());

    const auto report = feasibility_report(c_only(), topo, ArchitectureKind::OpticalContinuum, s);
    CHECK_FALSE(report.feasible);
    CHECK(report.blocked_count == 20);
    CHECK(feasibility_report(default_plan(), topo, ArchitectureKind::OpticalContinuum, s).feasible);
}

TEST_CASE("empty demand set is feasible with zero utilization") {
    auto s = reference_scenario();
    s.a4_gbps = 0.0;
    const auto topo = generate_topology(s);
    const auto report = feasibility_report(default_plan(), topo, ArchitectureKind::OpticalContinuum, s);
    CHECK(report.feasible);
    CHECK(report.peak_link_occupancy == 0);
    CHECK(report.band_utilization.size() == 5);
    for (const auto& u : report.band_utilization) CHECK(u.utilization == 0.0);
}

TEST_CASE("property: assignment invariants over random demand sets") {
    std::mt19937_64 rng(0x75a0001);
    int cases = 0;
    for (int trial = 0; trial < 250; ++trial) {
        NetworkScenario s = oracle::random_case(rng, 40).scenario();
        s.topology_kind = trial % 2 ? TopologyKind::Ring : TopologyKind::Tree;
        s.link_length_km = 10.0 + static_cast<double>(rng() % 120);
        const auto topo = generate_topology(s);
        const auto n = static_cast<std::uint32_t>(topo.nodes().size());

        std::vector<Demand> demands;
        const int count = 1 + static_cast<int>(rng() % 60);
        for (int k = 0; k < count; ++k) {
            NodeId src{static_cast<std::uint32_t>(rng() % n)};
            NodeId dst{static_cast<std::uint32_t>(rng() % n)};
            // Tree domains are one component per hub; keep demands within one.
            if (src == dst) continue;
            if (s.topology_kind == TopologyKind::Tree && topo.home_hub(src) != topo.home_hub(dst)) continue;
            demands.push_back(Demand{src, dst, 1 + static_cast<std::int64_t>(rng() % 4), 100.0});
        }
        // Small plans so blocking actually happens.
        SpectrumPlan plan = computed_plan(static_cast<double>(500 + rng() % 3000));
        const RouteMetric metric = rng() % 2 ? RouteMetric::Hops : RouteMetric::Length;
        const auto result = assign_spectrum(plan, topo, demands, metric);
        CAPTURE(trial);
        CHECK(check_assignment(plan, topo, demands, result).empty());
        CHECK(result == assign_spectrum(plan, topo, demands, metric));
        ++cases;
    }
    CHECK(cases >= 200);
}
