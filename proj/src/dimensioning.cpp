#include "mbplan/dimensioning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mbplan {

namespace {

constexpr double kCeilRelativeTolerance = 1e-9;

DimensioningResult make_exact(ArchitectureKind kind, LevelCounts counts) {
    DimensioningResult r;
    r.kind = kind;
    r.mode = DimensioningMode::Exact;
    r.per_level = counts;
    r.total = counts.sum();
    r.approximate_total = static_cast<double>(r.total);
    return r;
}

DimensioningResult make_approx(ArchitectureKind kind, double total) {
    DimensioningResult r;
    r.kind = kind;
    r.mode = DimensioningMode::Approximate;
    r.approximate_total = total;
    return r;
}

void set_grooming_hops(DimensioningResult& r) {
    // One HL3 router between HL4 and HL1/2: one electronic stage, O/E at
    // ingress and E/O at egress.
    r.electronic_hops_per_demand = 1;
    r.oeo_terminations_per_demand = 2;
}

}  // namespace

std::string_view to_string(ArchitectureKind kind) {
    switch (kind) {
        case ArchitectureKind::GroomingHierarchical: return "grooming";
        case ArchitectureKind::OpticalContinuum: return "continuum";
        case ArchitectureKind::PtmpPluggable: return "ptmp";
    }
    return "?";
}

std::string_view to_string(DimensioningMode mode) {
    return mode == DimensioningMode::Exact ? "exact" : "approx";
}

std::string_view to_string(PtmpCountMode mode) {
    return mode == PtmpCountMode::Formula ? "formula" : "worked-example";
}

ArchitectureKind parse_architecture(std::string_view text) {
    if (text == "grooming") return ArchitectureKind::GroomingHierarchical;
    if (text == "continuum") return ArchitectureKind::OpticalContinuum;
    if (text == "ptmp") return ArchitectureKind::PtmpPluggable;
    throw ConfigError("arch", "unknown architecture '" + std::string(text) + "' (expected grooming, continuum or ptmp)");
}

DimensioningMode parse_dimensioning_mode(std::string_view text) {
    if (text == "exact") return DimensioningMode::Exact;
    if (text == "approx" || text == "approximate") return DimensioningMode::Approximate;
    throw ConfigError("mode", "unknown mode '" + std::string(text) + "' (expected exact or approx)");
}

PtmpCountMode parse_ptmp_count_mode(std::string_view text) {
    if (text == "formula") return PtmpCountMode::Formula;
    if (text == "worked-example") return PtmpCountMode::WorkedExample;
    throw ConfigError("ptmp-count-mode",
                      "unknown PtMP count mode '" + std::string(text) + "' (expected formula or worked-example)");
}

std::int64_t ceil_count(double value) {
    if (!(value > 0.0)) return 0;
    const double nearest = std::round(value);
    if (std::abs(value - nearest) <= kCeilRelativeTolerance * std::max(1.0, std::abs(value))) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::ceil(value));
}

DimensioningResult dimension_grooming_exact(const NetworkScenario& s) {
    const double rate = s.channel_rate_gbps;
    const std::int64_t per_hl4 = ceil_count(s.a4_gbps / rate);
    // Each HL3 grooms H4/H3 HL4 nodes and provisions eta of their traffic upward.
    const std::int64_t per_hl3_uplink =
        ceil_count(static_cast<double>(s.h4) * s.eta * s.a4_gbps / (static_cast<double>(s.h3) * rate));

    LevelCounts counts;
    counts.hl4 = per_hl4 * s.h4;
    counts.hl3 = per_hl4 * s.h4 + per_hl3_uplink * s.h3;
    counts.hl12 = per_hl3_uplink * s.h3;
    auto r = make_exact(ArchitectureKind::GroomingHierarchical, counts);
    set_grooming_hops(r);
    return r;
}

DimensioningResult dimension_grooming_approx(const NetworkScenario& s) {
    auto r = make_approx(ArchitectureKind::GroomingHierarchical,
                         (1.0 + 2.0 * s.eta) * (s.a4_gbps / s.channel_rate_gbps) * static_cast<double>(s.h4));
    set_grooming_hops(r);
    return r;
}

DimensioningResult dimension_continuum_exact(const NetworkScenario& s) {
    const std::int64_t per_hl4 = ceil_count(s.a4_gbps / s.channel_rate_gbps);
    LevelCounts counts;
    counts.hl4 = per_hl4 * s.h4;
    counts.hl12 = per_hl4 * s.h4;
    return make_exact(ArchitectureKind::OpticalContinuum, counts);
}

DimensioningResult dimension_continuum_approx(const NetworkScenario& s) {
    return make_approx(ArchitectureKind::OpticalContinuum,
                       2.0 * (s.a4_gbps / s.channel_rate_gbps) * static_cast<double>(s.h4));
}

DimensioningResult dimension_ptmp(const NetworkScenario& s, PtmpCountMode count_mode, const PhysicalTopology* topology) {
    const std::int64_t m = s.fanout_m;
    LevelCounts counts;
    if (count_mode == PtmpCountMode::Formula) {
        const std::int64_t slices_per_hl4 = ceil_count(s.a4_gbps * static_cast<double>(m) / s.channel_rate_gbps);
        const std::int64_t hl4_slices = slices_per_hl4 * s.h4;
        counts.hl4 = hl4_slices;
        counts.hl12 = (hl4_slices + m - 1) / m;
    } else {
        if (topology == nullptr) {
            throw std::invalid_argument("PtMP worked-example counting needs the scenario topology");
        }
        const auto hl4_nodes = topology->nodes_at(Level::HL4);
        if (static_cast<std::int64_t>(hl4_nodes.size()) != s.h4) {
            throw std::invalid_argument("topology HL4 count does not match the scenario");
        }
        counts.hl4 = ceil_count(s.a4_gbps / s.channel_rate_gbps) * s.h4;

        std::map<NodeId, std::int64_t> homed;
        for (NodeId id : hl4_nodes) {
            auto hub = topology->home_hub(id);
            if (!hub) throw std::invalid_argument("HL4 node without an HL12 home in topology");
            ++homed[*hub];
        }
        for (const auto& [hub, count] : homed) {
            counts.hl12 += ceil_count(static_cast<double>(count) * s.a4_gbps / s.channel_rate_gbps);
        }
    }
    auto r = make_exact(ArchitectureKind::PtmpPluggable, counts);
    r.ptmp_count_mode = count_mode;
    return r;
}

DimensioningResult dimension_ptmp_approx(const NetworkScenario& s) {
    const double m = static_cast<double>(s.fanout_m);
    auto r = make_approx(ArchitectureKind::PtmpPluggable,
                         s.a4_gbps / (s.channel_rate_gbps / m) * static_cast<double>(s.h4) * (1.0 + 1.0 / m));
    r.ptmp_count_mode = PtmpCountMode::Formula;
    return r;
}

DimensioningResult dimension(const NetworkScenario& s, ArchitectureKind kind, const DimensionOptions& options) {
    const bool exact = options.mode == DimensioningMode::Exact;
    switch (kind) {
        case ArchitectureKind::GroomingHierarchical:
            return exact ? dimension_grooming_exact(s) : dimension_grooming_approx(s);
        case ArchitectureKind::OpticalContinuum:
            return exact ? dimension_continuum_exact(s) : dimension_continuum_approx(s);
        case ArchitectureKind::PtmpPluggable:
            return exact ? dimension_ptmp(s, options.ptmp_count_mode, options.topology) : dimension_ptmp_approx(s);
    }
    throw std::logic_error("unhandled architecture kind");
}

ConnectivityInterfaces connectivity_interfaces(std::int64_t nodes, std::int64_t fanout_m) {
    if (nodes < 1) throw std::invalid_argument("connectivity_interfaces: nodes must be positive");
    if (fanout_m < 1) throw std::invalid_argument("connectivity_interfaces: fanout must be positive");
    ConnectivityInterfaces c;
    const std::int64_t peers = nodes - 1;
    c.full_mesh_per_node = peers;
    c.full_mesh_channels = nodes * peers / 2;
    c.hierarchical_per_node = peers > 0 ? 1 : 0;
    c.ptmp_per_node = (peers + fanout_m - 1) / fanout_m;
    return c;
}

}  // namespace mbplan
