#ifndef MBPLAN_DIMENSIONING_HPP
#define MBPLAN_DIMENSIONING_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mbplan/scenario.hpp"

namespace mbplan {

enum class ArchitectureKind { GroomingHierarchical, OpticalContinuum, PtmpPluggable };

inline constexpr ArchitectureKind kAllArchitectures[] = {
    ArchitectureKind::GroomingHierarchical,
    ArchitectureKind::OpticalContinuum,
    ArchitectureKind::PtmpPluggable,
};

enum class DimensioningMode { Exact, Approximate };

/// How PtMP modules are counted.
///   Formula:       one module per m-slice at HL4, slices / m at the hubs.
///   WorkedExample: one full-rate sliceable module per HL4 (ceil(A4/C)), and
///                  hubs pool the downstream traffic of their HL4 nodes.
enum class PtmpCountMode { Formula, WorkedExample };

std::string_view to_string(ArchitectureKind kind);
std::string_view to_string(DimensioningMode mode);
std::string_view to_string(PtmpCountMode mode);
ArchitectureKind parse_architecture(std::string_view text);
DimensioningMode parse_dimensioning_mode(std::string_view text);
PtmpCountMode parse_ptmp_count_mode(std::string_view text);

struct LevelCounts {
    std::int64_t hl4 = 0;
    std::int64_t hl3 = 0;
    std::int64_t hl12 = 0;

    std::int64_t sum() const noexcept { return hl4 + hl3 + hl12; }
    bool operator==(const LevelCounts&) const = default;
};

/// Transceiver counts for one architecture.
///
/// In Exact mode `per_level` holds integral counts and `total` their sum;
/// `approximate_total` mirrors `total`. In Approximate mode only
/// `approximate_total` is meaningful (closed-form real, no ceilings) and the
/// integer fields stay zero.
struct DimensioningResult {
    ArchitectureKind kind = ArchitectureKind::GroomingHierarchical;
    DimensioningMode mode = DimensioningMode::Exact;
    LevelCounts per_level;
    std::int64_t total = 0;
    double approximate_total = 0.0;
    std::optional<PtmpCountMode> ptmp_count_mode;
    int electronic_hops_per_demand = 0;
    int oeo_terminations_per_demand = 0;

    bool operator==(const DimensioningResult&) const = default;
};

/// Ceiling that ignores floating noise below a 1e-9 relative margin, so
/// 5 * 0.1 * 800 / 400 counts as exactly 1.
std::int64_t ceil_count(double value);

DimensioningResult dimension_grooming_exact(const NetworkScenario& s);
DimensioningResult dimension_grooming_approx(const NetworkScenario& s);
DimensioningResult dimension_continuum_exact(const NetworkScenario& s);
DimensioningResult dimension_continuum_approx(const NetworkScenario& s);

/// WorkedExample mode needs the topology for the HL4 -> hub attachment and
/// throws std::invalid_argument when `topology` is null.
DimensioningResult dimension_ptmp(const NetworkScenario& s, PtmpCountMode count_mode,
                                  const PhysicalTopology* topology = nullptr);
DimensioningResult dimension_ptmp_approx(const NetworkScenario& s);

struct DimensionOptions {
    DimensioningMode mode = DimensioningMode::Exact;
    PtmpCountMode ptmp_count_mode = PtmpCountMode::WorkedExample;
    const PhysicalTopology* topology = nullptr;
};

DimensioningResult dimension(const NetworkScenario& s, ArchitectureKind kind, const DimensionOptions& options = {});

/// Per-node interface needs of the three any-to-any connectivity solutions
/// over `nodes` routers: full mesh, hierarchical grooming through a transit
/// router, and PtMP modules with 1:m fanout.
struct ConnectivityInterfaces {
    std::int64_t full_mesh_per_node = 0;
    std::int64_t full_mesh_channels = 0;
    std::int64_t hierarchical_per_node = 0;
    std::int64_t ptmp_per_node = 0;
};

ConnectivityInterfaces connectivity_interfaces(std::int64_t nodes, std::int64_t fanout_m);

}  // namespace mbplan

#endif  // MBPLAN_DIMENSIONING_HPP
