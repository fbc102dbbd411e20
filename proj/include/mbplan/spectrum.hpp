#ifndef MBPLAN_SPECTRUM_HPP
#define MBPLAN_SPECTRUM_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mbplan/dimensioning.hpp"
#include "mbplan/scenario.hpp"

namespace mbplan {

/// Speed of light in nm * THz.
inline constexpr double kSpeedOfLightNmThz = 299792.458;

double frequency_thz(double wavelength_nm);
double wavelength_nm(double frequency_thz);

enum class BandName { O, E, S, C, L };

std::string_view to_string(BandName name);
BandName parse_band_name(std::string_view text);

struct Band {
    BandName name = BandName::C;
    double lambda_min_nm = 0.0;
    double lambda_max_nm = 0.0;
    std::optional<double> reach_limit_km;          // nullopt: unlimited
    std::optional<std::int64_t> channel_count_declared;

    bool operator==(const Band&) const = default;
};

/// Optical width of a band, c * (1/lambda_min - 1/lambda_max), in THz.
double band_width_thz(const Band& band);

enum class ChannelCountMode { Computed, Declared };

/// Bands are kept in assignment preference order.
struct SpectrumPlan {
    std::vector<Band> bands;
    double grid_spacing_ghz = 50.0;
    ChannelCountMode mode = ChannelCountMode::Declared;

    const Band* find(BandName name) const;
    bool operator==(const SpectrumPlan&) const = default;
};

/// O..L with default edges (1260/1360/1460/1530/1565/1625 nm) and reach
/// limits (O 100 km, E 150 km, S 500 km, C and L unlimited), in C, L, S, E, O
/// preference order.
std::vector<Band> default_bands();

/// Declared mode with the shipped channel table: C 80, L 120, S 156,
/// E 252, O 292 (900 in total). Only the C count and the total are
/// published values; the split of the other 820 is derived (L fixed, E/S/O
/// proportional to their widths, largest remainder).
SpectrumPlan default_plan();

/// Same bands, channels from the grid: floor(width / spacing).
SpectrumPlan computed_plan(double grid_spacing_ghz = 50.0);

/// Keeps only the named bands, preserving preference order. Throws
/// ConfigError for a name absent from the plan.
SpectrumPlan restrict_bands(const SpectrumPlan& plan, std::span<const BandName> names);

std::int64_t channel_count(const SpectrumPlan& plan, const Band& band);
std::int64_t total_channels(const SpectrumPlan& plan);

/// Band edges, uniqueness, non-overlap, grid and declared counts.
void validate_plan(const SpectrumPlan& plan);

nlohmann::json to_json(const SpectrumPlan& plan);
SpectrumPlan plan_from_json(const nlohmann::json& document);
SpectrumPlan load_plan(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Routing and spectrum assignment

/// A request for `channels` wavelengths between two nodes carrying
/// `rate_gbps` of traffic.
struct Demand {
    NodeId source{};
    NodeId destination{};
    std::int64_t channels = 1;
    double rate_gbps = 0.0;

    bool operator==(const Demand&) const = default;
};

std::vector<Demand> demands_for(ArchitectureKind arch, const NetworkScenario& scenario, const PhysicalTopology& topology);

struct Lightpath {
    NodeId source{};
    NodeId destination{};
    std::vector<LinkId> route;
    BandName band = BandName::C;
    std::int64_t channel = 0;
    double rate_gbps = 0.0;

    bool operator==(const Lightpath&) const = default;
};

struct Assignment {
    std::vector<Lightpath> lightpaths;
    std::vector<Demand> blocked;              // one entry per blocked channel
    std::vector<std::int64_t> per_link_peak;  // occupied channels, indexed by LinkId

    std::int64_t peak_link_occupancy() const;
    bool operator==(const Assignment&) const = default;
};

enum class RouteMetric { Hops, Length };

/// Destination unreachable or unknown node: a structural problem, distinct
/// from running out of spectrum.
class RoutingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest route from `source` to `destination` as a node sequence. Ties
/// are broken towards the lexicographically smallest node-id sequence.
std::vector<NodeId> shortest_route(const PhysicalTopology& topology, NodeId source, NodeId destination,
                                   RouteMetric metric = RouteMetric::Hops);

/// First-fit assignment in demand order: shortest route, first band in
/// preference order whose reach covers the route, lowest channel free on
/// every link of the route. No wavelength conversion.
Assignment assign_spectrum(const SpectrumPlan& plan, const PhysicalTopology& topology, std::span<const Demand> demands,
                           RouteMetric metric = RouteMetric::Hops);

struct BandUtilization {
    BandName band = BandName::C;
    std::int64_t used_channels = 0;       // distinct channel indices in use
    std::int64_t available_channels = 0;
    double utilization = 0.0;

    bool operator==(const BandUtilization&) const = default;
};

struct FeasibilityReport {
    bool feasible = true;
    std::int64_t peak_link_occupancy = 0;
    std::int64_t blocked_count = 0;
    std::int64_t lightpath_count = 0;
    std::vector<BandUtilization> band_utilization;

    bool operator==(const FeasibilityReport&) const = default;
};

FeasibilityReport summarize(const SpectrumPlan& plan, const Assignment& assignment);

FeasibilityReport feasibility_report(const SpectrumPlan& plan, const PhysicalTopology& topology, ArchitectureKind arch,
                                     const NetworkScenario& scenario, RouteMetric metric = RouteMetric::Hops);

}  // namespace mbplan

#endif  // MBPLAN_SPECTRUM_HPP
