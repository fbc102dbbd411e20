#ifndef MBPLAN_COSTING_HPP
#define MBPLAN_COSTING_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "mbplan/dimensioning.hpp"
#include "mbplan/scenario.hpp"

namespace mbplan {

/// Unit prices in normalized cost units (CU).
struct CostModel {
    double transponder_cu = 12.0;
    double ptmp_module_cu = 12.0;
    double router_large_cu = 64.0;
    std::int64_t routers_per_hl3 = 1;

    bool operator==(const CostModel&) const = default;
};

void validate(const CostModel& model);

struct ArchitectureCost {
    ArchitectureKind kind = ArchitectureKind::GroomingHierarchical;
    std::int64_t transceiver_count = 0;
    double transceiver_cost_cu = 0.0;
    double router_cost_cu = 0.0;
    double total_cu = 0.0;

    bool operator==(const ArchitectureCost&) const = default;
};

/// Relative saving of `alternative` over `baseline`, in percent. A zero
/// baseline yields 0.
double savings_pct(double baseline, double alternative);

/// CAPEX of one exact dimensioning result. Throws std::invalid_argument for
/// approximate results, which carry no integral hardware count.
ArchitectureCost cost(const DimensioningResult& result, const CostModel& model, const NetworkScenario& scenario);

struct PairwiseSavings {
    ArchitectureKind baseline = ArchitectureKind::GroomingHierarchical;
    ArchitectureKind alternative = ArchitectureKind::OpticalContinuum;
    double transponder_savings_pct = 0.0;
    double cost_savings_pct = 0.0;

    bool operator==(const PairwiseSavings&) const = default;
};

struct CostReport {
    std::vector<ArchitectureCost> costs;      // in ArchitectureKind order
    std::vector<PairwiseSavings> savings;     // every ordered pair of distinct kinds

    const ArchitectureCost* find(ArchitectureKind kind) const;
    const PairwiseSavings* find(ArchitectureKind baseline, ArchitectureKind alternative) const;
    bool operator==(const CostReport&) const = default;
};

/// Needs at least two architectures; throws std::invalid_argument otherwise.
CostReport compare(const std::map<ArchitectureKind, DimensioningResult>& results, const CostModel& model,
                   const NetworkScenario& scenario);

nlohmann::json to_json(const CostModel& model);
CostModel cost_model_from_json(const nlohmann::json& document);
CostModel load_cost_model(const std::filesystem::path& path);

}  // namespace mbplan

#endif  // MBPLAN_COSTING_HPP
