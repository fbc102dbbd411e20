#ifndef MBPLAN_REPORT_HPP
#define MBPLAN_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbplan/costing.hpp"
#include "mbplan/dimensioning.hpp"
#include "mbplan/scenario.hpp"
#include "mbplan/spectrum.hpp"

namespace mbplan {

struct ArchitectureRow {
    DimensioningResult dimensioning;
    ArchitectureCost cost;

    bool operator==(const ArchitectureRow&) const = default;
};

struct SpectrumSummary {
    ArchitectureKind kind = ArchitectureKind::OpticalContinuum;
    std::string plan_label;  // "C-only" or "multi-band"
    FeasibilityReport feasibility;

    bool operator==(const SpectrumSummary&) const = default;
};

/// Everything `compare` prints, in a form that survives a JSON round trip.
struct ComparisonReport {
    NetworkScenario scenario;
    std::vector<ArchitectureRow> rows;
    std::vector<PairwiseSavings> savings;
    std::vector<SpectrumSummary> spectrum;
    std::vector<std::string> footnotes;

    const ArchitectureRow* row(ArchitectureKind kind) const;
    const SpectrumSummary* spectrum_for(ArchitectureKind kind, const std::string& plan_label) const;
    bool operator==(const ComparisonReport&) const = default;
};

/// Fixed notes on the published reference figures that do not reproduce.
const std::vector<std::string>& discrepancy_footnotes();

struct CompareOptions {
    PtmpCountMode ptmp_count_mode = PtmpCountMode::WorkedExample;
    RouteMetric route_metric = RouteMetric::Hops;
    bool footnotes = true;
};

/// Dimensions all three architectures (exact), costs them and checks the
/// spectrum of continuum and PtMP under a C-only restriction of `plan` (when
/// it has a C band) and under the full plan.
ComparisonReport build_comparison(const NetworkScenario& scenario, const SpectrumPlan& plan, const CostModel& model,
                                  const CompareOptions& options = {});

nlohmann::json to_json(const DimensioningResult& result);
DimensioningResult dimensioning_result_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const FeasibilityReport& report);
FeasibilityReport feasibility_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ComparisonReport& report);
ComparisonReport comparison_from_json(const nlohmann::json& doc);

std::string format_fixed(double value, int decimals = 2);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& value);

inline constexpr const char* kDimensionCsvHeader =
    "architecture,mode,ptmp_count_mode,hl4,hl3,hl12,total,electronic_hops_per_demand,oeo_terminations_per_demand";
inline constexpr const char* kSweepCsvHeader =
    "field,value,grooming_total,grooming_cost_cu,continuum_total,continuum_cost_cu,ptmp_total,ptmp_cost_cu";
inline constexpr const char* kCompareCsvHeader =
    "architecture,hl4,hl3,hl12,total,transceiver_cost_cu,router_cost_cu,total_cu,transponder_savings_pct,cost_savings_pct";

void render_dimension_table(std::ostream& out, const std::vector<DimensioningResult>& results);
void render_dimension_csv(std::ostream& out, const std::vector<DimensioningResult>& results);
void render_comparison_table(std::ostream& out, const ComparisonReport& report);
void render_comparison_csv(std::ostream& out, const ComparisonReport& report);
void render_feasibility_table(std::ostream& out, ArchitectureKind kind, const SpectrumPlan& plan,
                              const FeasibilityReport& report);

}  // namespace mbplan

#endif  // MBPLAN_REPORT_HPP
