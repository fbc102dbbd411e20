#include "mbplan/report.hpp"

#include <iomanip>
#include <map>
#include <sstream>

namespace mbplan {

namespace {

constexpr const char* kCOnlyLabel = "C-only";
constexpr const char* kMultiBandLabel = "multi-band";

std::string pad(const std::string& text, std::size_t width) {
    return text.size() >= width ? text + " " : text + std::string(width - text.size(), ' ');
}

std::string describe(const NetworkScenario& s) {
    std::ostringstream os;
    os << std::setprecision(12) << "h4=" << s.h4 << " h3=" << s.h3 << " h12=" << s.h12 << " a4=" << s.a4_gbps
       << " Gb/s eta=" << s.eta << " C=" << s.channel_rate_gbps << " Gb/s m=" << s.fanout_m
       << " topology=" << to_string(s.topology_kind) << " link=" << s.link_length_km << " km";
    return os.str();
}

nlohmann::json to_json(const ArchitectureCost& c) {
    return nlohmann::json{{"architecture", std::string(to_string(c.kind))},
                          {"transceiver_count", c.transceiver_count},
                          {"transceiver_cost_cu", c.transceiver_cost_cu},
                          {"router_cost_cu", c.router_cost_cu},
                          {"total_cu", c.total_cu}};
}

ArchitectureCost cost_from_json(const nlohmann::json& doc) {
    ArchitectureCost c;
    c.kind = parse_architecture(doc.at("architecture").get<std::string>());
    c.transceiver_count = doc.at("transceiver_count").get<std::int64_t>();
    c.transceiver_cost_cu = doc.at("transceiver_cost_cu").get<double>();
    c.router_cost_cu = doc.at("router_cost_cu").get<double>();
    c.total_cu = doc.at("total_cu").get<double>();
    return c;
}

}  // namespace

const ArchitectureRow* ComparisonReport::row(ArchitectureKind kind) const {
    for (const auto& r : rows) {
        if (r.dimensioning.kind == kind) return &r;
    }
    return nullptr;
}

const SpectrumSummary* ComparisonReport::spectrum_for(ArchitectureKind kind, const std::string& plan_label) const {
    for (const auto& s : spectrum) {
        if (s.kind == kind && s.plan_label == plan_label) return &s;
    }
    return nullptr;
}

const std::vector<std::string>& discrepancy_footnotes() {
    static const std::vector<std::string> notes = {
        "Grooming CAPEX is recomputed from unit prices: transponders x 12 CU plus one 64 CU router per HL3 node. "
        "For the 200/40/5 reference network this is 560 x 12 + 40 x 64 = 9280 CU. The published figure "
        "\"580x12+20x60 = 7728 CU\" does not reproduce: 580 differs from the derived 560, 20 routers at 60 CU "
        "differ from 40 HL3 nodes at 64 CU, and 580x12+20x60 evaluates to 8160.",
        "The grooming closed form (1+2*eta)*(A4/C)*H4 is not the sum of the per-level counts, which is "
        "(2+2*eta)*(A4/C)*H4 before ceilings (300 vs 560 on the reference network). Both are reported as stated.",
        "PtMP: the per-slice formula counts ceil(A4/(C/m))*H4 HL4 modules (600 on the reference network), while "
        "the worked example uses one sliceable module per HL4 and pooled hubs, 200 + 5x30 = 350. Select with "
        "--ptmp-count-mode formula|worked-example.",
        "The published 35-40% combined saving (transponders plus HL3 routers) is indicative only and does not "
        "follow from the stated unit prices.",
    };
    return notes;
}

ComparisonReport build_comparison(const NetworkScenario& scenario, const SpectrumPlan& plan, const CostModel& model,
                                  const CompareOptions& options) {
    const NetworkScenario s = validate(scenario);
    validate_plan(plan);
    validate(model);
    const PhysicalTopology topology = generate_topology(s);

    ComparisonReport report;
    report.scenario = s;

    DimensionOptions dim_options;
    dim_options.ptmp_count_mode = options.ptmp_count_mode;
    dim_options.topology = &topology;
    std::map<ArchitectureKind, DimensioningResult> results;
    for (ArchitectureKind kind : kAllArchitectures) results.emplace(kind, dimension(s, kind, dim_options));

    const CostReport costs = compare(results, model, s);
    for (const auto& [kind, result] : results) {
        report.rows.push_back(ArchitectureRow{result, *costs.find(kind)});
    }
    report.savings = costs.savings;

    std::vector<std::pair<std::string, SpectrumPlan>> plans;
    if (plan.find(BandName::C) != nullptr) {
        const BandName c_band[] = {BandName::C};
        plans.emplace_back(kCOnlyLabel, restrict_bands(plan, c_band));
    }
    plans.emplace_back(kMultiBandLabel, plan);
    for (ArchitectureKind kind : {ArchitectureKind::OpticalContinuum, ArchitectureKind::PtmpPluggable}) {
        for (const auto& [label, p] : plans) {
            report.spectrum.push_back(
                SpectrumSummary{kind, label, feasibility_report(p, topology, kind, s, options.route_metric)});
        }
    }
    if (options.footnotes) report.footnotes = discrepancy_footnotes();
    return report;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const DimensioningResult& r) {
    nlohmann::json doc;
    doc["architecture"] = std::string(to_string(r.kind));
    doc["mode"] = std::string(to_string(r.mode));
    doc["ptmp_count_mode"] = r.ptmp_count_mode ? nlohmann::json(std::string(to_string(*r.ptmp_count_mode)))
                                               : nlohmann::json(nullptr);
    doc["per_level"] = {{"HL4", r.per_level.hl4}, {"HL3", r.per_level.hl3}, {"HL12", r.per_level.hl12}};
    doc["total"] = r.total;
    doc["approximate_total"] = r.approximate_total;
    doc["electronic_hops_per_demand"] = r.electronic_hops_per_demand;
    doc["oeo_terminations_per_demand"] = r.oeo_terminations_per_demand;
    return doc;
}

DimensioningResult dimensioning_result_from_json(const nlohmann::json& doc) {
    DimensioningResult r;
    r.kind = parse_architecture(doc.at("architecture").get<std::string>());
    r.mode = parse_dimensioning_mode(doc.at("mode").get<std::string>());
    if (!doc.at("ptmp_count_mode").is_null()) {
        r.ptmp_count_mode = parse_ptmp_count_mode(doc.at("ptmp_count_mode").get<std::string>());
    }
    const auto& levels = doc.at("per_level");
    r.per_level.hl4 = levels.at("HL4").get<std::int64_t>();
    r.per_level.hl3 = levels.at("HL3").get<std::int64_t>();
    r.per_level.hl12 = levels.at("HL12").get<std::int64_t>();
    r.total = doc.at("total").get<std::int64_t>();
    r.approximate_total = doc.at("approximate_total").get<double>();
    r.electronic_hops_per_demand = doc.at("electronic_hops_per_demand").get<int>();
    r.oeo_terminations_per_demand = doc.at("oeo_terminations_per_demand").get<int>();
    return r;
}

nlohmann::json to_json(const FeasibilityReport& f) {
    nlohmann::json doc;
    doc["feasible"] = f.feasible;
    doc["peak_link_occupancy"] = f.peak_link_occupancy;
    doc["blocked_count"] = f.blocked_count;
    doc["lightpath_count"] = f.lightpath_count;
    doc["band_utilization"] = nlohmann::json::array();
    for (const auto& u : f.band_utilization) {
        doc["band_utilization"].push_back({{"band", std::string(to_string(u.band))},
                                           {"used_channels", u.used_channels},
                                           {"available_channels", u.available_channels},
                                           {"utilization", u.utilization}});
    }
    return doc;
}

FeasibilityReport feasibility_from_json(const nlohmann::json& doc) {
    FeasibilityReport f;
    f.feasible = doc.at("feasible").get<bool>();
    f.peak_link_occupancy = doc.at("peak_link_occupancy").get<std::int64_t>();
    f.blocked_count = doc.at("blocked_count").get<std::int64_t>();
    f.lightpath_count = doc.at("lightpath_count").get<std::int64_t>();
    for (const auto& u : doc.at("band_utilization")) {
        f.band_utilization.push_back(BandUtilization{parse_band_name(u.at("band").get<std::string>()),
                                                     u.at("used_channels").get<std::int64_t>(),
                                                     u.at("available_channels").get<std::int64_t>(),
                                                     u.at("utilization").get<double>()});
    }
    return f;
}

nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json doc;
    doc["scenario"] = to_json(report.scenario);
    doc["architectures"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        doc["architectures"].push_back({{"dimensioning", to_json(row.dimensioning)}, {"cost", to_json(row.cost)}});
    }
    doc["savings"] = nlohmann::json::array();
    for (const auto& s : report.savings) {
        doc["savings"].push_back({{"baseline", std::string(to_string(s.baseline))},
                                  {"alternative", std::string(to_string(s.alternative))},
                                  {"transponder_savings_pct", s.transponder_savings_pct},
                                  {"cost_savings_pct", s.cost_savings_pct}});
    }
    doc["spectrum"] = nlohmann::json::array();
    for (const auto& s : report.spectrum) {
        doc["spectrum"].push_back({{"architecture", std::string(to_string(s.kind))},
                                   {"plan", s.plan_label},
                                   {"feasibility", to_json(s.feasibility)}});
    }
    doc["footnotes"] = report.footnotes;
    return doc;
}

ComparisonReport comparison_from_json(const nlohmann::json& doc) {
    ComparisonReport report;
    report.scenario = scenario_from_json(doc.at("scenario"));
    for (const auto& a : doc.at("architectures")) {
        report.rows.push_back(ArchitectureRow{dimensioning_result_from_json(a.at("dimensioning")), cost_from_json(a.at("cost"))});
    }
    for (const auto& s : doc.at("savings")) {
        report.savings.push_back(PairwiseSavings{parse_architecture(s.at("baseline").get<std::string>()),
                                                 parse_architecture(s.at("alternative").get<std::string>()),
                                                 s.at("transponder_savings_pct").get<double>(),
                                                 s.at("cost_savings_pct").get<double>()});
    }
    for (const auto& s : doc.at("spectrum")) {
        report.spectrum.push_back(SpectrumSummary{parse_architecture(s.at("architecture").get<std::string>()),
                                                  s.at("plan").get<std::string>(),
                                                  feasibility_from_json(s.at("feasibility"))});
    }
    report.footnotes = doc.at("footnotes").get<std::vector<std::string>>();
    return report;
}

// ---------------------------------------------------------------------------
// Text and CSV rendering

std::string format_fixed(double value, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << value;
    return os.str();
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char ch : value) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

void render_dimension_table(std::ostream& out, const std::vector<DimensioningResult>& results) {
    out << pad("architecture", 14) << pad("mode", 8) << pad("ptmp_count", 16) << pad("HL4", 8) << pad("HL3", 8)
        << pad("HL12", 8) << pad("total", 10) << pad("hops", 6) << "oeo\n";
    for (const auto& r : results) {
        const bool exact = r.mode == DimensioningMode::Exact;
        out << pad(std::string(to_string(r.kind)), 14) << pad(std::string(to_string(r.mode)), 8)
            << pad(r.ptmp_count_mode ? std::string(to_string(*r.ptmp_count_mode)) : "-", 16)
            << pad(exact ? std::to_string(r.per_level.hl4) : "-", 8)
            << pad(exact ? std::to_string(r.per_level.hl3) : "-", 8)
            << pad(exact ? std::to_string(r.per_level.hl12) : "-", 8)
            << pad(exact ? std::to_string(r.total) : format_fixed(r.approximate_total), 10)
            << pad(std::to_string(r.electronic_hops_per_demand), 6) << r.oeo_terminations_per_demand << "\n";
    }
}

void render_dimension_csv(std::ostream& out, const std::vector<DimensioningResult>& results) {
    out << kDimensionCsvHeader << "\n";
    for (const auto& r : results) {
        const bool exact = r.mode == DimensioningMode::Exact;
        out << to_string(r.kind) << "," << to_string(r.mode) << ","
            << (r.ptmp_count_mode ? std::string(to_string(*r.ptmp_count_mode)) : "") << ","
            << (exact ? std::to_string(r.per_level.hl4) : "") << ","
            << (exact ? std::to_string(r.per_level.hl3) : "") << ","
            << (exact ? std::to_string(r.per_level.hl12) : "") << ","
            << (exact ? std::to_string(r.total) : format_fixed(r.approximate_total)) << ","
            << r.electronic_hops_per_demand << "," << r.oeo_terminations_per_demand << "\n";
    }
}

void render_comparison_table(std::ostream& out, const ComparisonReport& report) {
    out << "Scenario: " << describe(report.scenario) << "\n\n";
    out << pad("architecture", 14) << pad("HL4", 8) << pad("HL3", 8) << pad("HL12", 8) << pad("total", 8)
        << pad("hops", 6) << pad("oeo", 5) << pad("transceiver_cu", 16) << pad("router_cu", 12) << "total_cu\n";
    for (const auto& row : report.rows) {
        const auto& d = row.dimensioning;
        out << pad(std::string(to_string(d.kind)), 14) << pad(std::to_string(d.per_level.hl4), 8)
            << pad(std::to_string(d.per_level.hl3), 8) << pad(std::to_string(d.per_level.hl12), 8)
            << pad(std::to_string(d.total), 8) << pad(std::to_string(d.electronic_hops_per_demand), 6)
            << pad(std::to_string(d.oeo_terminations_per_demand), 5)
            << pad(format_fixed(row.cost.transceiver_cost_cu), 16) << pad(format_fixed(row.cost.router_cost_cu), 12)
            << format_fixed(row.cost.total_cu) << "\n";
    }

    out << "\nSavings vs grooming:\n";
    for (const auto& s : report.savings) {
        if (s.baseline != ArchitectureKind::GroomingHierarchical) continue;
        out << "  " << pad(std::string(to_string(s.alternative)), 12) << "transponders "
            << pad(format_fixed(s.transponder_savings_pct) + "%", 10) << "capex " << format_fixed(s.cost_savings_pct)
            << "%\n";
    }
    for (const auto& s : report.savings) {
        if (s.baseline == ArchitectureKind::OpticalContinuum && s.alternative == ArchitectureKind::PtmpPluggable) {
            out << "Savings of ptmp vs continuum: transponders " << format_fixed(s.transponder_savings_pct)
                << "%  capex " << format_fixed(s.cost_savings_pct) << "%\n";
        }
    }

    out << "\nSpectrum feasibility:\n";
    for (const auto& s : report.spectrum) {
        out << "  " << pad(std::string(to_string(s.kind)), 12) << pad(s.plan_label, 12)
            << pad(s.feasibility.feasible ? "feasible" : "INFEASIBLE", 12) << "peak "
            << pad(std::to_string(s.feasibility.peak_link_occupancy), 6) << "blocked " << s.feasibility.blocked_count
            << "\n";
    }

    if (!report.footnotes.empty()) {
        out << "\nNotes:\n";
        for (std::size_t i = 0; i < report.footnotes.size(); ++i) {
            out << "  [" << i + 1 << "] " << report.footnotes[i] << "\n";
        }
    }
}

void render_comparison_csv(std::ostream& out, const ComparisonReport& report) {
    out << kCompareCsvHeader << "\n";
    for (const auto& row : report.rows) {
        const auto& d = row.dimensioning;
        std::string transponder_savings;
        std::string cost_savings;
        for (const auto& s : report.savings) {
            if (s.baseline == ArchitectureKind::GroomingHierarchical && s.alternative == d.kind) {
                transponder_savings = format_fixed(s.transponder_savings_pct);
                cost_savings = format_fixed(s.cost_savings_pct);
            }
        }
        out << to_string(d.kind) << "," << d.per_level.hl4 << "," << d.per_level.hl3 << "," << d.per_level.hl12 << ","
            << d.total << "," << format_fixed(row.cost.transceiver_cost_cu) << ","
            << format_fixed(row.cost.router_cost_cu) << "," << format_fixed(row.cost.total_cu) << ","
            << transponder_savings << "," << cost_savings << "\n";
    }
}

void render_feasibility_table(std::ostream& out, ArchitectureKind kind, const SpectrumPlan& plan,
                              const FeasibilityReport& report) {
    out << "architecture: " << to_string(kind) << "\n";
    out << "bands:";
    for (const auto& band : plan.bands) out << " " << to_string(band.name) << "(" << channel_count(plan, band) << ")";
    out << "\n";
    out << "feasible: " << (report.feasible ? "yes" : "no") << "\n";
    out << "lightpaths: " << report.lightpath_count << "\n";
    out << "blocked: " << report.blocked_count << "\n";
    out << "peak link occupancy: " << report.peak_link_occupancy << "\n\n";
    out << pad("band", 6) << pad("used", 8) << pad("available", 11) << "utilization\n";
    for (const auto& u : report.band_utilization) {
        out << pad(std::string(to_string(u.band)), 6) << pad(std::to_string(u.used_channels), 8)
            << pad(std::to_string(u.available_channels), 11) << format_fixed(u.utilization * 100.0) << "%\n";
    }
}

}  // namespace mbplan
