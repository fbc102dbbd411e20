#include "mbplan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "mbplan/costing.hpp"
#include "mbplan/dimensioning.hpp"
#include "mbplan/report.hpp"
#include "mbplan/spectrum.hpp"

namespace mbplan::cli {

namespace {

enum class Format { Table, Csv, Json };

Format parse_format(const std::string& text) {
    if (text == "table") return Format::Table;
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw ConfigError("format", "unknown format '" + text + "' (expected table, csv or json)");
}

RouteMetric parse_route_metric(const std::string& text) {
    if (text == "hops") return RouteMetric::Hops;
    if (text == "km") return RouteMetric::Length;
    throw ConfigError("route-metric", "unknown route metric '" + text + "' (expected hops or km)");
}

std::vector<ArchitectureKind> parse_architectures(const std::vector<std::string>& names) {
    std::vector<ArchitectureKind> kinds;
    for (const auto& name : names) {
        ArchitectureKind kind = parse_architecture(name);
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) kinds.push_back(kind);
    }
    if (kinds.empty()) kinds.assign(std::begin(kAllArchitectures), std::end(kAllArchitectures));
    return kinds;
}

double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw ConfigError("vary", "sweep " + what + " '" + text + "' is not a number");
    }
    return value;
}

std::string format_value(double value) {
    std::ostringstream os;
    os << std::setprecision(12) << value;
    return os.str();
}

struct Inputs {
    std::string scenario_path;
    std::string plan_path;
    std::string costs_path;
    std::string format = "table";
    std::vector<std::string> archs;
    std::string mode = "exact";
    std::string ptmp_count_mode = "worked-example";
    std::string route_metric = "hops";
    std::vector<std::string> bands;
    std::string vary;
    bool no_footnotes = false;
};

SpectrumPlan plan_or_default(const Inputs& in) {
    return in.plan_path.empty() ? default_plan() : load_plan(in.plan_path);
}

CostModel costs_or_default(const Inputs& in) {
    return in.costs_path.empty() ? CostModel{} : load_cost_model(in.costs_path);
}

int cmd_dimension(const Inputs& in, std::ostream& out) {
    const Format format = parse_format(in.format);
    const NetworkScenario scenario = load_scenario(in.scenario_path);
    const auto kinds = parse_architectures(in.archs);
    DimensionOptions options;
    options.mode = parse_dimensioning_mode(in.mode);
    options.ptmp_count_mode = parse_ptmp_count_mode(in.ptmp_count_mode);

    std::optional<PhysicalTopology> topology;
    if (std::find(kinds.begin(), kinds.end(), ArchitectureKind::PtmpPluggable) != kinds.end()) {
        topology = generate_topology(scenario);
        options.topology = &*topology;
    }
    std::vector<DimensioningResult> results;
    for (ArchitectureKind kind : kinds) results.push_back(dimension(scenario, kind, options));

    if (format == Format::Json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : results) doc.push_back(to_json(r));
        out << doc.dump(2) << "\n";
    } else if (format == Format::Csv) {
        render_dimension_csv(out, results);
    } else {
        render_dimension_table(out, results);
    }
    return kExitOk;
}

int cmd_compare(const Inputs& in, std::ostream& out) {
    const Format format = parse_format(in.format);
    const NetworkScenario scenario = load_scenario(in.scenario_path);
    CompareOptions options;
    options.ptmp_count_mode = parse_ptmp_count_mode(in.ptmp_count_mode);
    options.route_metric = parse_route_metric(in.route_metric);
    options.footnotes = !in.no_footnotes;
    const ComparisonReport report = build_comparison(scenario, plan_or_default(in), costs_or_default(in), options);

    if (format == Format::Json) {
        out << to_json(report).dump(2) << "\n";
    } else if (format == Format::Csv) {
        render_comparison_csv(out, report);
    } else {
        render_comparison_table(out, report);
    }
    return kExitOk;
}

int cmd_sweep(const Inputs& in, std::ostream& out) {
    const NetworkScenario base = load_scenario(in.scenario_path);
    const SweepSpec spec = parse_sweep_spec(in.vary);
    const auto kinds = parse_architectures(in.archs);
    const CostModel model = costs_or_default(in);
    DimensionOptions options;
    options.ptmp_count_mode = parse_ptmp_count_mode(in.ptmp_count_mode);
    const bool wants_ptmp =
        std::find(kinds.begin(), kinds.end(), ArchitectureKind::PtmpPluggable) != kinds.end();

    // Evaluate every point before printing so a bad point leaves no partial CSV.
    std::vector<std::string> rows;
    for (double value : sweep_values(spec)) {
        const NetworkScenario s = apply_sweep_value(base, spec.field, value);
        std::optional<PhysicalTopology> topology;
        if (wants_ptmp && options.ptmp_count_mode == PtmpCountMode::WorkedExample) {
            topology = generate_topology(s);
            options.topology = &*topology;
        }
        std::map<ArchitectureKind, ArchitectureCost> row;
        for (ArchitectureKind kind : kinds) row.emplace(kind, cost(dimension(s, kind, options), model, s));
        options.topology = nullptr;

        std::ostringstream line;
        line << csv_field(spec.field) << "," << format_value(value);
        for (ArchitectureKind kind : kAllArchitectures) {
            auto it = row.find(kind);
            if (it == row.end()) {
                line << ",,";
            } else {
                line << "," << it->second.transceiver_count << "," << format_fixed(it->second.total_cu);
            }
        }
        rows.push_back(line.str());
    }
    out << kSweepCsvHeader << "\n";
    for (const auto& line : rows) out << line << "\n";
    return kExitOk;
}

int cmd_spectrum_check(const Inputs& in, std::ostream& out) {
    const Format format = parse_format(in.format);
    const NetworkScenario scenario = load_scenario(in.scenario_path);
    if (in.archs.size() > 1) throw ConfigError("arch", "spectrum-check takes a single architecture");
    const ArchitectureKind kind = in.archs.empty() ? ArchitectureKind::OpticalContinuum : parse_architecture(in.archs.front());
    SpectrumPlan plan = plan_or_default(in);
    if (!in.bands.empty()) {
        std::vector<BandName> names;
        for (const auto& b : in.bands) names.push_back(parse_band_name(b));
        plan = restrict_bands(plan, names);
    }
    const PhysicalTopology topology = generate_topology(scenario);
    const FeasibilityReport report =
        feasibility_report(plan, topology, kind, scenario, parse_route_metric(in.route_metric));

    if (format == Format::Json) {
        nlohmann::json doc = to_json(report);
        doc["architecture"] = std::string(to_string(kind));
        out << doc.dump(2) << "\n";
    } else if (format == Format::Csv) {
        out << "band,used_channels,available_channels,utilization_pct,feasible,peak_link_occupancy,blocked_count\n";
        for (const auto& u : report.band_utilization) {
            out << to_string(u.band) << "," << u.used_channels << "," << u.available_channels << ","
                << format_fixed(u.utilization * 100.0) << "," << (report.feasible ? "true" : "false") << ","
                << report.peak_link_occupancy << "," << report.blocked_count << "\n";
        }
    } else {
        render_feasibility_table(out, kind, plan, report);
    }
    return kExitOk;
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("vary", "sweep spec must look like field=start:stop:step");
    SweepSpec spec;
    spec.field = std::string(text.substr(0, eq));
    static const char* const kFields[] = {"a4_gbps", "eta", "h4", "fanout_m"};
    if (std::none_of(std::begin(kFields), std::end(kFields), [&](const char* f) { return spec.field == f; })) {
        throw ConfigError("vary", "cannot sweep field '" + spec.field + "' (expected a4_gbps, eta, h4 or fanout_m)");
    }
    std::vector<std::string> parts;
    std::string rest(text.substr(eq + 1));
    std::size_t start = 0;
    while (true) {
        auto colon = rest.find(':', start);
        parts.push_back(rest.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 3) throw ConfigError("vary", "sweep range must be start:stop:step");
    spec.start = parse_number(parts[0], "start");
    spec.stop = parse_number(parts[1], "stop");
    spec.step = parse_number(parts[2], "step");
    if (!(spec.step > 0.0)) throw ConfigError("vary", "sweep step must be positive");
    if (spec.stop < spec.start) throw ConfigError("vary", "sweep stop must not be below start");
    return spec;
}

std::vector<double> sweep_values(const SweepSpec& spec) {
    const auto count = static_cast<std::int64_t>(std::floor((spec.stop - spec.start) / spec.step + 1e-9)) + 1;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        double v = spec.start + static_cast<double>(i) * spec.step;
        // Snap accumulated noise (0.30000000000000004) back onto the 12-digit grid.
        v = std::stod(format_value(v));
        values.push_back(v);
    }
    return values;
}

NetworkScenario apply_sweep_value(const NetworkScenario& base, const std::string& field, double value) {
    NetworkScenario s = base;
    auto as_count = [&](const char* name) {
        if (std::abs(value - std::round(value)) > 1e-9) {
            throw ConfigError(name, std::string("swept field '") + name + "' needs integer values, got " + format_value(value));
        }
        return static_cast<std::int64_t>(std::round(value));
    };
    if (field == "a4_gbps") s.a4_gbps = value;
    else if (field == "eta") s.eta = value;
    else if (field == "h4") s.h4 = as_count("h4");
    else if (field == "fanout_m") s.fanout_m = as_count("fanout_m");
    else throw ConfigError("vary", "cannot sweep field '" + field + "'");
    return validate(s);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-band transport planning: dimensioning, spectrum feasibility and CAPEX comparison", "mbplan"};
    app.require_subcommand(1);
    Inputs in;

    auto add_scenario = [&](CLI::App* sub) {
        sub->add_option("scenario", in.scenario_path, "Scenario JSON file")->required();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", in.format, "table, csv or json")->capture_default_str();
    };

    auto* dim = app.add_subcommand("dimension", "Transceiver counts for one or more architectures");
    add_scenario(dim);
    dim->add_option("--arch", in.archs, "grooming, continuum, ptmp (comma separated; default all)")->delimiter(',');
    dim->add_option("--mode", in.mode, "exact or approx")->capture_default_str();
    dim->add_option("--ptmp-count-mode", in.ptmp_count_mode, "formula or worked-example")->capture_default_str();
    add_format(dim);

    auto* cmp = app.add_subcommand("compare", "Dimension, cost and spectrum-check all architectures");
    add_scenario(cmp);
    cmp->add_option("--plan", in.plan_path, "Spectrum plan JSON (default: shipped declared plan)");
    cmp->add_option("--costs", in.costs_path, "Cost model JSON (default: shipped unit prices)");
    cmp->add_option("--ptmp-count-mode", in.ptmp_count_mode, "formula or worked-example")->capture_default_str();
    cmp->add_option("--route-metric", in.route_metric, "hops or km")->capture_default_str();
    cmp->add_flag("--no-footnotes", in.no_footnotes, "Omit the notes on non-reproducible published figures");
    add_format(cmp);

    auto* swp = app.add_subcommand("sweep", "CSV of totals and costs over a parameter range");
    add_scenario(swp);
    swp->add_option("--vary", in.vary, "field=start:stop:step (a4_gbps, eta, h4, fanout_m)")->required();
    swp->add_option("--arch", in.archs, "architectures (comma separated; default all)")->delimiter(',');
    swp->add_option("--costs", in.costs_path, "Cost model JSON");
    swp->add_option("--ptmp-count-mode", in.ptmp_count_mode, "formula or worked-example")->capture_default_str();

    auto* spc = app.add_subcommand("spectrum-check", "Routing and spectrum assignment feasibility");
    add_scenario(spc);
    spc->add_option("--plan", in.plan_path, "Spectrum plan JSON");
    spc->add_option("--arch", in.archs, "grooming, continuum or ptmp (default continuum)");
    spc->add_option("--bands", in.bands, "Subset of bands to use, e.g. C or C,L")->delimiter(',');
    spc->add_option("--route-metric", in.route_metric, "hops or km")->capture_default_str();
    add_format(spc);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (dim->parsed()) return cmd_dimension(in, out);
        if (cmp->parsed()) return cmd_compare(in, out);
        if (swp->parsed()) return cmd_sweep(in, out);
        if (spc->parsed()) return cmd_spectrum_check(in, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    err << "error: no command given\n";
    return kExitInvalid;
}

}  // namespace mbplan::cli
