#include "mbplan/costing.hpp"

#include <cmath>
#include <stdexcept>

namespace mbplan {

void validate(const CostModel& model) {
    auto check = [](double value, const char* field) {
        if (!std::isfinite(value) || value < 0.0) {
            throw ConfigError(field, std::string("cost field '") + field + "' must be a non-negative number");
        }
    };
    check(model.transponder_cu, "transponder_cu");
    check(model.ptmp_module_cu, "ptmp_module_cu");
    check(model.router_large_cu, "router_large_cu");
    if (model.routers_per_hl3 < 0) throw ConfigError("routers_per_hl3", "routers_per_hl3 must be non-negative");
}

double savings_pct(double baseline, double alternative) {
    if (baseline == 0.0) return 0.0;
    return (baseline - alternative) / baseline * 100.0;
}

ArchitectureCost cost(const DimensioningResult& result, const CostModel& model, const NetworkScenario& scenario) {
    if (result.mode != DimensioningMode::Exact) {
        throw std::invalid_argument("costing needs an exact dimensioning result");
    }
    ArchitectureCost c;
    c.kind = result.kind;
    c.transceiver_count = result.total;
    const double unit = result.kind == ArchitectureKind::PtmpPluggable ? model.ptmp_module_cu : model.transponder_cu;
    c.transceiver_cost_cu = static_cast<double>(result.total) * unit;
    if (result.kind == ArchitectureKind::GroomingHierarchical) {
        c.router_cost_cu = static_cast<double>(scenario.h3 * model.routers_per_hl3) * model.router_large_cu;
    }
    c.total_cu = c.transceiver_cost_cu + c.router_cost_cu;
    return c;
}

const ArchitectureCost* CostReport::find(ArchitectureKind kind) const {
    for (const auto& c : costs) {
        if (c.kind == kind) return &c;
    }
    return nullptr;
}

const PairwiseSavings* CostReport::find(ArchitectureKind baseline, ArchitectureKind alternative) const {
    for (const auto& s : savings) {
        if (s.baseline == baseline && s.alternative == alternative) return &s;
    }
    return nullptr;
}

CostReport compare(const std::map<ArchitectureKind, DimensioningResult>& results, const CostModel& model,
                   const NetworkScenario& scenario) {
    if (results.size() < 2) throw std::invalid_argument("compare needs at least two architectures");
    CostReport report;
    for (const auto& [kind, result] : results) report.costs.push_back(cost(result, model, scenario));
    for (const auto& a : report.costs) {
        for (const auto& b : report.costs) {
            if (a.kind == b.kind) continue;
            report.savings.push_back(PairwiseSavings{
                a.kind, b.kind,
                savings_pct(static_cast<double>(a.transceiver_count), static_cast<double>(b.transceiver_count)),
                savings_pct(a.total_cu, b.total_cu)});
        }
    }
    return report;
}

nlohmann::json to_json(const CostModel& model) {
    return nlohmann::json{{"transponder_cu", model.transponder_cu},
                          {"ptmp_module_cu", model.ptmp_module_cu},
                          {"router_large_cu", model.router_large_cu},
                          {"routers_per_hl3", model.routers_per_hl3}};
}

CostModel cost_model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("", "cost model must be a JSON object");
    CostModel model;
    for (const auto& item : doc.items()) {
        const std::string& key = item.key();
        const auto& value = item.value();
        if (key == "routers_per_hl3") {
            if (!value.is_number_integer()) throw ConfigError(key, "field 'routers_per_hl3' must be an integer");
            model.routers_per_hl3 = value.get<std::int64_t>();
            continue;
        }
        double* target = key == "transponder_cu"    ? &model.transponder_cu
                         : key == "ptmp_module_cu"  ? &model.ptmp_module_cu
                         : key == "router_large_cu" ? &model.router_large_cu
                                                    : nullptr;
        if (target == nullptr) throw ConfigError(key, "unknown cost model field '" + key + "'");
        if (!value.is_number()) throw ConfigError(key, "field '" + key + "' must be a number");
        *target = value.get<double>();
    }
    validate(model);
    return model;
}

CostModel load_cost_model(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return cost_model_from_json(parse_json_text(text, "cost model"));
    } catch (const ConfigError& e) {
        throw ConfigError(e.field(), path.string() + ": " + e.what());
    }
}

}  // namespace mbplan
