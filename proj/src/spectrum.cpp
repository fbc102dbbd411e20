#include "mbplan/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace mbplan {

namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct DeclaredCount {
    BandName name;
    std::int64_t channels;
};

// Only C = 80 and the 900 total are published; the rest is derived.
constexpr DeclaredCount kDeclaredChannels[] = {
    {BandName::C, 80}, {BandName::L, 120}, {BandName::S, 156}, {BandName::E, 252}, {BandName::O, 292},
};

double link_weight(const Link& link, RouteMetric metric) {
    return metric == RouteMetric::Hops ? 1.0 : link.length_km;
}

bool same_distance(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// Distance of every node to `destination`.
std::vector<double> distances_to(const PhysicalTopology& topo, NodeId destination, RouteMetric metric) {
    std::vector<double> dist(topo.nodes().size(), kUnreachable);
    dist[index(destination)] = 0.0;
    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, static_cast<std::uint32_t>(destination)});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& adj : topo.neighbors(NodeId{u})) {
            double candidate = d + link_weight(topo.link(adj.link), metric);
            if (candidate < dist[index(adj.node)]) {
                dist[index(adj.node)] = candidate;
                heap.push({candidate, static_cast<std::uint32_t>(adj.node)});
            }
        }
    }
    return dist;
}

struct Route {
    std::vector<NodeId> nodes;
    std::vector<LinkId> links;
    double length_km = 0.0;
};

Route walk_route(const PhysicalTopology& topo, const std::vector<double>& dist, NodeId source, NodeId destination,
                 RouteMetric metric) {
    if (!std::isfinite(dist[index(source)])) {
        throw RoutingError("no route from " + node_name(topo.node(source)) + " to " + node_name(topo.node(destination)));
    }
    Route route;
    route.nodes.push_back(source);
    NodeId current = source;
    while (current != destination) {
        const PhysicalTopology::Adjacent* best = nullptr;
        for (const auto& adj : topo.neighbors(current)) {
            double via = dist[index(adj.node)] + link_weight(topo.link(adj.link), metric);
            if (!std::isfinite(dist[index(adj.node)]) || !same_distance(via, dist[index(current)])) continue;
            if (best == nullptr || adj.node < best->node) best = &adj;
        }
        if (best == nullptr) throw RoutingError("route reconstruction failed");
        route.links.push_back(best->link);
        route.length_km += topo.link(best->link).length_km;
        route.nodes.push_back(best->node);
        current = best->node;
    }
    return route;
}

void check_endpoint(const PhysicalTopology& topo, NodeId id) {
    if (!topo.contains(id)) {
        throw RoutingError("demand references unknown node " + std::to_string(index(id)));
    }
}

const char* mode_name(ChannelCountMode mode) {
    return mode == ChannelCountMode::Computed ? "computed" : "declared";
}

}  // namespace

double frequency_thz(double wavelength_nm) {
    return kSpeedOfLightNmThz / wavelength_nm;
}

double wavelength_nm(double frequency_thz) {
    return kSpeedOfLightNmThz / frequency_thz;
}

std::string_view to_string(BandName name) {
    switch (name) {
        case BandName::O: return "O";
        case BandName::E: return "E";
        case BandName::S: return "S";
        case BandName::C: return "C";
        case BandName::L: return "L";
    }
    return "?";
}

BandName parse_band_name(std::string_view text) {
    if (text == "O") return BandName::O;
    if (text == "E") return BandName::E;
    if (text == "S") return BandName::S;
    if (text == "C") return BandName::C;
    if (text == "L") return BandName::L;
    throw ConfigError("bands", "unknown band name '" + std::string(text) + "' (expected O, E, S, C or L)");
}

double band_width_thz(const Band& band) {
    return kSpeedOfLightNmThz * (1.0 / band.lambda_min_nm - 1.0 / band.lambda_max_nm);
}

const Band* SpectrumPlan::find(BandName name) const {
    auto it = std::find_if(bands.begin(), bands.end(), [&](const Band& b) { return b.name == name; });
    return it == bands.end() ? nullptr : &*it;
}

std::vector<Band> default_bands() {
    // Short-wavelength bands see higher attenuation, hence the shorter reach.
    return {
        Band{BandName::C, 1530.0, 1565.0, std::nullopt, std::nullopt},
        Band{BandName::L, 1565.0, 1625.0, std::nullopt, std::nullopt},
        Band{BandName::S, 1460.0, 1530.0, 500.0, std::nullopt},
        Band{BandName::E, 1360.0, 1460.0, 150.0, std::nullopt},
        Band{BandName::O, 1260.0, 1360.0, 100.0, std::nullopt},
    };
}

SpectrumPlan default_plan() {
    SpectrumPlan plan;
    plan.bands = default_bands();
    plan.grid_spacing_ghz = 50.0;
    plan.mode = ChannelCountMode::Declared;
    for (Band& band : plan.bands) {
        for (const auto& entry : kDeclaredChannels) {
            if (entry.name == band.name) band.channel_count_declared = entry.channels;
        }
    }
    return plan;
}

SpectrumPlan computed_plan(double grid_spacing_ghz) {
    SpectrumPlan plan;
    plan.bands = default_bands();
    plan.grid_spacing_ghz = grid_spacing_ghz;
    plan.mode = ChannelCountMode::Computed;
    return plan;
}

SpectrumPlan restrict_bands(const SpectrumPlan& plan, std::span<const BandName> names) {
    for (BandName name : names) {
        if (plan.find(name) == nullptr) {
            throw ConfigError("bands", "band '" + std::string(to_string(name)) + "' is not part of the spectrum plan");
        }
    }
    SpectrumPlan out = plan;
    out.bands.clear();
    for (const Band& band : plan.bands) {
        if (std::find(names.begin(), names.end(), band.name) != names.end()) out.bands.push_back(band);
    }
    return out;
}

std::int64_t channel_count(const SpectrumPlan& plan, const Band& band) {
    if (plan.mode == ChannelCountMode::Declared) {
        if (!band.channel_count_declared) {
            throw ConfigError("channel_count_declared",
                              "declared plan is missing channel_count_declared for band " + std::string(to_string(band.name)));
        }
        return *band.channel_count_declared;
    }
    const double width_ghz = band_width_thz(band) * 1000.0;
    if (!(width_ghz > 0.0)) return 0;
    return static_cast<std::int64_t>(std::floor(width_ghz / plan.grid_spacing_ghz + 1e-9));
}

std::int64_t total_channels(const SpectrumPlan& plan) {
    std::int64_t total = 0;
    for (const Band& band : plan.bands) total += channel_count(plan, band);
    return total;
}

void validate_plan(const SpectrumPlan& plan) {
    if (plan.bands.empty()) throw ConfigError("bands", "spectrum plan has no bands");
    if (!(plan.grid_spacing_ghz > 0.0) || !std::isfinite(plan.grid_spacing_ghz)) {
        throw ConfigError("grid_spacing_ghz", "grid_spacing_ghz must be positive");
    }
    std::set<BandName> seen;
    for (const Band& band : plan.bands) {
        const std::string name(to_string(band.name));
        if (!seen.insert(band.name).second) throw ConfigError("bands", "duplicate band " + name);
        if (!(band.lambda_min_nm > 0.0) || !(band.lambda_min_nm < band.lambda_max_nm)) {
            throw ConfigError("bands", "band " + name + " needs 0 < lambda_min_nm < lambda_max_nm");
        }
        if (band.reach_limit_km && !(*band.reach_limit_km > 0.0)) {
            throw ConfigError("reach_limit_km", "band " + name + " reach_limit_km must be positive or null");
        }
        if (band.channel_count_declared && *band.channel_count_declared < 0) {
            throw ConfigError("channel_count_declared", "band " + name + " declares a negative channel count");
        }
        if (plan.mode == ChannelCountMode::Declared && !band.channel_count_declared) {
            throw ConfigError("channel_count_declared", "declared plan is missing channel_count_declared for band " + name);
        }
    }
    std::vector<const Band*> by_edge;
    for (const Band& band : plan.bands) by_edge.push_back(&band);
    std::sort(by_edge.begin(), by_edge.end(), [](const Band* a, const Band* b) { return a->lambda_min_nm < b->lambda_min_nm; });
    for (std::size_t i = 1; i < by_edge.size(); ++i) {
        if (by_edge[i]->lambda_min_nm < by_edge[i - 1]->lambda_max_nm) {
            throw ConfigError("bands", "bands " + std::string(to_string(by_edge[i - 1]->name)) + " and " +
                                           std::string(to_string(by_edge[i]->name)) + " overlap");
        }
    }
}

nlohmann::json to_json(const SpectrumPlan& plan) {
    nlohmann::json doc;
    doc["grid_spacing_ghz"] = plan.grid_spacing_ghz;
    doc["mode"] = mode_name(plan.mode);
    doc["bands"] = nlohmann::json::array();
    for (const Band& band : plan.bands) {
        nlohmann::json b;
        b["name"] = std::string(to_string(band.name));
        b["lambda_min_nm"] = band.lambda_min_nm;
        b["lambda_max_nm"] = band.lambda_max_nm;
        b["reach_limit_km"] = band.reach_limit_km ? nlohmann::json(*band.reach_limit_km) : nlohmann::json(nullptr);
        if (band.channel_count_declared) b["channel_count_declared"] = *band.channel_count_declared;
        doc["bands"].push_back(std::move(b));
    }
    return doc;
}

SpectrumPlan plan_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("", "spectrum plan must be a JSON object");
    for (const auto& item : doc.items()) {
        if (item.key() != "bands" && item.key() != "grid_spacing_ghz" && item.key() != "mode") {
            throw ConfigError(item.key(), "unknown spectrum plan field '" + item.key() + "'");
        }
    }
    if (!doc.contains("bands") || !doc["bands"].is_array()) throw ConfigError("bands", "field 'bands' must be a list");

    SpectrumPlan plan;
    if (doc.contains("grid_spacing_ghz")) {
        if (!doc["grid_spacing_ghz"].is_number()) throw ConfigError("grid_spacing_ghz", "field 'grid_spacing_ghz' must be a number");
        plan.grid_spacing_ghz = doc["grid_spacing_ghz"].get<double>();
    }
    if (doc.contains("mode")) {
        const auto& mode = doc["mode"];
        if (mode == "computed") plan.mode = ChannelCountMode::Computed;
        else if (mode == "declared") plan.mode = ChannelCountMode::Declared;
        else throw ConfigError("mode", "field 'mode' must be \"computed\" or \"declared\"");
    }
    for (const auto& entry : doc["bands"]) {
        if (!entry.is_object()) throw ConfigError("bands", "band entries must be JSON objects");
        for (const auto& item : entry.items()) {
            static const std::set<std::string> known = {"name", "lambda_min_nm", "lambda_max_nm", "reach_limit_km",
                                                        "channel_count_declared"};
            if (!known.count(item.key())) throw ConfigError(item.key(), "unknown band field '" + item.key() + "'");
        }
        Band band;
        if (!entry.contains("name") || !entry["name"].is_string()) throw ConfigError("name", "band needs a string 'name'");
        band.name = parse_band_name(entry["name"].get<std::string>());
        for (const char* edge : {"lambda_min_nm", "lambda_max_nm"}) {
            if (!entry.contains(edge) || !entry[edge].is_number()) {
                throw ConfigError(edge, std::string("band field '") + edge + "' must be a number");
            }
        }
        band.lambda_min_nm = entry["lambda_min_nm"].get<double>();
        band.lambda_max_nm = entry["lambda_max_nm"].get<double>();
        if (entry.contains("reach_limit_km") && !entry["reach_limit_km"].is_null()) {
            if (!entry["reach_limit_km"].is_number()) throw ConfigError("reach_limit_km", "'reach_limit_km' must be a number or null");
            band.reach_limit_km = entry["reach_limit_km"].get<double>();
        }
        if (entry.contains("channel_count_declared")) {
            if (!entry["channel_count_declared"].is_number_integer()) {
                throw ConfigError("channel_count_declared", "'channel_count_declared' must be an integer");
            }
            band.channel_count_declared = entry["channel_count_declared"].get<std::int64_t>();
        }
        plan.bands.push_back(band);
    }
    validate_plan(plan);
    return plan;
}

SpectrumPlan load_plan(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return plan_from_json(parse_json_text(text, "spectrum plan"));
    } catch (const ConfigError& e) {
        throw ConfigError(e.field(), path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Demands and assignment

std::vector<Demand> demands_for(ArchitectureKind arch, const NetworkScenario& s, const PhysicalTopology& topology) {
    std::vector<Demand> demands;
    const std::int64_t per_hl4 = ceil_count(s.a4_gbps / s.channel_rate_gbps);
    const auto hl4_nodes = topology.nodes_at(Level::HL4);

    if (arch != ArchitectureKind::GroomingHierarchical) {
        if (per_hl4 == 0) return demands;
        for (NodeId id : hl4_nodes) {
            auto hub = topology.home_hub(id);
            if (!hub) throw RoutingError(node_name(topology.node(id)) + " has no HL12 home");
            demands.push_back(Demand{id, *hub, per_hl4, s.a4_gbps});
        }
        return demands;
    }

    if (per_hl4 > 0) {
        for (NodeId id : hl4_nodes) {
            const auto& parent = topology.node(id).parent;
            if (!parent) throw RoutingError(node_name(topology.node(id)) + " has no HL3 parent");
            demands.push_back(Demand{id, *parent, per_hl4, s.a4_gbps});
        }
    }
    const double groomed = static_cast<double>(s.h4) / static_cast<double>(s.h3) * s.eta * s.a4_gbps;
    const std::int64_t uplink = ceil_count(groomed / s.channel_rate_gbps);
    if (uplink > 0) {
        for (NodeId id : topology.nodes_at(Level::HL3)) {
            const auto& hub = topology.node(id).parent;
            if (!hub) throw RoutingError(node_name(topology.node(id)) + " has no HL12 home");
            demands.push_back(Demand{id, *hub, uplink, groomed});
        }
    }
    return demands;
}

std::vector<NodeId> shortest_route(const PhysicalTopology& topology, NodeId source, NodeId destination, RouteMetric metric) {
    check_endpoint(topology, source);
    check_endpoint(topology, destination);
    return walk_route(topology, distances_to(topology, destination, metric), source, destination, metric).nodes;
}

std::int64_t Assignment::peak_link_occupancy() const {
    return per_link_peak.empty() ? 0 : *std::max_element(per_link_peak.begin(), per_link_peak.end());
}

Assignment assign_spectrum(const SpectrumPlan& plan, const PhysicalTopology& topology, std::span<const Demand> demands,
                           RouteMetric metric) {
    validate_plan(plan);
    const std::size_t link_count = topology.links().size();

    // occupied[band][link * channels + channel]
    std::vector<std::int64_t> capacity;
    std::vector<std::vector<char>> occupied;
    for (const Band& band : plan.bands) {
        capacity.push_back(channel_count(plan, band));
        occupied.emplace_back(link_count * static_cast<std::size_t>(capacity.back()), 0);
    }

    Assignment result;
    result.per_link_peak.assign(link_count, 0);
    std::map<NodeId, std::vector<double>> distance_cache;

    for (const Demand& demand : demands) {
        check_endpoint(topology, demand.source);
        check_endpoint(topology, demand.destination);
        if (demand.source == demand.destination) {
            throw RoutingError("demand source and destination are the same node");
        }
        auto cached = distance_cache.find(demand.destination);
        if (cached == distance_cache.end()) {
            cached = distance_cache.emplace(demand.destination, distances_to(topology, demand.destination, metric)).first;
        }
        const Route route = walk_route(topology, cached->second, demand.source, demand.destination, metric);
        const double unit_rate = demand.channels > 0 ? demand.rate_gbps / static_cast<double>(demand.channels) : 0.0;

        for (std::int64_t unit = 0; unit < demand.channels; ++unit) {
            bool placed = false;
            for (std::size_t b = 0; b < plan.bands.size() && !placed; ++b) {
                const Band& band = plan.bands[b];
                if (band.reach_limit_km && *band.reach_limit_km < route.length_km) continue;
                const auto channels = static_cast<std::size_t>(capacity[b]);
                auto& used = occupied[b];
                for (std::size_t ch = 0; ch < channels; ++ch) {
                    bool free = std::none_of(route.links.begin(), route.links.end(),
                                             [&](LinkId l) { return used[index(l) * channels + ch] != 0; });
                    if (!free) continue;
                    for (LinkId l : route.links) {
                        used[index(l) * channels + ch] = 1;
                        ++result.per_link_peak[index(l)];
                    }
                    result.lightpaths.push_back(Lightpath{demand.source, demand.destination, route.links, band.name,
                                                          static_cast<std::int64_t>(ch), unit_rate});
                    placed = true;
                    break;
                }
            }
            if (!placed) result.blocked.push_back(Demand{demand.source, demand.destination, 1, unit_rate});
        }
    }
    return result;
}

FeasibilityReport summarize(const SpectrumPlan& plan, const Assignment& assignment) {
    FeasibilityReport report;
    report.blocked_count = static_cast<std::int64_t>(assignment.blocked.size());
    report.feasible = report.blocked_count == 0;
    report.peak_link_occupancy = assignment.peak_link_occupancy();
    report.lightpath_count = static_cast<std::int64_t>(assignment.lightpaths.size());

    std::map<BandName, std::set<std::int64_t>> in_use;
    for (const Lightpath& lp : assignment.lightpaths) in_use[lp.band].insert(lp.channel);
    for (const Band& band : plan.bands) {
        BandUtilization u;
        u.band = band.name;
        u.available_channels = channel_count(plan, band);
        u.used_channels = static_cast<std::int64_t>(in_use[band.name].size());
        u.utilization = u.available_channels > 0
                            ? static_cast<double>(u.used_channels) / static_cast<double>(u.available_channels)
                            : 0.0;
        report.band_utilization.push_back(u);
    }
    return report;
}

FeasibilityReport feasibility_report(const SpectrumPlan& plan, const PhysicalTopology& topology, ArchitectureKind arch,
                                     const NetworkScenario& scenario, RouteMetric metric) {
    const auto demands = demands_for(arch, scenario, topology);
    return summarize(plan, assign_spectrum(plan, topology, demands, metric));
}

}  // namespace mbplan
