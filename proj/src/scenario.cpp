#include "mbplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

namespace mbplan {

namespace {

constexpr const char* kScenarioFields[] = {
    "h4", "h3", "h12", "a4_gbps", "eta", "channel_rate_gbps", "fanout_m", "topology_kind", "link_length_km",
};

std::int64_t read_count(const nlohmann::json& doc, const char* field) {
    const auto& value = doc.at(field);
    if (value.is_number_integer()) {
        return value.get<std::int64_t>();
    }
    if (value.is_number_float()) {
        double raw = value.get<double>();
        if (std::isfinite(raw) && std::floor(raw) == raw) {
            return static_cast<std::int64_t>(raw);
        }
    }
    throw ConfigError(field, std::string("field '") + field + "' must be an integer, got " + value.dump());
}

double read_real(const nlohmann::json& doc, const char* field) {
    const auto& value = doc.at(field);
    if (!value.is_number()) {
        throw ConfigError(field, std::string("field '") + field + "' must be a number, got " + value.dump());
    }
    return value.get<double>();
}

}  // namespace

std::string_view to_string(TopologyKind kind) {
    return kind == TopologyKind::Tree ? "tree" : "ring";
}

std::string_view to_string(Level level) {
    switch (level) {
        case Level::HL12: return "HL12";
        case Level::HL3: return "HL3";
        case Level::HL4: return "HL4";
    }
    return "?";
}

TopologyKind parse_topology_kind(std::string_view text) {
    if (text == "tree") return TopologyKind::Tree;
    if (text == "ring") return TopologyKind::Ring;
    throw ConfigError("topology_kind", "topology_kind must be \"tree\" or \"ring\", got \"" + std::string(text) + "\"");
}

NetworkScenario validate(const NetworkScenario& s) {
    if (s.h4 < 1) throw ConfigError("h4", "h4 must be a positive integer");
    if (s.h3 < 1) throw ConfigError("h3", "h3 must be a positive integer");
    if (s.h12 < 1) throw ConfigError("h12", "h12 must be a positive integer");
    if (s.h3 > s.h4) throw ConfigError("h3", "h3 exceeds h4 (" + std::to_string(s.h3) + " > " + std::to_string(s.h4) + ")");
    if (s.h12 > s.h3) throw ConfigError("h12", "h12 exceeds h3 (" + std::to_string(s.h12) + " > " + std::to_string(s.h3) + ")");
    if (!std::isfinite(s.a4_gbps) || s.a4_gbps < 0.0) throw ConfigError("a4_gbps", "a4_gbps must be a non-negative number");
    if (!(s.eta >= 0.0 && s.eta <= 1.0)) throw ConfigError("eta", "eta out of range [0, 1]");
    if (!std::isfinite(s.channel_rate_gbps) || s.channel_rate_gbps <= 0.0) {
        throw ConfigError("channel_rate_gbps", "channel_rate_gbps must be positive");
    }
    if (s.fanout_m < 1) throw ConfigError("fanout_m", "fanout_m must be at least 1");
    if (!std::isfinite(s.link_length_km) || s.link_length_km <= 0.0) {
        throw ConfigError("link_length_km", "link_length_km must be positive");
    }
    return s;
}

NetworkScenario reference_scenario() {
    NetworkScenario s;
    s.h4 = 200;
    s.h3 = 40;
    s.h12 = 5;
    s.a4_gbps = 300.0;
    s.eta = 0.5;
    return s;
}

std::string node_name(const Node& node) {
    return std::string(to_string(node.level)) + "-" + std::to_string(node.ordinal);
}

// ---------------------------------------------------------------------------
// PhysicalTopology

NodeId PhysicalTopology::add_node(Level level, std::int64_t ordinal, std::optional<NodeId> parent) {
    NodeId id{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(Node{id, level, ordinal, parent});
    adjacency_.emplace_back();
    return id;
}

LinkId PhysicalTopology::add_link(NodeId a, NodeId b, double length_km) {
    if (!contains(a) || !contains(b) || a == b) {
        throw std::invalid_argument("add_link: endpoints must be two distinct existing nodes");
    }
    LinkId id{static_cast<std::uint32_t>(links_.size())};
    links_.push_back(Link{a, b, length_km});
    adjacency_[index(a)].push_back({b, id});
    adjacency_[index(b)].push_back({a, id});
    return id;
}

void PhysicalTopology::set_parent(NodeId node, NodeId parent) {
    nodes_.at(index(node)).parent = parent;
}

std::vector<NodeId> PhysicalTopology::nodes_at(Level level) const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_) {
        if (n.level == level) out.push_back(n.id);
    }
    return out;
}

std::optional<LinkId> PhysicalTopology::link_between(NodeId a, NodeId b) const {
    if (!contains(a)) return std::nullopt;
    for (const auto& adj : adjacency_[index(a)]) {
        if (adj.node == b) return adj.link;
    }
    return std::nullopt;
}

std::optional<NodeId> PhysicalTopology::home_hub(NodeId id) const {
    std::size_t guard = 0;
    NodeId current = id;
    while (contains(current) && guard++ <= nodes_.size()) {
        const Node& n = nodes_[index(current)];
        if (n.level == Level::HL12) return current;
        if (!n.parent) return std::nullopt;
        current = *n.parent;
    }
    return std::nullopt;
}

bool PhysicalTopology::is_connected() const {
    if (nodes_.empty()) return true;
    std::vector<bool> seen(nodes_.size(), false);
    std::queue<NodeId> frontier;
    frontier.push(NodeId{0});
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        for (const auto& adj : adjacency_[index(u)]) {
            if (!seen[index(adj.node)]) {
                seen[index(adj.node)] = true;
                ++reached;
                frontier.push(adj.node);
            }
        }
    }
    return reached == nodes_.size();
}

bool PhysicalTopology::operator==(const PhysicalTopology& other) const {
    if (kind_ != other.kind_ || nodes_.size() != other.nodes_.size() || links_.size() != other.links_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& x = nodes_[i];
        const Node& y = other.nodes_[i];
        if (x.id != y.id || x.level != y.level || x.ordinal != y.ordinal || x.parent != y.parent) return false;
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const Link& x = links_[i];
        const Link& y = other.links_[i];
        if (x.a != y.a || x.b != y.b || x.length_km != y.length_km) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Generator

PhysicalTopology generate_topology(const NetworkScenario& scenario) {
    const NetworkScenario s = validate(scenario);
    PhysicalTopology topo(s.topology_kind);

    std::vector<NodeId> hubs;
    std::vector<NodeId> hl3;
    hubs.reserve(static_cast<std::size_t>(s.h12));
    hl3.reserve(static_cast<std::size_t>(s.h3));
    for (std::int64_t k = 0; k < s.h12; ++k) hubs.push_back(topo.add_node(Level::HL12, k));
    for (std::int64_t j = 0; j < s.h3; ++j) {
        // Balanced block assignment; the ring kind overrides it with the nearest hub below.
        NodeId hub = hubs[static_cast<std::size_t>(j * s.h12 / s.h3)];
        hl3.push_back(topo.add_node(Level::HL3, j, hub));
    }

    if (s.topology_kind == TopologyKind::Tree) {
        for (std::int64_t j = 0; j < s.h3; ++j) {
            NodeId id = hl3[static_cast<std::size_t>(j)];
            topo.add_link(id, *topo.node(id).parent, s.link_length_km);
        }
    } else {
        // Cycle order: each hub followed by the block of HL3 nodes assigned to it,
        // which spaces the hubs evenly around the ring.
        std::vector<NodeId> cycle;
        cycle.reserve(hubs.size() + hl3.size());
        std::size_t next_hl3 = 0;
        for (std::int64_t k = 0; k < s.h12; ++k) {
            cycle.push_back(hubs[static_cast<std::size_t>(k)]);
            while (next_hl3 < hl3.size() &&
                   static_cast<std::int64_t>(next_hl3) * s.h12 / s.h3 == k) {
                cycle.push_back(hl3[next_hl3++]);
            }
        }
        const std::size_t n = cycle.size();
        for (std::size_t p = 0; p + 1 < n; ++p) topo.add_link(cycle[p], cycle[p + 1], s.link_length_km);
        if (n >= 3) topo.add_link(cycle[n - 1], cycle[0], s.link_length_km);

        std::vector<std::size_t> hub_positions;
        for (std::size_t p = 0; p < n; ++p) {
            if (topo.node(cycle[p]).level == Level::HL12) hub_positions.push_back(p);
        }
        for (std::size_t p = 0; p < n; ++p) {
            if (topo.node(cycle[p]).level != Level::HL3) continue;
            std::size_t best_distance = n;
            NodeId best_hub = hubs.front();
            for (std::size_t q : hub_positions) {
                std::size_t forward = p > q ? p - q : q - p;
                std::size_t distance = std::min(forward, n - forward);
                // hub_positions ascend with hub ordinal, so strict < keeps the lower id on ties.
                if (distance < best_distance) {
                    best_distance = distance;
                    best_hub = cycle[q];
                }
            }
            topo.set_parent(cycle[p], best_hub);
        }
    }

    for (std::int64_t i = 0; i < s.h4; ++i) {
        NodeId parent = hl3[static_cast<std::size_t>(i * s.h3 / s.h4)];
        NodeId id = topo.add_node(Level::HL4, i, parent);
        topo.add_link(id, parent, s.link_length_km);
    }
    return topo;
}

// Number of HL12 nodes in the connected component of each node.
static std::vector<std::size_t> hubs_per_component(const PhysicalTopology& topo) {
    const std::size_t n = topo.nodes().size();
    std::vector<std::size_t> component(n, n);
    std::vector<std::size_t> hubs;
    for (std::size_t start = 0; start < n; ++start) {
        if (component[start] != n) continue;
        const std::size_t c = hubs.size();
        hubs.push_back(0);
        std::vector<NodeId> frontier{NodeId{static_cast<std::uint32_t>(start)}};
        component[start] = c;
        for (std::size_t k = 0; k < frontier.size(); ++k) {
            if (topo.node(frontier[k]).level == Level::HL12) ++hubs[c];
            for (const auto& adj : topo.neighbors(frontier[k])) {
                if (component[index(adj.node)] != n) continue;
                component[index(adj.node)] = c;
                frontier.push_back(adj.node);
            }
        }
    }
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = hubs[component[i]];
    return out;
}

std::optional<std::string> check_topology(const PhysicalTopology& topo, const NetworkScenario& s) {
    // A tree has h4 + h3 links over h4 + h3 + h12 nodes, so it is one component per hub.
    if (topo.kind() == TopologyKind::Ring && !topo.is_connected()) return "topology is not connected";
    if (topo.kind() == TopologyKind::Tree) {
        for (std::size_t hubs : hubs_per_component(topo)) {
            if (hubs != 1) return "tree component does not hold exactly one HL12 node";
        }
    }
    const auto hl4 = topo.nodes_at(Level::HL4);
    const auto hl3 = topo.nodes_at(Level::HL3);
    const auto hubs = topo.nodes_at(Level::HL12);
    if (static_cast<std::int64_t>(hl4.size()) != s.h4 || static_cast<std::int64_t>(hl3.size()) != s.h3 ||
        static_cast<std::int64_t>(hubs.size()) != s.h12) {
        return "node counts do not match the scenario";
    }
    for (NodeId id : hl4) {
        const Node& n = topo.node(id);
        if (!n.parent || topo.node(*n.parent).level != Level::HL3) return node_name(n) + " has no HL3 parent";
        if (!topo.link_between(id, *n.parent)) return node_name(n) + " is not linked to its parent";
        if (topo.neighbors(id).size() != 1) return node_name(n) + " is not a leaf";
        if (!topo.home_hub(id)) return node_name(n) + " reaches no HL12 node";
    }
    for (NodeId id : hl3) {
        const Node& n = topo.node(id);
        if (!n.parent || topo.node(*n.parent).level != Level::HL12) return node_name(n) + " has no HL12 home";
    }

    if (topo.kind() == TopologyKind::Tree) {
        if (static_cast<std::int64_t>(topo.links().size()) != s.h4 + s.h3) return "tree link count differs from h4 + h3";
        for (NodeId id : hl3) {
            if (!topo.link_between(id, *topo.node(id).parent)) return node_name(topo.node(id)) + " is not linked to its HL12 parent";
        }
        return std::nullopt;
    }

    // Ring: the HL3 + HL12 backbone must be one simple cycle.
    const std::size_t n = hl3.size() + hubs.size();
    std::vector<std::size_t> backbone_degree(topo.nodes().size(), 0);
    std::size_t backbone_links = 0;
    for (const Link& l : topo.links()) {
        bool a_backbone = topo.node(l.a).level != Level::HL4;
        bool b_backbone = topo.node(l.b).level != Level::HL4;
        if (a_backbone && b_backbone) {
            ++backbone_degree[index(l.a)];
            ++backbone_degree[index(l.b)];
            ++backbone_links;
        }
    }
    const std::size_t expected_links = n >= 3 ? n : 1;
    if (backbone_links != expected_links) return "ring backbone link count is wrong";
    const std::size_t expected_degree = n >= 3 ? 2 : 1;
    for (const Node& node : topo.nodes()) {
        if (node.level != Level::HL4 && backbone_degree[index(node.id)] != expected_degree) {
            return node_name(node) + " does not have ring degree " + std::to_string(expected_degree);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Serialization

static nlohmann::ordered_json ordered_scenario(const NetworkScenario& s) {
    nlohmann::ordered_json ordered;
    ordered["h4"] = s.h4;
    ordered["h3"] = s.h3;
    ordered["h12"] = s.h12;
    ordered["a4_gbps"] = s.a4_gbps;
    ordered["eta"] = s.eta;
    ordered["channel_rate_gbps"] = s.channel_rate_gbps;
    ordered["fanout_m"] = s.fanout_m;
    ordered["topology_kind"] = std::string(to_string(s.topology_kind));
    ordered["link_length_km"] = s.link_length_km;
    return ordered;
}

nlohmann::json to_json(const NetworkScenario& s) {
    return nlohmann::json::parse(ordered_scenario(s).dump());
}

NetworkScenario scenario_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("", "scenario document must be a JSON object");
    for (const auto& item : doc.items()) {
        bool known = std::any_of(std::begin(kScenarioFields), std::end(kScenarioFields),
                                 [&](const char* f) { return item.key() == f; });
        if (!known) throw ConfigError(item.key(), "unknown scenario field '" + item.key() + "'");
    }
    for (const char* required : {"h4", "h3", "h12", "a4_gbps", "eta"}) {
        if (!doc.contains(required)) {
            throw ConfigError(required, std::string("missing required field '") + required + "'");
        }
    }

    NetworkScenario s;
    s.h4 = read_count(doc, "h4");
    s.h3 = read_count(doc, "h3");
    s.h12 = read_count(doc, "h12");
    s.a4_gbps = read_real(doc, "a4_gbps");
    s.eta = read_real(doc, "eta");
    if (doc.contains("channel_rate_gbps")) s.channel_rate_gbps = read_real(doc, "channel_rate_gbps");
    if (doc.contains("fanout_m")) s.fanout_m = read_count(doc, "fanout_m");
    if (doc.contains("topology_kind")) {
        const auto& kind = doc.at("topology_kind");
        if (!kind.is_string()) throw ConfigError("topology_kind", "field 'topology_kind' must be a string");
        s.topology_kind = parse_topology_kind(kind.get<std::string>());
    }
    if (doc.contains("link_length_km")) s.link_length_km = read_real(doc, "link_length_km");
    return validate(s);
}

nlohmann::json parse_json_text(std::string_view text, std::string_view what) {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string(what) + ": " + e.what());
    }
}

NetworkScenario parse_scenario(std::string_view text) {
    return scenario_from_json(parse_json_text(text, "scenario"));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

NetworkScenario load_scenario(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_scenario(text);
    } catch (const ConfigError& e) {
        throw ConfigError(e.field(), path.string() + ": " + e.what());
    }
}

std::string save_scenario(const NetworkScenario& s) {
    return ordered_scenario(s).dump(2) + "\n";
}

void save_scenario(const NetworkScenario& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("", "cannot write file '" + path.string() + "'");
    out << save_scenario(s);
}

}  // namespace mbplan
