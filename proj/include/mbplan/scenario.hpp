#ifndef MBPLAN_SCENARIO_HPP
#define MBPLAN_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mbplan {

enum class TopologyKind { Tree, Ring };

/// Hierarchical level of a node. HL1 and HL2 are modeled as one tier.
enum class Level { HL12, HL3, HL4 };

std::string_view to_string(TopologyKind kind);
std::string_view to_string(Level level);
TopologyKind parse_topology_kind(std::string_view text);

/// The single planning input: node counts per level, per-node traffic and
/// the transport parameters shared by every architecture.
struct NetworkScenario {
    std::int64_t h4 = 1;
    std::int64_t h3 = 1;
    std::int64_t h12 = 1;
    double a4_gbps = 0.0;    // average source traffic per HL4 node
    double eta = 0.0;        // oversubscription at the HL3 grooming stage
    double channel_rate_gbps = 400.0;
    std::int64_t fanout_m = 4;
    TopologyKind topology_kind = TopologyKind::Tree;
    double link_length_km = 50.0;

    bool operator==(const NetworkScenario&) const = default;
};

/// Raised for any invalid planning input. `field()` names the offending
/// field (or is empty when the problem is not tied to one).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Returns the scenario unchanged, or throws ConfigError naming the first
/// failing field.
NetworkScenario validate(const NetworkScenario& scenario);

/// 200 HL4 / 40 HL3 / 5 HL1/2, 300G per HL4, eta = 0.5, 400G channels.
NetworkScenario reference_scenario();

enum class NodeId : std::uint32_t {};
enum class LinkId : std::uint32_t {};

constexpr std::size_t index(NodeId id) noexcept { return static_cast<std::size_t>(id); }
constexpr std::size_t index(LinkId id) noexcept { return static_cast<std::size_t>(id); }

struct Node {
    NodeId id{};
    Level level = Level::HL4;
    std::int64_t ordinal = 0;          // position within its level
    std::optional<NodeId> parent;      // HL4 -> HL3, HL3 -> home HL12, none for HL12
};

struct Link {
    NodeId a{};
    NodeId b{};
    double length_km = 0.0;

    NodeId other(NodeId end) const noexcept { return end == a ? b : a; }
};

std::string node_name(const Node& node);

/// Undirected fiber graph. Node ids are dense: HL12 nodes first, then HL3,
/// then HL4, each level in ordinal order.
class PhysicalTopology {
public:
    struct Adjacent {
        NodeId node;
        LinkId link;
    };

    PhysicalTopology() = default;
    explicit PhysicalTopology(TopologyKind kind) : kind_(kind) {}

    NodeId add_node(Level level, std::int64_t ordinal, std::optional<NodeId> parent = std::nullopt);
    LinkId add_link(NodeId a, NodeId b, double length_km);
    void set_parent(NodeId node, NodeId parent);

    TopologyKind kind() const noexcept { return kind_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<Link>& links() const noexcept { return links_; }
    const Node& node(NodeId id) const { return nodes_.at(index(id)); }
    const Link& link(LinkId id) const { return links_.at(index(id)); }
    const std::vector<Adjacent>& neighbors(NodeId id) const { return adjacency_.at(index(id)); }
    bool contains(NodeId id) const noexcept { return index(id) < nodes_.size(); }

    std::vector<NodeId> nodes_at(Level level) const;
    std::optional<LinkId> link_between(NodeId a, NodeId b) const;

    /// HL12 node a node is homed to, following parent pointers.
    std::optional<NodeId> home_hub(NodeId id) const;

    bool is_connected() const;

    bool operator==(const PhysicalTopology& other) const;

private:
    TopologyKind kind_ = TopologyKind::Tree;
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<Adjacent>> adjacency_;
};

/// Builds the tree or ring layout for a validated scenario. Deterministic.
PhysicalTopology generate_topology(const NetworkScenario& scenario);

/// Checks connectivity, HL4-to-HL12 reachability and the kind-specific
/// shape rules; returns a description of the first violation, if any.
std::optional<std::string> check_topology(const PhysicalTopology& topology, const NetworkScenario& scenario);

nlohmann::json to_json(const NetworkScenario& scenario);

/// Strict parse: unknown fields and wrongly typed fields raise ConfigError.
/// Missing optional fields take their defaults. The result is validated.
NetworkScenario scenario_from_json(const nlohmann::json& document);
NetworkScenario parse_scenario(std::string_view text);
NetworkScenario load_scenario(const std::filesystem::path& path);
std::string save_scenario(const NetworkScenario& scenario);
void save_scenario(const NetworkScenario& scenario, const std::filesystem::path& path);

/// Reads a whole file or throws ConfigError naming the path.
std::string read_text_file(const std::filesystem::path& path);

/// Parses JSON text, turning parser errors into ConfigError with the
/// parser's line/column context.
nlohmann::json parse_json_text(std::string_view text, std::string_view what);

}  // namespace mbplan

#endif  // MBPLAN_SCENARIO_HPP
