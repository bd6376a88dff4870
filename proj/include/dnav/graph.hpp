#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/semantics.hpp"

namespace dnav {

using NodeId = std::string;

/// Sentinel destination meaning "leave the structure". Never a declared node.
inline constexpr std::string_view kExitNode = "::exit";

inline constexpr std::string_view kDefaultDrillRule = "drill";

enum class Direction { toward_target, toward_source };

std::string_view to_string(Direction direction) noexcept;

struct Endpoint {
    enum class Kind { literal, resolver };

    Kind kind = Kind::literal;
    std::string ref;

    static Endpoint literal(std::string id) { return {Kind::literal, std::move(id)}; }
    static Endpoint resolver(std::string name) { return {Kind::resolver, std::move(name)}; }

    bool is_literal() const noexcept { return kind == Kind::literal; }
    bool is_resolver(std::string_view name) const noexcept {
        return kind == Kind::resolver && ref == name;
    }

    bool operator==(const Endpoint&) const = default;
};

struct NavigationRule {
    std::string name;
    Direction direction = Direction::toward_target;
    std::vector<std::string> bindings;

    bool operator==(const NavigationRule&) const = default;
};

struct Edge {
    std::string id;
    Endpoint source;
    Endpoint target;
    std::vector<std::string> rules;

    bool operator==(const Edge&) const = default;
};

struct Node {
    NodeId id;
    std::vector<std::string> edges;
    std::optional<Render> render;
    SemanticsPayload semantics;
    nlohmann::json datum = nlohmann::json::object();

    bool operator==(const Node&) const = default;
};

/// One step of focus history: the node that was left, and how.
struct TrailStep {
    NodeId node;
    std::string rule;
    std::string edge;

    bool operator==(const TrailStep&) const = default;
};

struct ResolverContext {
    NodeId current;
    std::optional<NodeId> previous;
    NodeId entry;
    std::span<const TrailStep> trail;  // most recent last; previous == trail.back().node
};

class Graph;

using Resolver =
    std::function<std::optional<NodeId>(const Graph&, const ResolverContext&)>;

/// Named endpoint functions. Graph files reference resolvers by name only, so
/// a graph can be loaded wherever the same names are registered.
class ResolverRegistry {
   public:
    /// Registry holding the built-in resolvers (see resolvers.hpp).
    static std::shared_ptr<const ResolverRegistry> builtin();

    void add(std::string name, Resolver resolver);
    bool contains(std::string_view name) const;
    const Resolver* find(std::string_view name) const;

   private:
    std::map<std::string, Resolver, std::less<>> resolvers_;
};

/// Everything needed to build a graph. Order of `nodes`, `edges` and `rules`
/// is irrelevant; order inside `Node::edges` and `universal_edges` is the
/// matching priority.
struct GraphDecl {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<NavigationRule> rules;
    std::vector<std::string> universal_edges;
    NodeId entry;
    std::optional<std::string> exit_target;
    std::string drill_rule{kDefaultDrillRule};
};

/// Immutable, validated navigation graph. Obtain one from build_graph().
class Graph {
   public:
    Graph(const Graph& other);
    Graph& operator=(const Graph& other);
    Graph(Graph&&) noexcept = default;
    Graph& operator=(Graph&&) noexcept = default;
    ~Graph() = default;

    const Node* find_node(std::string_view id) const;
    const Edge* find_edge(std::string_view id) const;
    const NavigationRule* find_rule(std::string_view name) const;

    /// Throw Error(DanglingEdgeRef/UnknownRule) when absent.
    const Node& node(std::string_view id) const;
    const NavigationRule& rule(std::string_view name) const;

    // Declaration order.
    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const NavigationRule> rules() const noexcept { return rules_; }

    std::span<const std::string> universal_edges() const noexcept { return universal_edges_; }
    const NodeId& entry() const noexcept { return entry_; }
    const std::optional<std::string>& exit_target() const noexcept { return exit_target_; }
    const std::string& drill_rule() const noexcept { return drill_rule_; }
    const ResolverRegistry& resolvers() const noexcept { return *resolvers_; }

    /// Structural equality by id, independent of declaration order. The
    /// resolver registry is not compared.
    bool operator==(const Graph& other) const;

   private:
    friend Graph build_graph(GraphDecl decl, std::shared_ptr<const ResolverRegistry> resolvers);

    Graph() = default;
    void reindex();

    // The indices view into the id strings owned by the vectors above; moves
    // keep the element storage, copies go through reindex().

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<NavigationRule> rules_;
    std::unordered_map<std::string_view, std::size_t> node_index_;
    std::unordered_map<std::string_view, std::size_t> edge_index_;
    std::unordered_map<std::string_view, std::size_t> rule_index_;
    std::vector<std::string> universal_edges_;
    NodeId entry_;
    std::optional<std::string> exit_target_;
    std::string drill_rule_;
    std::shared_ptr<const ResolverRegistry> resolvers_;
};

/// Checks every cross reference and returns an immutable graph, or throws
/// Error with DuplicateId, DanglingEdgeRef, UnknownEntry, ReservedIdUse,
/// UnknownResolver or InvalidDeclaration.
Graph build_graph(GraphDecl decl,
                  std::shared_ptr<const ResolverRegistry> resolvers = ResolverRegistry::builtin());

std::optional<NodeId> resolve_endpoint(const Graph& graph, const Endpoint& endpoint,
                                       const ResolverContext& ctx);

struct EdgeMatch {
    std::string edge;
    NodeId destination;

    bool operator==(const EdgeMatch&) const = default;
};

/// Edges of `node` that move under `rule`: the node's own edges in declaration
/// order, then the universal edges. Edges whose destination does not resolve
/// are left out.
std::vector<EdgeMatch> applicable_edges(const Graph& graph, std::string_view node,
                                        std::string_view rule, const ResolverContext& ctx);

/// First entry of applicable_edges(), without building the whole list.
std::optional<EdgeMatch> first_applicable_edge(const Graph& graph, std::string_view node,
                                               std::string_view rule, const ResolverContext& ctx);

/// Context for evaluating a node with no history (validation, previews).
ResolverContext static_context(const Graph& graph, std::string_view node);

}  // namespace dnav
