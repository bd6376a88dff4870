#include "dnav/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "dnav/error.hpp"
#include "dnav/resolvers.hpp"

namespace dnav {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DanglingEdgeRef: return "DanglingEdgeRef";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::UnknownEntry: return "UnknownEntry";
        case ErrorCode::ReservedIdUse: return "ReservedIdUse";
        case ErrorCode::InvalidDeclaration: return "InvalidDeclaration";
        case ErrorCode::UnknownResolver: return "UnknownResolver";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::UnknownRule: return "UnknownRule";
        case ErrorCode::InactiveSession: return "InactiveSession";
        case ErrorCode::ConflictingBinding: return "ConflictingBinding";
        case ErrorCode::EmptyList: return "EmptyList";
        case ErrorCode::MultipleRoots: return "MultipleRoots";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::CellCountMismatch: return "CellCountMismatch";
        case ErrorCode::UnknownRegionInBorder: return "UnknownRegionInBorder";
        case ErrorCode::EmptyScene: return "EmptyScene";
        case ErrorCode::DuplicateMarkId: return "DuplicateMarkId";
        case ErrorCode::MissingTemplateField: return "MissingTemplateField";
        case ErrorCode::MissingRenderSpec: return "MissingRenderSpec";
        case ErrorCode::BadRequest: return "BadRequest";
        case ErrorCode::UnknownSession: return "UnknownSession";
    }
    return "Unknown";
}

std::string_view to_string(Direction direction) noexcept {
    return direction == Direction::toward_target ? "toward_target" : "toward_source";
}

// --- ResolverRegistry -------------------------------------------------------

std::shared_ptr<const ResolverRegistry> ResolverRegistry::builtin() {
    static const auto registry = [] {
        auto r = std::make_shared<ResolverRegistry>();
        resolvers::register_builtins(*r);
        return std::shared_ptr<const ResolverRegistry>(std::move(r));
    }();
    return registry;
}

void ResolverRegistry::add(std::string name, Resolver resolver) {
    resolvers_.insert_or_assign(std::move(name), std::move(resolver));
}

bool ResolverRegistry::contains(std::string_view name) const {
    return resolvers_.find(name) != resolvers_.end();
}

const Resolver* ResolverRegistry::find(std::string_view name) const {
    auto it = resolvers_.find(name);
    return it == resolvers_.end() ? nullptr : &it->second;
}

// --- Graph ------------------------------------------------------------------

Graph::Graph(const Graph& other)
    : nodes_(other.nodes_),
      edges_(other.edges_),
      rules_(other.rules_),
      universal_edges_(other.universal_edges_),
      entry_(other.entry_),
      exit_target_(other.exit_target_),
      drill_rule_(other.drill_rule_),
      resolvers_(other.resolvers_) {
    reindex();
}

Graph& Graph::operator=(const Graph& other) {
    if (this != &other) {
        Graph copy(other);
        *this = std::move(copy);
    }
    return *this;
}

void Graph::reindex() {
    node_index_.clear();
    edge_index_.clear();
    rule_index_.clear();
    node_index_.reserve(nodes_.size());
    edge_index_.reserve(edges_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) node_index_.emplace(nodes_[i].id, i);
    for (std::size_t i = 0; i < edges_.size(); ++i) edge_index_.emplace(edges_[i].id, i);
    for (std::size_t i = 0; i < rules_.size(); ++i) rule_index_.emplace(rules_[i].name, i);
}

const Node* Graph::find_node(std::string_view id) const {
    auto it = node_index_.find(id);
    return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const Edge* Graph::find_edge(std::string_view id) const {
    auto it = edge_index_.find(id);
    return it == edge_index_.end() ? nullptr : &edges_[it->second];
}

const NavigationRule* Graph::find_rule(std::string_view name) const {
    auto it = rule_index_.find(name);
    return it == rule_index_.end() ? nullptr : &rules_[it->second];
}

const Node& Graph::node(std::string_view id) const {
    if (const Node* n = find_node(id)) return *n;
    throw Error(ErrorCode::DanglingEdgeRef, "unknown node '" + std::string(id) + "'");
}

const NavigationRule& Graph::rule(std::string_view name) const {
    if (const NavigationRule* r = find_rule(name)) return *r;
    throw Error(ErrorCode::UnknownRule, "unknown rule '" + std::string(name) + "'");
}

bool Graph::operator==(const Graph& other) const {
    if (nodes_.size() != other.nodes_.size() || edges_.size() != other.edges_.size() ||
        rules_.size() != other.rules_.size())
        return false;
    for (const auto& n : nodes_) {
        const Node* o = other.find_node(n.id);
        if (o == nullptr || !(*o == n)) return false;
    }
    for (const auto& e : edges_) {
        const Edge* o = other.find_edge(e.id);
        if (o == nullptr || !(*o == e)) return false;
    }
    for (const auto& r : rules_) {
        const NavigationRule* o = other.find_rule(r.name);
        if (o == nullptr || !(*o == r)) return false;
    }
    return universal_edges_ == other.universal_edges_ && entry_ == other.entry_ &&
           exit_target_ == other.exit_target_ && drill_rule_ == other.drill_rule_;
}

// --- build ------------------------------------------------------------------

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

/// Throws DuplicateId when an index holds fewer entries than its vector.
template <typename T, typename Key>
void check_unique(const std::vector<T>& items, std::size_t indexed, Key key, std::string_view what) {
    if (indexed == items.size()) return;
    std::unordered_set<std::string_view> seen;
    for (const auto& item : items) {
        if (!seen.insert(key(item)).second)
            fail(ErrorCode::DuplicateId, "duplicate " + std::string(what) + " id " + squote(key(item)));
    }
}

}  // namespace

Graph build_graph(GraphDecl decl, std::shared_ptr<const ResolverRegistry> resolvers) {
    if (!resolvers) resolvers = ResolverRegistry::builtin();

    for (const auto& node : decl.nodes) {
        if (node.id.empty()) fail(ErrorCode::InvalidDeclaration, "node with empty id");
        if (node.id == kExitNode)
            fail(ErrorCode::ReservedIdUse, squote(kExitNode) + " may not be declared as a node");
        if (node.render) check_geometry(node.render->geometry);
    }
    for (const auto& rule : decl.rules) {
        if (rule.name.empty()) fail(ErrorCode::InvalidDeclaration, "rule with empty name");
    }
    for (const auto& edge : decl.edges) {
        if (edge.id.empty()) fail(ErrorCode::InvalidDeclaration, "edge with empty id");
        if (edge.rules.empty())
            fail(ErrorCode::InvalidDeclaration, "edge " + squote(edge.id) + " lists no rules");
    }

    Graph g;
    g.nodes_ = std::move(decl.nodes);
    g.edges_ = std::move(decl.edges);
    g.rules_ = std::move(decl.rules);
    g.reindex();
    check_unique(g.nodes_, g.node_index_.size(), [](const Node& n) -> const std::string& { return n.id; },
                 "node");
    check_unique(g.edges_, g.edge_index_.size(), [](const Edge& e) -> const std::string& { return e.id; },
                 "edge");
    check_unique(g.rules_, g.rule_index_.size(),
                 [](const NavigationRule& r) -> const std::string& { return r.name; }, "rule");

    auto check_endpoint = [&](const Edge& edge, const Endpoint& endpoint) {
        if (endpoint.is_literal()) {
            if (endpoint.ref != kExitNode && g.find_node(endpoint.ref) == nullptr)
                fail(ErrorCode::DanglingEdgeRef,
                     "edge " + squote(edge.id) + " references unknown node " + squote(endpoint.ref));
        } else if (!resolvers->contains(endpoint.ref)) {
            fail(ErrorCode::UnknownResolver,
                 "edge " + squote(edge.id) + " references unknown resolver " + squote(endpoint.ref));
        }
    };
    for (const auto& edge : g.edges_) {
        check_endpoint(edge, edge.source);
        check_endpoint(edge, edge.target);
        for (const auto& rule : edge.rules) {
            if (g.find_rule(rule) == nullptr)
                fail(ErrorCode::DanglingEdgeRef,
                     "edge " + squote(edge.id) + " references unknown rule " + squote(rule));
        }
    }

    for (const auto& node : g.nodes_) {
        for (const auto& edge_id : node.edges) {
            const Edge* edge = g.find_edge(edge_id);
            if (edge == nullptr)
                fail(ErrorCode::DanglingEdgeRef,
                     "node " + squote(node.id) + " lists unknown edge " + squote(edge_id));
            auto participates = [&](const Endpoint& e) {
                return !e.is_literal() || e.ref == node.id;
            };
            if (!participates(edge->source) && !participates(edge->target))
                fail(ErrorCode::DanglingEdgeRef, "node " + squote(node.id) + " lists edge " +
                                                     squote(edge_id) +
                                                     " but is neither its source nor its target");
        }
    }

    for (const auto& edge_id : decl.universal_edges) {
        const Edge* edge = g.find_edge(edge_id);
        if (edge == nullptr)
            fail(ErrorCode::DanglingEdgeRef, "unknown universal edge " + squote(edge_id));
        if (edge->source.is_literal())
            fail(ErrorCode::InvalidDeclaration,
                 "universal edge " + squote(edge_id) + " needs a resolver source");
    }
    g.universal_edges_ = std::move(decl.universal_edges);

    if (decl.entry.empty() || g.find_node(decl.entry) == nullptr)
        fail(ErrorCode::UnknownEntry, "entry " + squote(decl.entry) + " is not a declared node");
    g.entry_ = std::move(decl.entry);
    g.exit_target_ = std::move(decl.exit_target);
    g.drill_rule_ = decl.drill_rule.empty() ? std::string(kDefaultDrillRule) : decl.drill_rule;
    g.resolvers_ = std::move(resolvers);
    return g;
}

// --- navigation queries ------------------------------------------------------

std::optional<NodeId> resolve_endpoint(const Graph& graph, const Endpoint& endpoint,
                                       const ResolverContext& ctx) {
    if (endpoint.is_literal()) return endpoint.ref;
    const Resolver* resolver = graph.resolvers().find(endpoint.ref);
    if (resolver == nullptr)
        throw Error(ErrorCode::UnknownResolver, "unknown resolver " + squote(endpoint.ref));
    return (*resolver)(graph, ctx);
}

namespace {

template <typename Visit>
void scan_edges(const Graph& graph, std::string_view node_id, std::string_view rule_name,
                const ResolverContext& ctx, Visit visit) {
    const Node& node = graph.node(node_id);
    const NavigationRule& rule = graph.rule(rule_name);
    const bool forward = rule.direction == Direction::toward_target;

    auto consider = [&](const std::string& edge_id) -> bool {
        const Edge& edge = *graph.find_edge(edge_id);
        if (std::find(edge.rules.begin(), edge.rules.end(), rule.name) == edge.rules.end())
            return true;
        const Endpoint& from = forward ? edge.source : edge.target;
        const Endpoint& to = forward ? edge.target : edge.source;
        // Literal mismatch is the common case; skip it before calling resolvers.
        if (from.is_literal() && from.ref != node_id) return true;
        auto origin = resolve_endpoint(graph, from, ctx);
        if (!origin || *origin != node_id) return true;
        auto destination = resolve_endpoint(graph, to, ctx);
        if (!destination) return true;
        return visit(EdgeMatch{edge.id, std::move(*destination)});
    };

    for (const auto& edge_id : node.edges) {
        if (!consider(edge_id)) return;
    }
    for (const auto& edge_id : graph.universal_edges()) {
        if (!consider(edge_id)) return;
    }
}

}  // namespace

std::vector<EdgeMatch> applicable_edges(const Graph& graph, std::string_view node,
                                        std::string_view rule, const ResolverContext& ctx) {
    std::vector<EdgeMatch> out;
    scan_edges(graph, node, rule, ctx, [&](EdgeMatch m) {
        out.push_back(std::move(m));
        return true;
    });
    return out;
}

std::optional<EdgeMatch> first_applicable_edge(const Graph& graph, std::string_view node,
                                               std::string_view rule, const ResolverContext& ctx) {
    std::optional<EdgeMatch> first;
    scan_edges(graph, node, rule, ctx, [&](EdgeMatch m) {
        first = std::move(m);
        return false;
    });
    return first;
}

ResolverContext static_context(const Graph& graph, std::string_view node) {
    return ResolverContext{std::string(node), std::nullopt, graph.entry(), {}};
}

}  // namespace dnav
