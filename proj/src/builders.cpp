#include "dnav/builders.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "dnav/error.hpp"
#include "dnav/resolvers.hpp"

namespace dnav::builders {

namespace {

using nlohmann::json;

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

/// Accumulates a GraphDecl while keeping node edge lists consistent with the
/// directions of the rules each edge carries.
class Assembler {
   public:
    explicit Assembler(const Scaffold& scaffold) : scaffold_(scaffold) {}

    void rule(const std::string& name, Direction direction, std::vector<std::string> default_bindings) {
        if (name.empty()) fail(ErrorCode::InvalidDeclaration, "builder rule names must be non-empty");
        auto it = scaffold_.bindings.find(name);
        auto bindings = it != scaffold_.bindings.end() ? it->second : std::move(default_bindings);
        if (auto existing = rule_index_.find(name); existing != rule_index_.end()) {
            auto& r = decl_.rules[existing->second];
            if (r.direction != direction)
                fail(ErrorCode::InvalidDeclaration, "rule '" + name + "' is used with both directions");
            for (auto& b : bindings) {
                if (std::find(r.bindings.begin(), r.bindings.end(), b) == r.bindings.end())
                    r.bindings.push_back(std::move(b));
            }
            return;
        }
        rule_index_.emplace(name, decl_.rules.size());
        decl_.rules.push_back({name, direction, std::move(bindings)});
    }

    void node(const NodeId& id, Role role, std::string label, std::optional<Position> position = {}) {
        if (node_index_.contains(id)) fail(ErrorCode::DuplicateId, "duplicate node id '" + id + "'");
        node_index_.emplace(id, decl_.nodes.size());
        Node n;
        n.id = id;
        n.semantics.role = role;
        n.semantics.label = std::move(label);
        n.semantics.position = position;
        decl_.nodes.push_back(std::move(n));
    }

    Node& node_ref(const NodeId& id) { return decl_.nodes.at(node_index_.at(id)); }

    /// Literal edge; listed on whichever endpoints can move along it.
    void edge(std::string id, const NodeId& source, const NodeId& target, std::vector<std::string> rules) {
        bool forward = false, backward = false;
        for (const auto& r : rules) {
            const auto dir = decl_.rules.at(rule_index_.at(r)).direction;
            (dir == Direction::toward_target ? forward : backward) = true;
        }
        if (forward) node_ref(source).edges.push_back(id);
        if (backward && target != source) node_ref(target).edges.push_back(id);
        decl_.edges.push_back({std::move(id), Endpoint::literal(source), Endpoint::literal(target), std::move(rules)});
    }

    /// Edge with resolver endpoints shared by many nodes via their edge lists.
    void shared_edge(std::string id, Endpoint source, Endpoint target, std::vector<std::string> rules) {
        decl_.edges.push_back({std::move(id), std::move(source), std::move(target), std::move(rules)});
    }

    void list_on(const NodeId& node, const std::string& edge) { node_ref(node).edges.push_back(edge); }

    /// Forward/backward chain over `ids`; optionally closes the loop.
    void chain(const std::string& prefix, const std::vector<NodeId>& ids, bool circular, const std::string& next,
               const std::string& prev) {
        for (std::size_t i = 0; i + 1 < ids.size(); ++i)
            edge(prefix + ":" + ids[i] + "|" + ids[i + 1], ids[i], ids[i + 1], {next, prev});
        if (circular && ids.size() > 1)
            edge(prefix + ":" + ids.back() + "|" + ids.front(), ids.back(), ids.front(), {next, prev});
    }

    void datum(const NodeId& id, const std::string& key, json value) { node_ref(id).datum[key] = std::move(value); }

    Graph finish(NodeId entry, std::string drill_rule = std::string(kDefaultDrillRule)) {
        if (!scaffold_.exit_rule.empty()) {
            rule(scaffold_.exit_rule, Direction::toward_target, {"Escape"});
            shared_edge("any-exit", Endpoint::resolver(std::string(resolvers::kCurrent)),
                        Endpoint::resolver(std::string(resolvers::kExit)), {scaffold_.exit_rule});
            decl_.universal_edges.push_back("any-exit");
        }
        if (!scaffold_.undo_rule.empty()) {
            rule(scaffold_.undo_rule, Direction::toward_target, {});
            shared_edge("any-return", Endpoint::resolver(std::string(resolvers::kCurrent)),
                        Endpoint::resolver(std::string(resolvers::kPrevious)), {scaffold_.undo_rule});
            decl_.universal_edges.push_back("any-return");
        }
        for (const auto& [id, attrs] : scaffold_.attributes) {
            auto it = node_index_.find(id);
            if (it == node_index_.end())
                fail(ErrorCode::DanglingEdgeRef, "attributes given for unknown node '" + id + "'");
            Node& n = decl_.nodes[it->second];
            if (attrs.label) n.semantics.label = *attrs.label;
            if (attrs.description) n.semantics.description = *attrs.description;
            if (attrs.role) n.semantics.role = *attrs.role;
            if (attrs.external_ref) n.semantics.external_ref = attrs.external_ref;
            if (attrs.render) n.render = attrs.render;
            for (const auto& [key, value] : attrs.datum.items()) n.datum[key] = value;
        }
        decl_.entry = std::move(entry);
        decl_.exit_target = scaffold_.exit_target;
        decl_.drill_rule = std::move(drill_rule);
        return build_graph(std::move(decl_));
    }

   private:
    const Scaffold& scaffold_;
    GraphDecl decl_;
    std::unordered_map<std::string, std::size_t> node_index_;
    std::unordered_map<std::string, std::size_t> rule_index_;
};

Position position(std::size_t i, std::size_t n) { return Position{i + 1, n}; }

void require_unique(const std::vector<NodeId>& ids, std::string_view what) {
    std::set<NodeId> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second) fail(ErrorCode::DuplicateId, "duplicate " + std::string(what) + " '" + id + "'");
    }
}

}  // namespace

// --- list ---------------------------------------------------------------------

Graph build_list(const ListSpec& spec) {
    if (spec.items.empty()) fail(ErrorCode::EmptyList, "list needs at least one item");
    require_unique(spec.items, "list item");
    Assembler a(spec.scaffold);
    a.rule(spec.forward, Direction::toward_target, {"ArrowDown"});
    a.rule(spec.backward, Direction::toward_source, {"ArrowUp"});
    for (std::size_t i = 0; i < spec.items.size(); ++i)
        a.node(spec.items[i], Role::listitem, spec.items[i], position(i, spec.items.size()));
    a.chain("list", spec.items, spec.circular, spec.forward, spec.backward);
    return a.finish(spec.items.front());
}

// --- tree ---------------------------------------------------------------------

Graph build_tree(const TreeSpec& spec) {
    std::vector<NodeId> roots;
    std::map<NodeId, std::vector<NodeId>> children;
    std::set<NodeId> declared;
    for (const auto& e : spec.nodes) {
        if (!declared.insert(e.id).second) fail(ErrorCode::DuplicateId, "duplicate tree node '" + e.id + "'");
        if (!e.parent) roots.push_back(e.id);
    }
    for (const auto& e : spec.nodes) {
        if (!e.parent) continue;
        if (!declared.contains(*e.parent))
            fail(ErrorCode::InvalidDeclaration, "node '" + e.id + "' has unknown parent '" + *e.parent + "'");
        children[*e.parent].push_back(e.id);
    }
    if (roots.size() > 1) fail(ErrorCode::MultipleRoots, "tree has " + std::to_string(roots.size()) + " roots");
    if (roots.empty()) {
        if (spec.nodes.empty()) fail(ErrorCode::MultipleRoots, "tree has no root");
        fail(ErrorCode::CycleDetected, "every node has a parent, so the parent relation is cyclic");
    }

    // Everything must hang off the root; anything else sits on a cycle.
    std::size_t reached = 0;
    std::deque<NodeId> queue{roots.front()};
    while (!queue.empty()) {
        ++reached;
        auto id = queue.front();
        queue.pop_front();
        if (auto it = children.find(id); it != children.end()) queue.insert(queue.end(), it->second.begin(), it->second.end());
    }
    if (reached != spec.nodes.size()) fail(ErrorCode::CycleDetected, "parent relation contains a cycle");

    Assembler a(spec.scaffold);
    a.rule(spec.next_sibling, Direction::toward_target, {"ArrowRight"});
    a.rule(spec.prev_sibling, Direction::toward_source, {"ArrowLeft"});
    a.rule(spec.drill, Direction::toward_target, {"Enter"});
    a.rule(spec.up, Direction::toward_target, {"Backspace"});

    std::map<NodeId, Position> positions;
    for (const auto& [parent, kids] : children) {
        for (std::size_t i = 0; i < kids.size(); ++i) positions[kids[i]] = position(i, kids.size());
    }
    for (const auto& e : spec.nodes) {
        const bool has_children = children.contains(e.id);
        std::optional<Position> pos;
        if (auto it = positions.find(e.id); it != positions.end()) pos = it->second;
        a.node(e.id, has_children ? Role::group : Role::listitem, e.id, pos);
    }
    for (const auto& e : spec.nodes) {
        auto it = children.find(e.id);
        if (it == children.end()) continue;
        const auto& kids = it->second;
        a.edge("drill:" + e.id, e.id, kids.front(), {spec.drill});
        a.chain("sibling", kids, spec.sibling_circular, spec.next_sibling, spec.prev_sibling);
        for (const auto& kid : kids) a.edge("up:" + kid, kid, e.id, {spec.up});
    }
    return a.finish(roots.front(), spec.drill);
}

// --- dual hierarchy -------------------------------------------------------------

Graph build_dual_hierarchy(const DualHierarchySpec& spec) {
    const std::size_t na = spec.dim_a.size(), nb = spec.dim_b.size();
    if (na == 0 || nb == 0) fail(ErrorCode::CellCountMismatch, "both category dimensions need entries");
    if (spec.cells.size() != na * nb)
        fail(ErrorCode::CellCountMismatch, "expected " + std::to_string(na * nb) + " cells (" + std::to_string(na) +
                                               " x " + std::to_string(nb) + "), got " +
                                               std::to_string(spec.cells.size()));
    auto cell = [&](std::size_t i, std::size_t j) -> const NodeId& { return spec.cells[i * nb + j]; };

    Assembler a(spec.scaffold);
    a.rule(spec.stack_next, Direction::toward_target, {"ArrowDown"});
    a.rule(spec.stack_prev, Direction::toward_source, {"ArrowUp"});
    a.rule(spec.across_next, Direction::toward_target, {"ArrowRight"});
    a.rule(spec.across_prev, Direction::toward_source, {"ArrowLeft"});
    a.rule(spec.drill, Direction::toward_target, {"Enter"});
    a.rule(spec.to_a, Direction::toward_target, {"KeyL"});
    a.rule(spec.to_b, Direction::toward_target, {"Backspace"});

    a.node(spec.root, Role::figure, spec.root);
    a.node(spec.dim_a_parent, Role::group, spec.dim_a_parent, position(0, 2));
    a.node(spec.dim_b_parent, Role::group, spec.dim_b_parent, position(1, 2));
    for (std::size_t i = 0; i < na; ++i) a.node(spec.dim_a[i], Role::group, spec.dim_a[i], position(i, na));
    for (std::size_t j = 0; j < nb; ++j) a.node(spec.dim_b[j], Role::group, spec.dim_b[j], position(j, nb));
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            a.node(cell(i, j), Role::image, spec.dim_b[j] + ", " + spec.dim_a[i], position(i, na));
            a.datum(cell(i, j), "a", spec.dim_a[i]);
            a.datum(cell(i, j), "b", spec.dim_b[j]);
        }
    }

    // Scaffold: root -> the two category parents, which sit side by side.
    a.edge("drill:" + spec.root, spec.root, spec.dim_a_parent, {spec.drill});
    a.chain("across", {spec.dim_a_parent, spec.dim_b_parent}, false, spec.across_next, spec.across_prev);
    a.edge("up:" + spec.dim_a_parent, spec.dim_a_parent, spec.root, {spec.to_a, spec.to_b});
    a.edge("up:" + spec.dim_b_parent, spec.dim_b_parent, spec.root, {spec.to_a, spec.to_b});

    // Category levels.
    a.edge("drill:" + spec.dim_a_parent, spec.dim_a_parent, spec.dim_a.front(), {spec.drill});
    a.edge("drill:" + spec.dim_b_parent, spec.dim_b_parent, spec.dim_b.front(), {spec.drill});
    a.chain("stack", spec.dim_a, spec.circular_within_stack, spec.stack_next, spec.stack_prev);
    a.chain("across", spec.dim_b, spec.circular_across, spec.across_next, spec.across_prev);
    for (std::size_t i = 0; i < na; ++i) {
        a.edge("drill:" + spec.dim_a[i], spec.dim_a[i], cell(i, 0), {spec.drill});
        a.edge("up:" + spec.dim_a[i], spec.dim_a[i], spec.dim_a_parent, {spec.to_a});
    }
    for (std::size_t j = 0; j < nb; ++j) {
        a.edge("drill:" + spec.dim_b[j], spec.dim_b[j], cell(0, j), {spec.drill});
        a.edge("up:" + spec.dim_b[j], spec.dim_b[j], spec.dim_b_parent, {spec.to_b});
    }

    // Cells: stacks (columns) and rows, plus one lift to each parent.
    for (std::size_t j = 0; j < nb; ++j) {
        std::vector<NodeId> column;
        for (std::size_t i = 0; i < na; ++i) column.push_back(cell(i, j));
        a.chain("stack", column, spec.circular_within_stack, spec.stack_next, spec.stack_prev);
    }
    for (std::size_t i = 0; i < na; ++i) {
        std::vector<NodeId> row(spec.cells.begin() + static_cast<std::ptrdiff_t>(i * nb),
                                spec.cells.begin() + static_cast<std::ptrdiff_t>((i + 1) * nb));
        a.chain("across", row, spec.circular_across, spec.across_next, spec.across_prev);
        for (std::size_t j = 0; j < nb; ++j) {
            a.edge("up-a:" + cell(i, j), cell(i, j), spec.dim_a[i], {spec.to_a});
            a.edge("up-b:" + cell(i, j), cell(i, j), spec.dim_b[j], {spec.to_b});
        }
    }
    return a.finish(spec.root, spec.drill);
}

// --- adjacency -------------------------------------------------------------------

std::map<NodeId, std::vector<NodeId>> neighbor_rings(const AdjacencySpec& spec) {
    std::set<NodeId> regions(spec.regions.begin(), spec.regions.end());
    std::map<NodeId, std::vector<NodeId>> rings;
    for (const auto& r : spec.regions) rings[r];
    auto add = [&](const NodeId& from, const NodeId& to) {
        auto& ring = rings[from];
        if (std::find(ring.begin(), ring.end(), to) == ring.end()) ring.push_back(to);
    };
    for (const auto& [x, y] : spec.borders) {
        for (const auto* id : {&x, &y}) {
            if (!regions.contains(*id))
                fail(ErrorCode::UnknownRegionInBorder, "border references unknown region '" + *id + "'");
        }
        if (x == y) fail(ErrorCode::InvalidDeclaration, "region '" + x + "' cannot border itself");
        add(x, y);
        add(y, x);
    }
    return rings;
}

Graph build_adjacency(const AdjacencySpec& spec) {
    require_unique(spec.regions, "region");
    const auto rings = neighbor_rings(spec);

    Assembler a(spec.scaffold);
    a.rule(spec.next_region, Direction::toward_target, {"ArrowRight"});
    a.rule(spec.prev_region, Direction::toward_source, {"ArrowLeft"});
    a.rule(spec.next_neighbor, Direction::toward_target, {"ArrowDown"});
    a.rule(spec.prev_neighbor, Direction::toward_target, {"ArrowUp"});
    a.rule(spec.drill_to_neighbor_list, Direction::toward_target, {"Enter"});
    a.rule(spec.up, Direction::toward_target, {"Backspace"});

    a.node(spec.root, Role::figure, spec.root);
    const auto n = spec.regions.size();
    for (std::size_t i = 0; i < n; ++i) a.node(spec.regions[i], Role::image, spec.regions[i], position(i, n));

    const Endpoint current = Endpoint::resolver(std::string(resolvers::kCurrent));
    a.shared_edge("ring-up", current, Endpoint::resolver(std::string(resolvers::kRingAnchor)), {spec.up});
    a.shared_edge("ring-next", current, Endpoint::resolver(std::string(resolvers::kRingNext)), {spec.next_neighbor});
    a.shared_edge("ring-prev", current, Endpoint::resolver(std::string(resolvers::kRingPrev)), {spec.prev_neighbor});

    if (!spec.regions.empty()) a.edge("drill:" + spec.root, spec.root, spec.regions.front(), {spec.drill_to_neighbor_list});
    for (const auto& region : spec.regions) {
        // Ring edges come first so "up" inside a ring returns to its anchor.
        a.list_on(region, "ring-up");
        a.list_on(region, "ring-next");
        a.list_on(region, "ring-prev");
    }
    a.chain("regions", spec.regions, false, spec.next_region, spec.prev_region);
    for (const auto& region : spec.regions) {
        const auto& ring = rings.at(region);
        a.datum(region, std::string(resolvers::kRingKey), ring);
        if (!ring.empty()) a.edge("neighbors:" + region, region, ring.front(), {spec.drill_to_neighbor_list});
        a.edge("up:" + region, region, spec.root, {spec.up});
    }
    return a.finish(spec.root, spec.drill_to_neighbor_list);
}

// --- JSON spec documents ----------------------------------------------------------

namespace {

[[noreturn]] void spec_error(const std::string& message) { throw Error(ErrorCode::ParseError, "builder spec: " + message); }

std::vector<NodeId> id_list(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return {};
    if (!it->is_array()) spec_error(std::string("'") + key + "' must be an array of ids");
    std::vector<NodeId> out;
    for (const auto& item : *it) {
        if (!item.is_string()) spec_error(std::string("'") + key + "' must be an array of ids");
        out.push_back(item.get<std::string>());
    }
    return out;
}

void read_string(const json& j, const char* key, std::string& out) {
    if (auto it = j.find(key); it != j.end()) {
        if (!it->is_string()) spec_error(std::string("'") + key + "' must be a string");
        out = it->get<std::string>();
    }
}

void read_bool(const json& j, const char* key, bool& out) {
    if (auto it = j.find(key); it != j.end()) {
        if (!it->is_boolean()) spec_error(std::string("'") + key + "' must be a boolean");
        out = it->get<bool>();
    }
}

/// Rule names live under "rules": {"<role>": "<rule name>"}.
void read_rule(const json& j, const char* role, std::string& out) {
    if (auto rules = j.find("rules"); rules != j.end()) read_string(*rules, role, out);
}

NodeAttributes attributes_from_json(const json& j) {
    if (!j.is_object()) spec_error("node attributes must be objects");
    NodeAttributes a;
    auto text = [&](const char* key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end()) return std::nullopt;
        if (!it->is_string()) spec_error(std::string("attribute '") + key + "' must be a string");
        return it->get<std::string>();
    };
    a.label = text("label");
    a.description = text("description");
    a.external_ref = text("externalRef");
    if (auto role = text("role")) {
        a.role = role_from_string(*role);
        if (!a.role) spec_error("unknown role '" + *role + "'");
    }
    if (auto it = j.find("render"); it != j.end()) a.render = render_from_json(*it);
    if (auto it = j.find("datum"); it != j.end()) {
        if (!it->is_object()) spec_error("attribute 'datum' must be an object");
        a.datum = *it;
    }
    return a;
}

Scaffold scaffold_from_json(const json& j) {
    Scaffold s;
    if (auto it = j.find("bindings"); it != j.end()) {
        if (!it->is_object()) spec_error("'bindings' must map rule names to token arrays");
        for (const auto& [rule, tokens] : it->items()) {
            if (!tokens.is_array()) spec_error("bindings for '" + rule + "' must be an array");
            auto& list = s.bindings[rule];
            for (const auto& t : tokens) {
                if (!t.is_string()) spec_error("bindings for '" + rule + "' must be strings");
                list.push_back(t.get<std::string>());
            }
        }
    }
    if (auto it = j.find("attributes"); it != j.end()) {
        if (!it->is_object()) spec_error("'attributes' must be keyed by node id");
        for (const auto& [id, attrs] : it->items()) s.attributes.emplace(id, attributes_from_json(attrs));
    }
    if (auto it = j.find("exitTarget"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) spec_error("'exitTarget' must be a string");
        s.exit_target = it->get<std::string>();
    }
    read_rule(j, "exit", s.exit_rule);
    read_rule(j, "undo", s.undo_rule);
    return s;
}

}  // namespace

ListSpec list_spec_from_json(const json& j) {
    ListSpec s;
    s.items = id_list(j, "items");
    read_bool(j, "circular", s.circular);
    read_rule(j, "forward", s.forward);
    read_rule(j, "backward", s.backward);
    s.scaffold = scaffold_from_json(j);
    return s;
}

TreeSpec tree_spec_from_json(const json& j) {
    TreeSpec s;
    auto nodes = j.find("nodes");
    if (nodes == j.end() || !nodes->is_array()) spec_error("tree needs a 'nodes' array");
    for (const auto& n : *nodes) {
        if (!n.is_object() || !n.contains("id") || !n["id"].is_string()) spec_error("tree nodes need an 'id'");
        TreeSpec::Entry e{n["id"].get<std::string>(), std::nullopt};
        if (auto p = n.find("parent"); p != n.end() && !p->is_null()) {
            if (!p->is_string()) spec_error("'parent' must be an id or null");
            e.parent = p->get<std::string>();
        }
        s.nodes.push_back(std::move(e));
    }
    read_bool(j, "siblingCircular", s.sibling_circular);
    read_rule(j, "nextSibling", s.next_sibling);
    read_rule(j, "prevSibling", s.prev_sibling);
    read_rule(j, "drill", s.drill);
    read_rule(j, "up", s.up);
    s.scaffold = scaffold_from_json(j);
    return s;
}

DualHierarchySpec dual_hierarchy_spec_from_json(const json& j) {
    DualHierarchySpec s;
    read_string(j, "root", s.root);
    auto dimension = [&](const char* key, NodeId& parent, std::vector<NodeId>& categories) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_object()) spec_error(std::string("'") + key + "' must be an object");
        read_string(*it, "parent", parent);
        categories = id_list(*it, "categories");
    };
    dimension("dimA", s.dim_a_parent, s.dim_a);
    dimension("dimB", s.dim_b_parent, s.dim_b);
    s.cells = id_list(j, "cells");
    read_bool(j, "circularWithinStack", s.circular_within_stack);
    read_bool(j, "circularAcross", s.circular_across);
    read_rule(j, "stackNext", s.stack_next);
    read_rule(j, "stackPrev", s.stack_prev);
    read_rule(j, "acrossNext", s.across_next);
    read_rule(j, "acrossPrev", s.across_prev);
    read_rule(j, "drill", s.drill);
    read_rule(j, "toA", s.to_a);
    read_rule(j, "toB", s.to_b);
    s.scaffold = scaffold_from_json(j);
    return s;
}

AdjacencySpec adjacency_spec_from_json(const json& j) {
    AdjacencySpec s;
    read_string(j, "root", s.root);
    s.regions = id_list(j, "regions");
    if (auto it = j.find("borders"); it != j.end()) {
        if (!it->is_array()) spec_error("'borders' must be an array of id pairs");
        for (const auto& pair : *it) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
                spec_error("each border must be a pair of region ids");
            s.borders.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
    }
    read_rule(j, "nextRegion", s.next_region);
    read_rule(j, "prevRegion", s.prev_region);
    read_rule(j, "nextNeighbor", s.next_neighbor);
    read_rule(j, "prevNeighbor", s.prev_neighbor);
    read_rule(j, "drillToNeighborList", s.drill_to_neighbor_list);
    read_rule(j, "up", s.up);
    s.scaffold = scaffold_from_json(j);
    return s;
}

Graph build_from_spec(const json& document) {
    if (!document.is_object()) spec_error("document must be an object");
    const std::string kind = document.value("kind", "");
    if (kind == "list") return build_list(list_spec_from_json(document));
    if (kind == "tree") return build_tree(tree_spec_from_json(document));
    if (kind == "dual_hierarchy") return build_dual_hierarchy(dual_hierarchy_spec_from_json(document));
    if (kind == "adjacency") return build_adjacency(adjacency_spec_from_json(document));
    spec_error("unknown kind '" + kind + "' (expected list, tree, dual_hierarchy or adjacency)");
}

}  // namespace dnav::builders
