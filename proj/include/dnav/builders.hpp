#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/graph.hpp"
#include "dnav/semantics.hpp"

namespace dnav::builders {

/// Per-node overrides layered on top of what a builder generates.
struct NodeAttributes {
    std::optional<std::string> label;
    std::optional<std::string> description;
    std::optional<Role> role;
    std::optional<std::string> external_ref;
    std::optional<Render> render;
    nlohmann::json datum = nlohmann::json::object();  // merged into the generated datum
};

/// Settings shared by every builder.
struct Scaffold {
    /// Replaces the default input bindings of the named rules.
    std::map<std::string, std::vector<std::string>> bindings;
    std::map<NodeId, NodeAttributes> attributes;
    std::optional<std::string> exit_target;
    /// Universal "any-exit" edge under this rule; empty disables it.
    std::string exit_rule = "exit";
    /// Universal "any-return" edge (back to the previous node); empty disables it.
    std::string undo_rule = "undo";
};

struct ListSpec {
    std::vector<NodeId> items;
    bool circular = false;
    std::string forward = "forward";
    std::string backward = "backward";
    Scaffold scaffold;
};

struct TreeSpec {
    struct Entry {
        NodeId id;
        std::optional<NodeId> parent;
    };
    std::vector<Entry> nodes;
    bool sibling_circular = false;
    std::string next_sibling = "right";
    std::string prev_sibling = "left";
    std::string drill = "drill";
    std::string up = "up";
    Scaffold scaffold;
};

/// Two category trees sharing one grid of cells, e.g. contests x teams in a
/// stacked bar chart. Cells are listed row-major: cells[i * |dimB| + j] is
/// the cell of (dimA[i], dimB[j]).
struct DualHierarchySpec {
    NodeId root = "chart";
    NodeId dim_a_parent = "legend";
    NodeId dim_b_parent = "x-axis";
    std::vector<NodeId> dim_a;
    std::vector<NodeId> dim_b;
    std::vector<NodeId> cells;
    std::string stack_next = "down";
    std::string stack_prev = "up";
    std::string across_next = "right";
    std::string across_prev = "left";
    std::string drill = "drill";
    std::string to_a = "up-to-legend";
    std::string to_b = "up-to-axis";
    bool circular_within_stack = true;
    bool circular_across = false;
    Scaffold scaffold;
};

/// Regions with unordered border pairs. One node per region plus a root;
/// border relationships are walked as neighbor rings rather than copied
/// into nodes.
struct AdjacencySpec {
    NodeId root = "root";
    std::vector<NodeId> regions;
    std::vector<std::pair<NodeId, NodeId>> borders;
    std::string next_region = "right";
    std::string prev_region = "left";
    std::string next_neighbor = "next-neighbor";
    std::string prev_neighbor = "previous-neighbor";
    std::string drill_to_neighbor_list = "drill";
    std::string up = "up";
    Scaffold scaffold;
};

Graph build_list(const ListSpec& spec);                    // EmptyList
Graph build_tree(const TreeSpec& spec);                    // MultipleRoots, CycleDetected
Graph build_dual_hierarchy(const DualHierarchySpec& spec); // CellCountMismatch
Graph build_adjacency(const AdjacencySpec& spec);          // UnknownRegionInBorder

/// Neighbor lists in ring order (input order of the border pairs).
std::map<NodeId, std::vector<NodeId>> neighbor_rings(const AdjacencySpec& spec);

// JSON spec documents; "kind" selects the builder.
ListSpec list_spec_from_json(const nlohmann::json& j);
TreeSpec tree_spec_from_json(const nlohmann::json& j);
DualHierarchySpec dual_hierarchy_spec_from_json(const nlohmann::json& j);
AdjacencySpec adjacency_spec_from_json(const nlohmann::json& j);
Graph build_from_spec(const nlohmann::json& document);

}  // namespace dnav::builders
