#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/engine.hpp"
#include "dnav/graph.hpp"
#include "dnav/semantics.hpp"

namespace dnav {

enum class RenderMode { on_demand, pre_rendered };
enum class Verbosity { terse, normal, verbose };

std::string_view to_string(RenderMode mode) noexcept;
std::optional<RenderMode> render_mode_from_string(std::string_view s) noexcept;
std::string_view to_string(Verbosity verbosity) noexcept;
std::optional<Verbosity> verbosity_from_string(std::string_view s) noexcept;

struct FocusTarget {
    enum class Kind { node, external, none };

    Kind kind = Kind::none;
    std::string ref;

    bool operator==(const FocusTarget&) const = default;
};

/// Instructions for a host: elements to drop, elements to materialize, and
/// where focus goes afterwards.
struct RenderPlan {
    std::vector<NodeId> removals;
    std::vector<std::pair<NodeId, RenderSpec>> additions;
    FocusTarget focus;

    bool operator==(const RenderPlan&) const = default;
};

nlohmann::json to_json(const RenderPlan& plan);

struct PlanOptions {
    /// Nodes without geometry get a semantics-only entry. When false they
    /// raise Error(MissingRenderSpec) instead.
    bool allow_fallback = true;
};

/// Render spec for one node, falling back to a non-visual entry.
RenderSpec render_spec_for(const Node& node, const PlanOptions& options = {});

/// Plans the host-side work for one move result.
///
/// On demand, only the focused element exists: a move removes the origin and
/// adds the destination, entering adds the entry, exiting only removes. With
/// pre-rendered structures every element already exists and the plan only
/// moves focus. Blocked moves plan nothing. "::exit" never gets a render spec;
/// focus goes to the graph's exit target instead.
RenderPlan plan_render(const Graph& graph, const MoveResult& result, RenderMode mode,
                       const PlanOptions& options = {});

/// Announcement text for a node. Terse is the label alone; normal adds the
/// description and "k of n" position; verbose also names the role.
std::string describe(const Node& node, Verbosity verbosity = Verbosity::normal);

}  // namespace dnav
