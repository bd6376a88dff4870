#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/graph.hpp"

namespace dnav {

enum class MoveStatus { moved, blocked, exited, entered };

std::string_view to_string(MoveStatus status) noexcept;

struct MoveResult {
    MoveStatus status = MoveStatus::blocked;
    std::optional<NodeId> from;
    std::optional<NodeId> to;
    std::optional<std::string> rule;
    std::optional<std::string> edge;

    bool operator==(const MoveResult&) const = default;
};

nlohmann::json to_json(const MoveResult& result);

struct EngineOptions {
    /// Oldest history entries are dropped past this depth.
    std::size_t history_cap = 1024;
};

/// Focus state of one session. Only enter/move/undo mutate it.
class FocusState {
   public:
    const Graph& graph() const noexcept { return *graph_; }
    const std::shared_ptr<const Graph>& graph_ptr() const noexcept { return graph_; }
    const NodeId& current() const noexcept { return current_; }
    bool active() const noexcept { return active_; }

    /// Previous-node stack with the move that left each node, most recent last.
    std::span<const TrailStep> trail() const noexcept { return trail_; }
    std::vector<NodeId> previous_stack() const;
    std::size_t depth() const noexcept { return trail_.size(); }

    ResolverContext context() const;

    bool operator==(const FocusState& other) const {
        return graph_ == other.graph_ && current_ == other.current_ && active_ == other.active_ &&
               trail_ == other.trail_;
    }

   private:
    friend std::pair<FocusState, MoveResult> enter(std::shared_ptr<const Graph>, std::optional<NodeId>,
                                                   EngineOptions);
    friend MoveResult move(FocusState&, std::string_view);
    friend MoveResult undo(FocusState&);

    void push(TrailStep step);

    std::shared_ptr<const Graph> graph_;
    NodeId current_;
    std::vector<TrailStep> trail_;
    bool active_ = false;
    std::size_t history_cap_ = 1024;
};

/// Focuses the graph entry (or `entry_override`). Throws Error(UnknownEntry).
std::pair<FocusState, MoveResult> enter(std::shared_ptr<const Graph> graph,
                                        std::optional<NodeId> entry_override = std::nullopt,
                                        EngineOptions options = {});

/// Follows the first applicable edge for `rule`. Reaching "::exit" ends the
/// session; no applicable edge leaves the state untouched (blocked). An edge
/// whose destination is the "previous" resolver pops history like undo().
/// Throws Error(UnknownRule) or Error(InactiveSession).
MoveResult move(FocusState& state, std::string_view rule);

/// Returns to the top of the previous-node stack and pops it; blocked when
/// the stack is empty. Throws Error(InactiveSession).
MoveResult undo(FocusState& state);

/// Throws Error(InactiveSession) once the session has exited.
const Node& current_node(const FocusState& state);

}  // namespace dnav
