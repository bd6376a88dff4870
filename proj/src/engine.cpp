#include "dnav/engine.hpp"

#include "dnav/error.hpp"
#include "dnav/resolvers.hpp"

namespace dnav {

std::string_view to_string(MoveStatus status) noexcept {
    switch (status) {
        case MoveStatus::moved: return "moved";
        case MoveStatus::blocked: return "blocked";
        case MoveStatus::exited: return "exited";
        case MoveStatus::entered: return "entered";
    }
    return "blocked";
}

nlohmann::json to_json(const MoveResult& result) {
    auto opt = [](const std::optional<std::string>& s) {
        return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
    };
    return {{"status", to_string(result.status)},
            {"from", opt(result.from)},
            {"to", opt(result.to)},
            {"rule", opt(result.rule)},
            {"edge", opt(result.edge)}};
}

std::vector<NodeId> FocusState::previous_stack() const {
    std::vector<NodeId> out;
    out.reserve(trail_.size());
    for (const auto& step : trail_) out.push_back(step.node);
    return out;
}

ResolverContext FocusState::context() const {
    std::optional<NodeId> previous;
    if (!trail_.empty()) previous = trail_.back().node;
    return ResolverContext{current_, std::move(previous), graph_->entry(), trail_};
}

void FocusState::push(TrailStep step) {
    trail_.push_back(std::move(step));
    if (history_cap_ > 0 && trail_.size() > history_cap_) trail_.erase(trail_.begin());
}

std::pair<FocusState, MoveResult> enter(std::shared_ptr<const Graph> graph, std::optional<NodeId> entry_override,
                                        EngineOptions options) {
    if (!graph) throw Error(ErrorCode::UnknownEntry, "no graph to enter");
    NodeId entry = entry_override.value_or(graph->entry());
    if (graph->find_node(entry) == nullptr)
        throw Error(ErrorCode::UnknownEntry, "entry '" + entry + "' is not a declared node");

    FocusState state;
    state.graph_ = std::move(graph);
    state.current_ = entry;
    state.active_ = true;
    state.history_cap_ = options.history_cap;
    MoveResult result{MoveStatus::entered, std::nullopt, std::move(entry), std::nullopt, std::nullopt};
    return {std::move(state), std::move(result)};
}

namespace {

void require_active(const FocusState& state) {
    if (!state.active()) throw Error(ErrorCode::InactiveSession, "session has exited");
}

}  // namespace

MoveResult move(FocusState& state, std::string_view rule_name) {
    const Graph& graph = state.graph();
    const NavigationRule& rule = graph.rule(rule_name);  // UnknownRule before InactiveSession
    require_active(state);

    auto match = first_applicable_edge(graph, state.current_, rule.name, state.context());
    if (!match) return MoveResult{MoveStatus::blocked, state.current_, std::nullopt, rule.name, std::nullopt};

    MoveResult result{MoveStatus::moved, state.current_, match->destination, rule.name, match->edge};
    if (match->destination == kExitNode) {
        state.active_ = false;
        result.status = MoveStatus::exited;
        return result;
    }

    const Edge& edge = *graph.find_edge(match->edge);
    const Endpoint& destination =
        rule.direction == Direction::toward_target ? edge.target : edge.source;
    if (destination.is_resolver(resolvers::kPrevious)) {
        state.trail_.pop_back();
    } else {
        state.push(TrailStep{state.current_, rule.name, match->edge});
    }
    state.current_ = std::move(match->destination);
    return result;
}

MoveResult undo(FocusState& state) {
    require_active(state);
    if (state.trail_.empty())
        return MoveResult{MoveStatus::blocked, state.current_, std::nullopt, std::nullopt, std::nullopt};
    MoveResult result{MoveStatus::moved, state.current_, state.trail_.back().node, std::nullopt, std::nullopt};
    state.current_ = state.trail_.back().node;
    state.trail_.pop_back();
    return result;
}

const Node& current_node(const FocusState& state) {
    require_active(state);
    return state.graph().node(state.current());
}

}  // namespace dnav
