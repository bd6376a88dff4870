#include "dnav/resolvers.hpp"

#include <algorithm>

namespace dnav::resolvers {

namespace {

std::vector<NodeId> ring_of(const Graph& graph, std::string_view anchor) {
    const Node* node = graph.find_node(anchor);
    if (node == nullptr) return {};
    auto it = node->datum.find(kRingKey);
    if (it == node->datum.end() || !it->is_array()) return {};
    std::vector<NodeId> ring;
    for (const auto& member : *it) {
        if (member.is_string()) ring.push_back(member.get<std::string>());
    }
    return ring;
}

bool is_ring_step(const Graph& graph, const TrailStep& step) {
    const Edge* edge = graph.find_edge(step.edge);
    if (edge == nullptr) return false;
    auto ring_endpoint = [](const Endpoint& e) {
        return e.is_resolver(kRingNext) || e.is_resolver(kRingPrev);
    };
    return ring_endpoint(edge->source) || ring_endpoint(edge->target);
}

std::optional<NodeId> ring_step(const Graph& graph, const ResolverContext& ctx, int offset) {
    auto anchor = ring_anchor(graph, ctx);
    if (!anchor) return std::nullopt;
    auto ring = ring_of(graph, *anchor);
    auto it = std::find(ring.begin(), ring.end(), ctx.current);
    if (it == ring.end() || ring.size() < 2) return std::nullopt;
    const auto n = static_cast<std::ptrdiff_t>(ring.size());
    auto i = (std::distance(ring.begin(), it) + offset + n) % n;
    return ring[static_cast<std::size_t>(i)];
}

}  // namespace

std::optional<NodeId> ring_anchor(const Graph& graph, const ResolverContext& ctx) {
    auto i = ctx.trail.size();
    while (i > 0 && is_ring_step(graph, ctx.trail[i - 1])) --i;
    if (i == 0) return std::nullopt;
    const TrailStep& drilled = ctx.trail[i - 1];
    if (drilled.rule != graph.drill_rule()) return std::nullopt;
    auto ring = ring_of(graph, drilled.node);
    if (std::find(ring.begin(), ring.end(), ctx.current) == ring.end()) return std::nullopt;
    return drilled.node;
}

void register_builtins(ResolverRegistry& registry) {
    registry.add(std::string(kCurrent),
                 [](const Graph&, const ResolverContext& ctx) -> std::optional<NodeId> {
                     return ctx.current;
                 });
    registry.add(std::string(kPrevious),
                 [](const Graph&, const ResolverContext& ctx) { return ctx.previous; });
    registry.add(std::string(kEntry),
                 [](const Graph&, const ResolverContext& ctx) -> std::optional<NodeId> {
                     return ctx.entry;
                 });
    registry.add(std::string(kExit), [](const Graph&, const ResolverContext&) {
        return std::optional<NodeId>(std::string(kExitNode));
    });
    registry.add(std::string(kFirstChild),
                 [](const Graph& graph, const ResolverContext& ctx) -> std::optional<NodeId> {
                     const Node* node = graph.find_node(ctx.current);
                     const NavigationRule* drill = graph.find_rule(graph.drill_rule());
                     if (node == nullptr || drill == nullptr) return std::nullopt;
                     // Literal edges only, so a first-child edge cannot recurse into itself.
                     for (const auto& edge_id : node->edges) {
                         const Edge& edge = *graph.find_edge(edge_id);
                         if (std::find(edge.rules.begin(), edge.rules.end(), drill->name) ==
                             edge.rules.end())
                             continue;
                         const bool forward = drill->direction == Direction::toward_target;
                         const Endpoint& from = forward ? edge.source : edge.target;
                         const Endpoint& to = forward ? edge.target : edge.source;
                         if (from.is_literal() && to.is_literal() && from.ref == ctx.current)
                             return to.ref;
                     }
                     return std::nullopt;
                 });
    registry.add(std::string(kRingNext), [](const Graph& graph, const ResolverContext& ctx) {
        return ring_step(graph, ctx, +1);
    });
    registry.add(std::string(kRingPrev), [](const Graph& graph, const ResolverContext& ctx) {
        return ring_step(graph, ctx, -1);
    });
    registry.add(std::string(kRingAnchor), [](const Graph& graph, const ResolverContext& ctx) {
        return ring_anchor(graph, ctx);
    });
}

}  // namespace dnav::resolvers
