#pragma once

#include <string_view>

#include "dnav/graph.hpp"

namespace dnav::resolvers {

// Built-in resolver names.
inline constexpr std::string_view kCurrent = "current";
inline constexpr std::string_view kPrevious = "previous";
inline constexpr std::string_view kEntry = "entry";
inline constexpr std::string_view kExit = "exit";
/// First literal destination of the current node under the graph's drill rule.
inline constexpr std::string_view kFirstChild = "first-child";
/// Neighbor rings: the anchor is the node the ring was drilled into from, and
/// the ring members are listed in the anchor's datum under kRingKey.
inline constexpr std::string_view kRingNext = "ring-next";
inline constexpr std::string_view kRingPrev = "ring-prev";
inline constexpr std::string_view kRingAnchor = "ring-anchor";

inline constexpr std::string_view kRingKey = "neighbors";

/// Node whose neighbor ring the focus is currently cycling, if any.
///
/// Walks the trail from the top, skipping steps taken over ring-next/ring-prev
/// edges. The first remaining step must have left its node with the graph's
/// drill rule, and the current node must be a member of that node's ring.
std::optional<NodeId> ring_anchor(const Graph& graph, const ResolverContext& ctx);

void register_builtins(ResolverRegistry& registry);

}  // namespace dnav::resolvers
