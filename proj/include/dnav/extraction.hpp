#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/graph.hpp"

namespace dnav::extraction {

// --- SceneSpec ----------------------------------------------------------------
//
// {
//   "title":  "optional chart title",
//   "axes":   [{"axisId", "orientation": "x"|"y"|..., "title", "ticks": [...]}],
//   "marks":  [{"markId", "markType", "bounds": {"x","y","width","height"}, "datum": {...}}],
//   "legend": {"legendId", "title", "entries": ["..."]}          (optional)
// }
//
// List order is render order.

struct Bounds {
    double x = 0, y = 0, width = 0, height = 0;
    bool operator==(const Bounds&) const = default;
};

struct SceneMark {
    std::string id;
    std::string type;
    Bounds bounds;
    nlohmann::json datum = nlohmann::json::object();
    bool operator==(const SceneMark&) const = default;
};

struct SceneAxis {
    std::string id;
    std::string orientation;
    std::string title;
    nlohmann::json ticks = nlohmann::json::array();
    bool operator==(const SceneAxis&) const = default;
};

struct SceneLegend {
    std::string id;
    std::string title;
    std::vector<std::string> entries;
    bool operator==(const SceneLegend&) const = default;
};

struct SceneSpec {
    std::optional<std::string> title;
    std::vector<SceneAxis> axes;
    std::vector<SceneMark> marks;
    std::optional<SceneLegend> legend;
    bool operator==(const SceneSpec&) const = default;
};

/// Throws ParseError on shape problems.
SceneSpec scene_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SceneSpec& scene);

// --- pipeline -----------------------------------------------------------------

enum class Mode { flat, grouped };
std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> mode_from_string(std::string_view s) noexcept;

struct ExtractionOptions {
    Mode mode = Mode::flat;
    /// Built-in template id ("default", "values", "position") or literal
    /// template text containing {placeholders}.
    std::string description_template = "default";
};

enum class SceneKind { title, axis, mark, legend, legend_entry, group };

struct SceneNode {
    Node node;
    SceneKind kind = SceneKind::mark;
    /// Label of the enclosing structure ("Marks", "Axes", legend title).
    std::string group_label;
    /// Scene mark type for marks, empty otherwise.
    std::string type;
};

/// Title, axes, marks, legend, legend entries, in that order. Marks carry
/// rect geometry from their bounds and their datum. Throws Error(EmptyScene)
/// for a scene with nothing in it, Error(DuplicateMarkId) for a repeated mark
/// id and Error(DuplicateId) for other id clashes.
std::vector<SceneNode> extract_nodes(const SceneSpec& scene);

/// Nodes (including any inserted group nodes) with their edge lists filled in,
/// plus everything else build_graph needs.
struct InferredStructure {
    std::vector<SceneNode> nodes;
    std::vector<Edge> edges;
    std::vector<NavigationRule> rules;
    std::vector<std::string> universal_edges;
    NodeId entry;
};

/// Flat: one forward/backward chain over every node in order. Grouped: axes
/// and marks each collapse behind a group node and legend entries sit behind
/// the legend; the top chain is title, axes group, marks group, legend. Drill
/// enters a group at its first child and up returns to the group.
InferredStructure infer_edges(std::vector<SceneNode> nodes, const ExtractionOptions& options);

/// Template text for a built-in id; anything else is returned as is.
std::string template_text(std::string_view id);

/// Fills descriptions of mark nodes from `template_text` and gives other
/// nodes a structural description. Placeholders: {index}, {count}, {id},
/// {type}, {label}, {group}, {values} and any datum field; "{{" and "}}"
/// escape braces. Throws Error(MissingTemplateField).
std::vector<SceneNode> describe_nodes(std::vector<SceneNode> nodes, std::string_view template_text);

/// extract_nodes -> infer_edges -> describe_nodes -> build_graph.
Graph ingest(const SceneSpec& scene, const ExtractionOptions& options = {});

/// Scatter scene with `marks` points, two axes and a two-entry legend.
SceneSpec synthesize_scatter(std::size_t marks, std::uint32_t seed = 7);

}  // namespace dnav::extraction
