#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

namespace dnav {

/// Accessibility role of a focusable node. Hosts map these onto their own
/// vocabulary (on the web: img, button, link, group, listitem, text, figure).
enum class Role { image, button, link, group, listitem, text, figure };

std::string_view to_string(Role role) noexcept;
std::optional<Role> role_from_string(std::string_view token) noexcept;

/// 1-based position among siblings, announced as "k of n".
struct Position {
    std::size_t index = 0;
    std::size_t count = 0;

    bool operator==(const Position&) const = default;
};

struct SemanticsPayload {
    Role role = Role::image;
    std::string label;
    std::string description;
    std::optional<std::string> external_ref;  // link targets outside the graph
    std::optional<Position> position;

    bool operator==(const SemanticsPayload&) const = default;
};

// Geometry lives in chart pixel coordinates; outlines travel as SVG path text.
struct PathGeometry {
    std::string d;
    bool operator==(const PathGeometry&) const = default;
};

struct RectGeometry {
    double x = 0, y = 0, width = 0, height = 0;
    bool operator==(const RectGeometry&) const = default;
};

struct PointGeometry {
    double x = 0, y = 0;
    bool operator==(const PointGeometry&) const = default;
};

using Geometry = std::variant<PathGeometry, RectGeometry, PointGeometry>;

inline constexpr std::string_view kDefaultStyleToken = "dn-focus";

/// Visual half of a node: where the focus indicator goes and which host style
/// class draws it.
struct Render {
    Geometry geometry;
    std::string style_token{kDefaultStyleToken};

    bool operator==(const Render&) const = default;
};

/// What a host needs to materialize one focusable element. A missing geometry
/// means a non-visual entry carrying semantics only.
struct RenderSpec {
    std::optional<Geometry> geometry;
    std::string style_token{kDefaultStyleToken};
    SemanticsPayload semantics;

    bool operator==(const RenderSpec&) const = default;
};

/// Throws Error(InvalidDeclaration) for non-finite or negative coordinates
/// and for empty path text.
void check_geometry(const Geometry& geometry);

nlohmann::json to_json(const Geometry& geometry);
Geometry geometry_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Render& render);
Render render_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SemanticsPayload& semantics);
SemanticsPayload semantics_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RenderSpec& spec);

}  // namespace dnav
