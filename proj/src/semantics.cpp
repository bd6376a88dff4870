#include "dnav/semantics.hpp"

#include <array>
#include <cmath>

#include "dnav/error.hpp"

namespace dnav {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 7> kRoles{{
    {Role::image, "image"},
    {Role::button, "button"},
    {Role::link, "link"},
    {Role::group, "group"},
    {Role::listitem, "listitem"},
    {Role::text, "text"},
    {Role::figure, "figure"},
}};

[[noreturn]] void bad(const std::string& message) {
    throw Error(ErrorCode::InvalidDeclaration, message);
}

double number_field(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) bad(std::string("geometry field '") + key + "' must be a number");
    return it->get<double>();
}

}  // namespace

std::string_view to_string(Role role) noexcept {
    for (const auto& [r, name] : kRoles) {
        if (r == role) return name;
    }
    return "image";
}

std::optional<Role> role_from_string(std::string_view token) noexcept {
    for (const auto& [r, name] : kRoles) {
        if (name == token) return r;
    }
    return std::nullopt;
}

void check_geometry(const Geometry& geometry) {
    auto coord = [](double v, const char* what) {
        if (!std::isfinite(v) || v < 0) bad(std::string("geometry ") + what + " must be finite and non-negative");
    };
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PathGeometry>) {
                if (g.d.empty()) bad("path geometry needs non-empty path text");
            } else if constexpr (std::is_same_v<T, RectGeometry>) {
                coord(g.x, "x");
                coord(g.y, "y");
                coord(g.width, "width");
                coord(g.height, "height");
            } else {
                coord(g.x, "x");
                coord(g.y, "y");
            }
        },
        geometry);
}

nlohmann::json to_json(const Geometry& geometry) {
    return std::visit(
        [](const auto& g) -> nlohmann::json {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PathGeometry>) {
                return {{"kind", "path"}, {"d", g.d}};
            } else if constexpr (std::is_same_v<T, RectGeometry>) {
                return {{"kind", "rect"}, {"x", g.x}, {"y", g.y}, {"width", g.width}, {"height", g.height}};
            } else {
                return {{"kind", "point"}, {"x", g.x}, {"y", g.y}};
            }
        },
        geometry);
}

Geometry geometry_from_json(const nlohmann::json& j) {
    if (!j.is_object()) bad("geometry must be an object");
    const std::string kind = j.value("kind", "");
    if (kind == "path") {
        auto d = j.find("d");
        if (d == j.end() || !d->is_string()) bad("path geometry needs a 'd' string");
        return PathGeometry{d->get<std::string>()};
    }
    if (kind == "rect") {
        return RectGeometry{number_field(j, "x"), number_field(j, "y"), number_field(j, "width"),
                            number_field(j, "height")};
    }
    if (kind == "point") return PointGeometry{number_field(j, "x"), number_field(j, "y")};
    bad("unknown geometry kind '" + kind + "'");
}

nlohmann::json to_json(const Render& render) {
    return {{"geometry", to_json(render.geometry)}, {"style", render.style_token}};
}

Render render_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("geometry")) bad("render needs a 'geometry' object");
    Render r{geometry_from_json(j.at("geometry"))};
    if (auto it = j.find("style"); it != j.end()) {
        if (!it->is_string()) bad("render 'style' must be a string");
        r.style_token = it->get<std::string>();
    }
    return r;
}

nlohmann::json to_json(const SemanticsPayload& semantics) {
    nlohmann::json j{{"role", to_string(semantics.role)},
                     {"label", semantics.label},
                     {"description", semantics.description}};
    if (semantics.external_ref) j["externalRef"] = *semantics.external_ref;
    if (semantics.position)
        j["position"] = {{"index", semantics.position->index}, {"count", semantics.position->count}};
    return j;
}

SemanticsPayload semantics_from_json(const nlohmann::json& j) {
    if (!j.is_object()) bad("semantics must be an object");
    SemanticsPayload s;
    if (auto it = j.find("role"); it != j.end()) {
        auto role = it->is_string() ? role_from_string(it->get<std::string>()) : std::nullopt;
        if (!role) bad("unknown semantics role " + it->dump());
        s.role = *role;
    }
    auto text = [&](const char* key) -> std::string {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return {};
        if (!it->is_string()) bad(std::string("semantics '") + key + "' must be a string");
        return it->get<std::string>();
    };
    s.label = text("label");
    s.description = text("description");
    if (auto ref = text("externalRef"); !ref.empty()) s.external_ref = ref;
    if (auto it = j.find("position"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) bad("semantics 'position' must be an object");
        s.position = Position{it->value("index", std::size_t{0}), it->value("count", std::size_t{0})};
    }
    return s;
}

nlohmann::json to_json(const RenderSpec& spec) {
    return {{"geometry", spec.geometry ? to_json(*spec.geometry) : nlohmann::json(nullptr)},
            {"style", spec.style_token},
            {"semantics", to_json(spec.semantics)}};
}

}  // namespace dnav
