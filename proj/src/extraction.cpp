#include "dnav/extraction.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <unordered_set>

#include "dnav/error.hpp"
#include "dnav/resolvers.hpp"

namespace dnav::extraction {

using nlohmann::json;

namespace {

[[noreturn]] void scene_error(const std::string& message) {
    throw Error(ErrorCode::ParseError, "scene: " + message);
}

std::string string_field(const json& j, const char* key, bool required) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        if (required) scene_error(std::string("missing '") + key + "'");
        return {};
    }
    if (!it->is_string()) scene_error(std::string("'") + key + "' must be a string");
    return it->get<std::string>();
}

double number_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) scene_error(std::string("bounds need a numeric '") + key + "'");
    return it->get<double>();
}

const json& array_field(const json& j, const char* key) {
    static const json empty = json::array();
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return empty;
    if (!it->is_array()) scene_error(std::string("'") + key + "' must be an array");
    return *it;
}

}  // namespace

SceneSpec scene_from_json(const json& j) {
    if (!j.is_object()) scene_error("document must be an object");
    SceneSpec s;
    if (auto t = j.find("title"); t != j.end() && !t->is_null()) {
        if (!t->is_string()) scene_error("'title' must be a string");
        s.title = t->get<std::string>();
    }
    for (const auto& a : array_field(j, "axes")) {
        if (!a.is_object()) scene_error("axes must be objects");
        SceneAxis axis;
        axis.id = string_field(a, "axisId", true);
        axis.orientation = string_field(a, "orientation", false);
        axis.title = string_field(a, "title", false);
        axis.ticks = array_field(a, "ticks");
        s.axes.push_back(std::move(axis));
    }
    for (const auto& m : array_field(j, "marks")) {
        if (!m.is_object()) scene_error("marks must be objects");
        SceneMark mark;
        mark.id = string_field(m, "markId", true);
        mark.type = string_field(m, "markType", true);
        auto b = m.find("bounds");
        if (b == m.end() || !b->is_object()) scene_error("mark '" + mark.id + "' needs 'bounds'");
        mark.bounds = {number_field(*b, "x"), number_field(*b, "y"), number_field(*b, "width"),
                       number_field(*b, "height")};
        if (auto d = m.find("datum"); d != m.end() && !d->is_null()) {
            if (!d->is_object()) scene_error("mark '" + mark.id + "' datum must be an object");
            mark.datum = *d;
        }
        s.marks.push_back(std::move(mark));
    }
    if (auto l = j.find("legend"); l != j.end() && !l->is_null()) {
        if (!l->is_object()) scene_error("'legend' must be an object");
        SceneLegend legend;
        legend.id = string_field(*l, "legendId", true);
        legend.title = string_field(*l, "title", false);
        for (const auto& e : array_field(*l, "entries")) {
            if (!e.is_string()) scene_error("legend entries must be strings");
            legend.entries.push_back(e.get<std::string>());
        }
        s.legend = std::move(legend);
    }
    return s;
}

json to_json(const SceneSpec& scene) {
    json j = json::object();
    if (scene.title) j["title"] = *scene.title;
    json axes = json::array();
    for (const auto& a : scene.axes)
        axes.push_back({{"axisId", a.id}, {"orientation", a.orientation}, {"title", a.title}, {"ticks", a.ticks}});
    j["axes"] = std::move(axes);
    json marks = json::array();
    for (const auto& m : scene.marks) {
        marks.push_back({{"markId", m.id},
                         {"markType", m.type},
                         {"bounds",
                          {{"x", m.bounds.x}, {"y", m.bounds.y}, {"width", m.bounds.width}, {"height", m.bounds.height}}},
                         {"datum", m.datum}});
    }
    j["marks"] = std::move(marks);
    if (scene.legend) {
        j["legend"] = {{"legendId", scene.legend->id}, {"title", scene.legend->title}, {"entries", scene.legend->entries}};
    }
    return j;
}

std::string_view to_string(Mode mode) noexcept { return mode == Mode::flat ? "flat" : "grouped"; }

std::optional<Mode> mode_from_string(std::string_view s) noexcept {
    if (s == "flat") return Mode::flat;
    if (s == "grouped") return Mode::grouped;
    return std::nullopt;
}

// --- extract_nodes ---------------------------------------------------------------

namespace {

constexpr std::string_view kAxesGroup = "axes-group";
constexpr std::string_view kMarksGroup = "marks-group";
constexpr std::string_view kTitleId = "title";

std::string mark_noun(const std::string& type) {
    if (type == "symbol" || type == "point" || type == "circle") return "Point";
    if (type == "rect" || type == "bar") return "Bar";
    if (type == "line") return "Line";
    if (type == "arc") return "Slice";
    if (type.empty()) return "Mark";
    std::string out = type;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

void append_value(std::string& out, const json& v) {
    if (v.is_string()) {
        out += v.get_ref<const std::string&>();
    } else if (v.is_number_integer()) {
        char buf[24];
        const auto end = std::to_chars(buf, buf + sizeof buf, v.get<std::int64_t>()).ptr;
        out.append(buf, end);
    } else {
        out += v.dump();
    }
}

std::string join(const json& values, std::string_view separator) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += separator;
        append_value(out, v);
    }
    return out;
}

SceneNode scene_node(std::string id, SceneKind kind, Role role, std::string label, std::string group_label) {
    SceneNode n;
    n.node.id = std::move(id);
    n.node.semantics.role = role;
    n.node.semantics.label = std::move(label);
    n.kind = kind;
    n.group_label = std::move(group_label);
    return n;
}

}  // namespace

std::vector<SceneNode> extract_nodes(const SceneSpec& scene) {
    if (!scene.title && scene.axes.empty() && scene.marks.empty() && !scene.legend)
        throw Error(ErrorCode::EmptyScene, "scene has no title, axes, marks or legend");

    std::vector<SceneNode> out;
    out.reserve(scene.marks.size() + scene.axes.size() + 8 + (scene.legend ? scene.legend->entries.size() : 0));
    std::unordered_set<std::string_view> ids;
    ids.reserve(out.capacity());
    auto claim = [&](const std::string& id, ErrorCode duplicate = ErrorCode::DuplicateId) {
        if (id.empty()) throw Error(ErrorCode::InvalidDeclaration, "scene element with an empty id");
        if (id == kExitNode) throw Error(ErrorCode::ReservedIdUse, "'::exit' is reserved");
        if (!ids.insert(id).second) throw Error(duplicate, "duplicate scene id '" + id + "'");
    };

    static const std::string title_id(kTitleId);
    if (scene.title) {
        claim(title_id);
        out.push_back(scene_node(title_id, SceneKind::title, Role::text, *scene.title, ""));
    }
    for (std::size_t i = 0; i < scene.axes.size(); ++i) {
        const auto& a = scene.axes[i];
        claim(a.id);
        std::string label = !a.title.empty() ? a.title
                            : !a.orientation.empty() ? a.orientation + " axis"
                                                     : "Axis";
        auto n = scene_node(a.id, SceneKind::axis, Role::group, std::move(label), "Axes");
        n.node.semantics.position = Position{i + 1, scene.axes.size()};
        if (!a.orientation.empty()) n.node.datum["orientation"] = a.orientation;
        n.node.datum["ticks"] = a.ticks;
        out.push_back(std::move(n));
    }
    const std::size_t mark_count = scene.marks.size();
    for (std::size_t i = 0; i < mark_count; ++i) {
        const auto& m = scene.marks[i];
        claim(m.id, ErrorCode::DuplicateMarkId);
        auto n = scene_node(m.id, SceneKind::mark, Role::image, mark_noun(m.type) + " " + std::to_string(i + 1),
                            "Marks");
        n.node.semantics.position = Position{i + 1, mark_count};
        n.type = m.type;
        Render render;
        render.geometry = RectGeometry{m.bounds.x, m.bounds.y, m.bounds.width, m.bounds.height};
        check_geometry(render.geometry);
        n.node.render = std::move(render);
        n.node.datum = m.datum;
        out.push_back(std::move(n));
    }
    if (scene.legend) {
        const auto& l = *scene.legend;
        claim(l.id);
        const std::string legend_label = l.title.empty() ? "Legend" : l.title;
        out.push_back(scene_node(l.id, SceneKind::legend, Role::group, legend_label, ""));
        for (std::size_t i = 0; i < l.entries.size(); ++i) {
            auto n = scene_node(l.id + ":" + std::to_string(i + 1), SceneKind::legend_entry, Role::listitem,
                                l.entries[i], legend_label);
            claim(n.node.id);
            n.node.semantics.position = Position{i + 1, l.entries.size()};
            out.push_back(std::move(n));
        }
    }
    return out;
}

// --- infer_edges ------------------------------------------------------------------

namespace {

constexpr std::string_view kForward = "forward";
constexpr std::string_view kBackward = "backward";
constexpr std::string_view kDrill = "drill";
constexpr std::string_view kUp = "up";
constexpr std::string_view kExitRule = "exit";
constexpr std::string_view kUndoRule = "undo";

class EdgeWriter {
   public:
    explicit EdgeWriter(InferredStructure& s) : s_(s) {}

    void chain(const std::vector<std::size_t>& members) {
        for (std::size_t k = 0; k + 1 < members.size(); ++k) {
            Node& a = s_.nodes[members[k]].node;
            Node& b = s_.nodes[members[k + 1]].node;
            std::string id = "next:" + a.id;
            a.edges.push_back(id);
            b.edges.push_back(id);
            s_.edges.push_back({std::move(id), Endpoint::literal(a.id), Endpoint::literal(b.id),
                                {std::string(kForward), std::string(kBackward)}});
        }
    }

    void one_way(std::string id, std::size_t from, std::size_t to, std::string_view rule) {
        Node& a = s_.nodes[from].node;
        a.edges.push_back(id);
        s_.edges.push_back({std::move(id), Endpoint::literal(a.id), Endpoint::literal(s_.nodes[to].node.id),
                            {std::string(rule)}});
    }

    /// Group node: drill to the first child, children chained, each child up.
    void nest(std::size_t group, const std::vector<std::size_t>& children) {
        if (children.empty()) return;
        one_way("drill:" + s_.nodes[group].node.id, group, children.front(), kDrill);
        chain(children);
        for (auto c : children) one_way("up:" + s_.nodes[c].node.id, c, group, kUp);
    }

   private:
    InferredStructure& s_;
};

NavigationRule make_rule(std::string_view name, Direction d, std::vector<std::string> bindings) {
    return {std::string(name), d, std::move(bindings)};
}

}  // namespace

InferredStructure infer_edges(std::vector<SceneNode> nodes, const ExtractionOptions& options) {
    InferredStructure s;
    s.nodes = std::move(nodes);
    s.edges.reserve(s.nodes.size() * (options.mode == Mode::flat ? 1 : 2) + 8);
    s.rules.push_back(make_rule(kForward, Direction::toward_target, {"ArrowRight"}));
    s.rules.push_back(make_rule(kBackward, Direction::toward_source, {"ArrowLeft"}));

    EdgeWriter w(s);
    if (options.mode == Mode::flat) {
        std::vector<std::size_t> all(s.nodes.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        w.chain(all);
        if (!s.nodes.empty()) s.entry = s.nodes.front().node.id;
    } else {
        s.rules.push_back(make_rule(kDrill, Direction::toward_target, {"Enter"}));
        s.rules.push_back(make_rule(kUp, Direction::toward_target, {"Backspace"}));

        std::vector<std::size_t> axes, marks, entries, top;
        std::optional<std::size_t> title, legend;
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            switch (s.nodes[i].kind) {
                case SceneKind::title: title = i; break;
                case SceneKind::axis: axes.push_back(i); break;
                case SceneKind::mark: marks.push_back(i); break;
                case SceneKind::legend: legend = i; break;
                case SceneKind::legend_entry: entries.push_back(i); break;
                case SceneKind::group: break;
            }
        }
        auto add_group = [&](std::string_view id, std::string label, std::size_t count, std::string_view noun) {
            auto n = SceneNode{};
            n.node.id = std::string(id);
            n.node.semantics.role = Role::group;
            n.node.semantics.label = std::move(label);
            n.node.datum["count"] = count;
            n.node.datum["noun"] = std::string(noun);
            n.kind = SceneKind::group;
            s.nodes.push_back(std::move(n));
            return s.nodes.size() - 1;
        };
        auto taken = [&](std::string_view id) {
            for (const auto& n : s.nodes)
                if (n.node.id == id) return true;
            return false;
        };
        auto group_id = [&](std::string_view base) {
            std::string id(base);
            while (taken(id)) id += "_";
            return id;
        };

        if (title) top.push_back(*title);
        if (!axes.empty()) {
            auto g = add_group(group_id(kAxesGroup), "Axes", axes.size(), "axes");
            top.push_back(g);
            w.nest(g, axes);
        }
        if (!marks.empty()) {
            auto g = add_group(group_id(kMarksGroup), "Marks", marks.size(), "marks");
            top.push_back(g);
            w.nest(g, marks);
        }
        if (legend) {
            top.push_back(*legend);
            w.nest(*legend, entries);
        }
        w.chain(top);
        s.entry = s.nodes[top.front()].node.id;
    }

    s.rules.push_back(make_rule(kExitRule, Direction::toward_target, {"Escape"}));
    s.rules.push_back(make_rule(kUndoRule, Direction::toward_target, {}));
    const auto current = Endpoint::resolver(std::string(resolvers::kCurrent));
    s.edges.push_back({"any-exit", current, Endpoint::resolver(std::string(resolvers::kExit)), {std::string(kExitRule)}});
    s.edges.push_back(
        {"any-return", current, Endpoint::resolver(std::string(resolvers::kPrevious)), {std::string(kUndoRule)}});
    s.universal_edges = {"any-exit", "any-return"};
    return s;
}

// --- describe_nodes ----------------------------------------------------------------

std::string template_text(std::string_view id) {
    if (id == "default") return "{group}. {values}. {index} of {count}.";
    if (id == "values") return "{values}.";
    if (id == "position") return "{index} of {count}.";
    return std::string(id);
}

namespace {

void append_values(std::string& out, const json& datum) {
    bool first = true;
    for (auto it = datum.begin(); it != datum.end(); ++it) {
        if (!first) out += ", ";
        first = false;
        out += it.key();
        out += ": ";
        append_value(out, it.value());
    }
}

/// Drops sentences left empty by blank placeholders ("A. . B." -> "A. B.").
std::string tidy(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(". ", start);
        const auto part = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        if (!part.empty() && part != ".") {
            if (!out.empty()) out += ". ";
            out += part;
        }
        if (pos == std::string_view::npos) break;
        start = pos + 2;
    }
    if (!text.empty() && text.back() == '.' && !out.empty() && out.back() != '.') out += '.';
    return out;
}

std::string render_template(std::string_view tpl, const SceneNode& n) {
    const Node& node = n.node;
    std::string out;
    out.reserve(tpl.size() + 32);
    for (std::size_t i = 0; i < tpl.size(); ++i) {
        const char c = tpl[i];
        if (c == '}' && i + 1 < tpl.size() && tpl[i + 1] == '}') {
            out += '}';
            ++i;
            continue;
        }
        if (c != '{') {
            out += c;
            continue;
        }
        if (i + 1 < tpl.size() && tpl[i + 1] == '{') {
            out += '{';
            ++i;
            continue;
        }
        const auto close = tpl.find('}', i + 1);
        if (close == std::string_view::npos)
            throw Error(ErrorCode::InvalidDeclaration, "unterminated placeholder in template");
        const std::string_view field = tpl.substr(i + 1, close - i - 1);
        i = close;
        const auto& pos = node.semantics.position;
        if (field == "index") {
            if (pos) out += std::to_string(pos->index);
        } else if (field == "count") {
            if (pos) out += std::to_string(pos->count);
        } else if (field == "id") {
            out += node.id;
        } else if (field == "label") {
            out += node.semantics.label;
        } else if (field == "group") {
            out += n.group_label;
        } else if (field == "values") {
            append_values(out, node.datum);
        } else if (field == "type") {
            out += n.type;
        } else {
            auto it = node.datum.find(field);
            if (it == node.datum.end())
                throw Error(ErrorCode::MissingTemplateField,
                            "node '" + node.id + "' has no datum field '" + std::string(field) + "'");
            append_value(out, *it);
        }
    }
    return tidy(out);
}

std::string structural_description(const SceneNode& n) {
    const Node& node = n.node;
    switch (n.kind) {
        case SceneKind::title: return "Chart title.";
        case SceneKind::axis: {
            std::string out = "Axis";
            const auto& ticks = node.datum.value("ticks", json::array());
            if (!ticks.empty()) out += ", ticks " + join(ticks, ", ");
            out += '.';
            if (node.semantics.position) out += " " + std::to_string(node.semantics.position->index) + " of " +
                                                std::to_string(node.semantics.position->count) + ".";
            return out;
        }
        case SceneKind::legend: return "Legend.";
        case SceneKind::legend_entry:
            return n.group_label + " entry. " + std::to_string(node.semantics.position->index) + " of " +
                   std::to_string(node.semantics.position->count) + ".";
        case SceneKind::group:
            return "Group of " + node.datum.value("count", json(0)).dump() + " " +
                   node.datum.value("noun", std::string("items")) + ".";
        case SceneKind::mark: break;
    }
    return {};
}

}  // namespace

std::vector<SceneNode> describe_nodes(std::vector<SceneNode> nodes, std::string_view tpl) {
    for (auto& n : nodes) {
        n.node.semantics.description =
            n.kind == SceneKind::mark ? render_template(tpl, n) : structural_description(n);
    }
    return nodes;
}

// --- ingest --------------------------------------------------------------------------

Graph ingest(const SceneSpec& scene, const ExtractionOptions& options) {
    auto structure = infer_edges(extract_nodes(scene), options);
    auto described = describe_nodes(std::move(structure.nodes), template_text(options.description_template));
    GraphDecl decl;
    decl.nodes.reserve(described.size());
    for (auto& n : described) decl.nodes.push_back(std::move(n.node));
    decl.edges = std::move(structure.edges);
    decl.rules = std::move(structure.rules);
    decl.universal_edges = std::move(structure.universal_edges);
    decl.entry = std::move(structure.entry);
    return build_graph(std::move(decl));
}

SceneSpec synthesize_scatter(std::size_t marks, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coord(0, 1000);
    SceneSpec s;
    s.title = "Synthetic scatter (" + std::to_string(marks) + " points)";
    s.axes.push_back({"x-axis", "x", "X", json::array({0, 250, 500, 750, 1000})});
    s.axes.push_back({"y-axis", "y", "Y", json::array({0, 250, 500, 750, 1000})});
    s.marks.reserve(marks);
    for (std::size_t i = 0; i < marks; ++i) {
        const int x = coord(rng), y = coord(rng);
        SceneMark m;
        m.id = "m" + std::to_string(i);
        m.type = "symbol";
        m.bounds = {x * 0.5, 500 - y * 0.5, 4, 4};
        m.datum = {{"series", i % 2 == 0 ? "A" : "B"}, {"x", x}, {"y", y}};
        s.marks.push_back(std::move(m));
    }
    s.legend = SceneLegend{"legend", "Series", {"A", "B"}};
    return s;
}

}  // namespace dnav::extraction
