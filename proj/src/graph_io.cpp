#include "dnav/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "dnav/error.hpp"

namespace dnav {

namespace {

using nlohmann::json;

[[noreturn]] void shape_error(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what, 0, 0);
}

json endpoint_to_json(const Endpoint& e) {
    return {{e.is_literal() ? "literal" : "resolver", e.ref}};
}

Endpoint endpoint_from_json(const std::string& where, const json& j) {
    if (!j.is_object() || j.size() != 1)
        shape_error(where, "endpoint must be {\"literal\": id} or {\"resolver\": name}");
    const auto& [key, value] = *j.items().begin();
    if (!value.is_string()) shape_error(where, "endpoint reference must be a string");
    if (key == "literal") return Endpoint::literal(value.get<std::string>());
    if (key == "resolver") return Endpoint::resolver(value.get<std::string>());
    shape_error(where, "unknown endpoint kind '" + key + "'");
}

std::vector<std::string> string_list(const std::string& where, const json& j) {
    if (!j.is_array()) shape_error(where, "expected an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_string()) shape_error(where, "expected an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

const json& member(const std::string& where, const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) shape_error(where, std::string("missing key '") + key + "'");
    return *it;
}

}  // namespace

json node_to_json(const Node& node) {
    json j{{"edges", node.edges}, {"semantics", to_json(node.semantics)}, {"datum", node.datum}};
    if (node.render) j["render"] = to_json(*node.render);
    return j;
}

Node node_from_json(const std::string& id, const json& j) {
    const std::string where = "/nodes/" + id;
    if (!j.is_object()) shape_error(where, "node must be an object");
    Node node;
    node.id = id;
    if (auto it = j.find("edges"); it != j.end()) node.edges = string_list(where + "/edges", *it);
    try {
        if (auto it = j.find("semantics"); it != j.end()) node.semantics = semantics_from_json(*it);
        if (auto it = j.find("render"); it != j.end() && !it->is_null())
            node.render = render_from_json(*it);
    } catch (const Error& e) {
        shape_error(where, e.what());
    }
    if (auto it = j.find("datum"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) shape_error(where + "/datum", "datum must be an object");
        node.datum = *it;
    }
    return node;
}

json graph_to_json(const Graph& graph) {
    json nodes = json::object();
    for (const auto& node : graph.nodes()) nodes[node.id] = node_to_json(node);

    json edges = json::object();
    for (const auto& edge : graph.edges()) {
        edges[edge.id] = {{"source", endpoint_to_json(edge.source)},
                          {"target", endpoint_to_json(edge.target)},
                          {"rules", edge.rules}};
    }

    json rules = json::object();
    for (const auto& rule : graph.rules()) {
        rules[rule.name] = {{"direction", to_string(rule.direction)}, {"bindings", rule.bindings}};
    }

    json doc{{"nodes", std::move(nodes)},
             {"edges", std::move(edges)},
             {"rules", std::move(rules)},
             {"universalEdges", graph.universal_edges()},
             {"entry", graph.entry()},
             {"exitTarget", graph.exit_target() ? json(*graph.exit_target()) : json(nullptr)}};
    if (graph.drill_rule() != kDefaultDrillRule) doc["drillRule"] = graph.drill_rule();
    return doc;
}

std::string serialize(const Graph& graph) { return graph_to_json(graph).dump(2) + "\n"; }

Graph graph_from_json(const json& document, std::shared_ptr<const ResolverRegistry> resolvers) {
    if (!document.is_object()) shape_error("/", "graph document must be an object");
    GraphDecl decl;

    const json& nodes = member("/", document, "nodes");
    if (!nodes.is_object()) shape_error("/nodes", "expected an object keyed by node id");
    decl.nodes.reserve(nodes.size());
    for (const auto& [id, value] : nodes.items()) decl.nodes.push_back(node_from_json(id, value));

    const json& edges = member("/", document, "edges");
    if (!edges.is_object()) shape_error("/edges", "expected an object keyed by edge id");
    for (const auto& [id, value] : edges.items()) {
        const std::string where = "/edges/" + id;
        if (!value.is_object()) shape_error(where, "edge must be an object");
        decl.edges.push_back(Edge{id, endpoint_from_json(where + "/source", member(where, value, "source")),
                                  endpoint_from_json(where + "/target", member(where, value, "target")),
                                  string_list(where + "/rules", member(where, value, "rules"))});
    }

    const json& rules = member("/", document, "rules");
    if (!rules.is_object()) shape_error("/rules", "expected an object keyed by rule name");
    for (const auto& [name, value] : rules.items()) {
        const std::string where = "/rules/" + name;
        if (!value.is_object()) shape_error(where, "rule must be an object");
        NavigationRule rule{name, Direction::toward_target, {}};
        const json& direction = member(where, value, "direction");
        if (direction == "toward_target") {
            rule.direction = Direction::toward_target;
        } else if (direction == "toward_source") {
            rule.direction = Direction::toward_source;
        } else {
            shape_error(where + "/direction", "must be \"toward_target\" or \"toward_source\"");
        }
        if (auto it = value.find("bindings"); it != value.end())
            rule.bindings = string_list(where + "/bindings", *it);
        decl.rules.push_back(std::move(rule));
    }

    if (auto it = document.find("universalEdges"); it != document.end())
        decl.universal_edges = string_list("/universalEdges", *it);

    const json& entry = member("/", document, "entry");
    if (!entry.is_string()) shape_error("/entry", "must be a node id string");
    decl.entry = entry.get<std::string>();

    if (auto it = document.find("exitTarget"); it != document.end() && !it->is_null()) {
        if (!it->is_string()) shape_error("/exitTarget", "must be a string or null");
        decl.exit_target = it->get<std::string>();
    }
    if (auto it = document.find("drillRule"); it != document.end()) {
        if (!it->is_string()) shape_error("/drillRule", "must be a string");
        decl.drill_rule = it->get<std::string>();
    }
    return build_graph(std::move(decl), std::move(resolvers));
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream msg;
        msg << "line " << line << ", column " << column << ": " << e.what();
        throw ParseError(msg.str(), line, column);
    }
}

Graph deserialize(std::string_view text, std::shared_ptr<const ResolverRegistry> resolvers) {
    return graph_from_json(parse_json(text), std::move(resolvers));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json load_json_file(const std::filesystem::path& path) { return parse_json(read_file(path)); }

Graph load_graph(const std::filesystem::path& path, std::shared_ptr<const ResolverRegistry> resolvers) {
    return deserialize(read_file(path), std::move(resolvers));
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << contents;
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace dnav
