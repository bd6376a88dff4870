#include "dnav/protocol.hpp"

#include "dnav/error.hpp"
#include "dnav/graph_io.hpp"

namespace dnav::protocol {

using nlohmann::json;

std::shared_ptr<const Graph> GraphCache::load(const std::filesystem::path& path) {
    std::error_code ec;
    auto canonical = std::filesystem::weakly_canonical(path, ec);
    const std::string key = ec ? path.string() : canonical.string();
    std::lock_guard lock(mutex_);
    if (auto it = graphs_.find(key); it != graphs_.end()) return it->second;
    auto graph = std::make_shared<const Graph>(load_graph(path));
    graphs_.emplace(key, graph);
    return graph;
}

std::string wire(const json& message) { return message.dump(); }

Connection::Connection(std::shared_ptr<GraphCache> cache, std::optional<std::filesystem::path> default_graph)
    : cache_(std::move(cache)), default_graph_(std::move(default_graph)) {}

namespace {

[[noreturn]] void bad_request(const std::string& message) { throw Error(ErrorCode::BadRequest, message); }

std::string string_arg(const json& args, const char* key) {
    auto it = args.find(key);
    if (it == args.end() || !it->is_string()) bad_request(std::string("args.") + key + " must be a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_string_arg(const json& args, const char* key) {
    auto it = args.find(key);
    if (it == args.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) bad_request(std::string("args.") + key + " must be a string");
    return it->get<std::string>();
}

json error_response(const json& id, std::string_view code, const std::string& message) {
    return {{"id", id}, {"ok", false}, {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

Session& Connection::require_session() {
    if (!session_) throw Error(ErrorCode::UnknownSession, "no session; send init first");
    return *session_;
}

const Session& Connection::require_session() const {
    if (!session_) throw Error(ErrorCode::UnknownSession, "no session; send init first");
    return *session_;
}

FocusState& Connection::require_state() {
    auto& s = require_session();
    if (!s.state) throw Error(ErrorCode::InactiveSession, "session has not been entered");
    return *s.state;
}

json Connection::step_result(const MoveResult& result) const {
    const Session& s = *session_;
    json description = nullptr;
    if (result.status != MoveStatus::exited) {
        const auto& focused = result.to ? *result.to : *result.from;
        description = describe(s.graph->node(focused), s.verbosity);
    }
    return {{"move", to_json(result)},
            {"plan", to_json(plan_render(*s.graph, result, s.mode))},
            {"description", std::move(description)}};
}

json Connection::op_init(const json& args) {
    if (auto v = args.find("protocol"); v != args.end()) {
        if (!v->is_number_integer() || v->get<int>() != kVersion)
            bad_request("unsupported protocol version; this server speaks " + std::to_string(kVersion));
    }
    std::filesystem::path path;
    if (auto p = optional_string_arg(args, "graph")) {
        path = *p;
    } else if (default_graph_) {
        path = *default_graph_;
    } else {
        bad_request("args.graph is required");
    }

    Session s;
    if (auto m = optional_string_arg(args, "mode")) {
        auto mode = render_mode_from_string(*m);
        if (!mode) bad_request("unknown mode '" + *m + "'");
        s.mode = *mode;
    }
    if (auto v = optional_string_arg(args, "verbosity")) {
        auto verbosity = verbosity_from_string(*v);
        if (!verbosity) bad_request("unknown verbosity '" + *v + "'");
        s.verbosity = *verbosity;
    }
    s.graph = cache_->load(path);
    s.bindings = default_bindings(s.graph);
    if (auto b = args.find("bindings"); b != args.end() && !b->is_null())
        s.bindings = apply_remap_document(s.bindings, *b);

    json rules = json::array();
    for (const auto& r : s.graph->rules()) rules.push_back(r.name);
    json result = {{"protocol", kVersion},
                   {"entry", s.graph->entry()},
                   {"nodes", s.graph->nodes().size()},
                   {"rules", std::move(rules)},
                   {"mode", to_string(s.mode)},
                   {"verbosity", to_string(s.verbosity)},
                   {"bindings", s.bindings.to_json()}};
    session_ = std::move(s);
    return result;
}

json Connection::op_enter(const json& args) {
    auto& s = require_session();
    auto [state, result] = enter(s.graph, optional_string_arg(args, "node"));
    s.state = std::move(state);
    return step_result(result);
}

json Connection::op_describe(const json& args) const {
    const auto& s = require_session();
    Verbosity verbosity = s.verbosity;
    if (auto v = optional_string_arg(args, "verbosity")) {
        auto parsed = verbosity_from_string(*v);
        if (!parsed) bad_request("unknown verbosity '" + *v + "'");
        verbosity = *parsed;
    }
    NodeId id;
    if (auto n = optional_string_arg(args, "node")) {
        id = *n;
    } else {
        if (!s.state) throw Error(ErrorCode::InactiveSession, "session has not been entered");
        id = current_node(*s.state).id;
    }
    return {{"node", id}, {"description", describe(s.graph->node(id), verbosity)}};
}

json Connection::op_state() const {
    const auto& s = require_session();
    if (!s.state) return {{"entered", false}, {"active", false}, {"current", nullptr}, {"depth", 0},
                          {"previous", json::array()}};
    const auto& st = *s.state;
    return {{"entered", true},
            {"active", st.active()},
            {"current", st.active() ? json(st.current()) : json(nullptr)},
            {"depth", st.depth()},
            {"previous", st.previous_stack()}};
}

json Connection::dispatch(const std::string& op, const json& args) {
    if (op == "init") return op_init(args);
    if (op == "enter") return op_enter(args);
    if (op == "move") {
        auto rule = string_arg(args, "rule");
        return step_result(move(require_state(), rule));
    }
    if (op == "input" || op == "command") {
        const bool is_input = op == "input";
        auto text = string_arg(args, is_input ? "token" : "text");
        auto& state = require_state();
        auto rule = is_input ? session_->bindings.lookup(text) : session_->bindings.command_rule(text);
        if (!rule) return {{"handled", false}, {is_input ? "token" : "text", text}};
        json result = step_result(move(state, *rule));
        result["handled"] = true;
        return result;
    }
    if (op == "undo") return step_result(undo(require_state()));
    if (op == "describe") return op_describe(args);
    if (op == "state") return op_state();
    if (op == "shutdown") {
        shutdown_ = true;
        return {{"stopping", true}};
    }
    bad_request("unknown op '" + op + "'");
}

json Connection::handle(const json& request) {
    json id = nullptr;
    try {
        if (!request.is_object()) bad_request("request must be a JSON object");
        if (auto it = request.find("id"); it != request.end()) id = *it;
        auto op = request.find("op");
        if (op == request.end() || !op->is_string()) bad_request("request needs a string 'op'");
        json args = json::object();
        if (auto a = request.find("args"); a != request.end() && !a->is_null()) {
            if (!a->is_object()) bad_request("'args' must be an object");
            args = *a;
        }
        // Restored when the request fails.
        auto saved = session_;
        try {
            json result = dispatch(op->get<std::string>(), args);
            return {{"id", id}, {"ok", true}, {"result", std::move(result)}};
        } catch (...) {
            session_ = std::move(saved);
            throw;
        }
    } catch (const Error& e) {
        return error_response(id, to_string(e.code()), e.what());
    } catch (const json::exception& e) {
        return error_response(id, to_string(ErrorCode::BadRequest), e.what());
    }
}

std::string Connection::handle_line(std::string_view line) {
    json request;
    try {
        request = json::parse(line);
    } catch (const json::parse_error& e) {
        return wire(error_response(nullptr, to_string(ErrorCode::BadRequest), std::string("malformed JSON: ") + e.what()));
    }
    return wire(handle(request));
}

}  // namespace dnav::protocol
