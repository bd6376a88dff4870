#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dnav/engine.hpp"
#include "dnav/graph.hpp"
#include "dnav/input.hpp"
#include "dnav/render.hpp"

namespace dnav::protocol {

inline constexpr int kVersion = 1;

/// Loaded graphs shared across connections, keyed by path.
class GraphCache {
   public:
    std::shared_ptr<const Graph> load(const std::filesystem::path& path);

   private:
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const Graph>> graphs_;
};

struct Session {
    std::shared_ptr<const Graph> graph;
    BindingTable bindings;
    std::optional<FocusState> state;
    RenderMode mode = RenderMode::on_demand;
    Verbosity verbosity = Verbosity::normal;
};

/// Request handling for one connection. Each connection owns at most one
/// session; "init" replaces it.
///
/// Requests are {"id", "op", "args"}; responses are {"id", "ok", "result"} or
/// {"id", "ok": false, "error": {"code", "message"}}. Ops: init, enter, move,
/// input, command, undo, describe, state, shutdown. Failed requests leave the
/// session unchanged.
class Connection {
   public:
    explicit Connection(std::shared_ptr<GraphCache> cache, std::optional<std::filesystem::path> default_graph = {});

    nlohmann::json handle(const nlohmann::json& request);
    /// One request line in, one compact response line out (no newline).
    std::string handle_line(std::string_view line);

    bool shutdown_requested() const noexcept { return shutdown_; }
    const std::optional<Session>& session() const noexcept { return session_; }

   private:
    nlohmann::json dispatch(const std::string& op, const nlohmann::json& args);
    nlohmann::json op_init(const nlohmann::json& args);
    nlohmann::json op_enter(const nlohmann::json& args);
    nlohmann::json op_describe(const nlohmann::json& args) const;
    nlohmann::json op_state() const;
    nlohmann::json step_result(const MoveResult& result) const;
    Session& require_session();
    const Session& require_session() const;
    FocusState& require_state();

    std::shared_ptr<GraphCache> cache_;
    std::optional<std::filesystem::path> default_graph_;
    std::optional<Session> session_;
    bool shutdown_ = false;
};

/// Compact single-line JSON as written on the wire.
std::string wire(const nlohmann::json& message);

}  // namespace dnav::protocol
