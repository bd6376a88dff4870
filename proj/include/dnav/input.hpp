#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dnav/engine.hpp"
#include "dnav/graph.hpp"

namespace dnav {

/// Input tokens bound to navigation rules.
///
/// Key tokens follow the UI-Events `code` names ("ArrowLeft", "Enter",
/// "KeyL"); other modalities use family-verb tokens ("swipe-left",
/// "gesture-point-right"). Tokens are matched exactly. Command words (each
/// rule's own name, plus any remapped words) are matched case-insensitively
/// after trimming. Recognition itself happens upstream; the table only sees
/// already-recognized tokens.
class BindingTable {
   public:
    const Graph& graph() const noexcept { return *graph_; }

    /// Key or gesture token lookup, exact match.
    std::optional<std::string> token_rule(std::string_view token) const;
    /// Command word lookup, normalized.
    std::optional<std::string> command_rule(std::string_view text) const;
    /// Token first, then command word.
    std::optional<std::string> lookup(std::string_view token) const;

    const std::map<std::string, std::string>& tokens() const noexcept { return tokens_; }
    const std::map<std::string, std::string>& commands() const noexcept { return commands_; }

    nlohmann::json to_json() const;

   private:
    friend BindingTable default_bindings(std::shared_ptr<const Graph>);
    friend BindingTable remap(const BindingTable&, std::string_view, std::string_view);
    friend BindingTable remap_command(const BindingTable&, std::string_view, std::string_view);

    std::shared_ptr<const Graph> graph_;
    std::map<std::string, std::string> tokens_;
    std::map<std::string, std::string> commands_;
};

/// Each rule's declared bindings plus its name as a command word. Throws
/// Error(ConflictingBinding) when two rules declare the same token.
BindingTable default_bindings(std::shared_ptr<const Graph> graph);

/// Copy of `table` with `token` pointing at `rule`. Throws Error(UnknownRule).
BindingTable remap(const BindingTable& table, std::string_view token, std::string_view rule);
BindingTable remap_command(const BindingTable& table, std::string_view word, std::string_view rule);

/// Applies a preference document {"token": "rule", ...}.
BindingTable apply_remap_document(const BindingTable& table, const nlohmann::json& document);

/// Lower-cased, whitespace-trimmed form used for command words.
std::string normalize_command(std::string_view text);

std::optional<std::string> parse_command(const BindingTable& table, std::string_view text);

/// Invokes the rule bound to `token`; an unbound token returns nullopt and
/// leaves `state` untouched.
std::optional<MoveResult> dispatch(const BindingTable& table, FocusState& state, std::string_view token);

}  // namespace dnav
