#include "dnav/input.hpp"

#include <algorithm>
#include <cctype>

#include "dnav/error.hpp"

namespace dnav {

std::string normalize_command(std::string_view text) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    auto begin = std::find_if(text.begin(), text.end(), not_space);
    auto end = std::find_if(text.rbegin(), std::make_reverse_iterator(begin), not_space).base();
    std::string out(begin, end);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<std::string> BindingTable::token_rule(std::string_view token) const {
    auto it = tokens_.find(std::string(token));
    if (it == tokens_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> BindingTable::command_rule(std::string_view text) const {
    auto it = commands_.find(normalize_command(text));
    if (it == commands_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> BindingTable::lookup(std::string_view token) const {
    if (auto rule = token_rule(token)) return rule;
    return command_rule(token);
}

nlohmann::json BindingTable::to_json() const {
    return {{"tokens", tokens_}, {"commands", commands_}};
}

BindingTable default_bindings(std::shared_ptr<const Graph> graph) {
    BindingTable table;
    for (const auto& rule : graph->rules()) {
        for (const auto& token : rule.bindings) {
            auto [it, inserted] = table.tokens_.emplace(token, rule.name);
            if (!inserted && it->second != rule.name) {
                throw Error(ErrorCode::ConflictingBinding, "token '" + token + "' is bound by rules '" +
                                                               it->second + "' and '" + rule.name + "'");
            }
        }
        table.commands_.emplace(normalize_command(rule.name), rule.name);
    }
    table.graph_ = std::move(graph);
    return table;
}

namespace {

void require_rule(const BindingTable& table, std::string_view rule) {
    if (table.graph().find_rule(rule) == nullptr)
        throw Error(ErrorCode::UnknownRule, "unknown rule '" + std::string(rule) + "'");
}

}  // namespace

BindingTable remap(const BindingTable& table, std::string_view token, std::string_view rule) {
    require_rule(table, rule);
    BindingTable copy = table;
    copy.tokens_.insert_or_assign(std::string(token), std::string(rule));
    return copy;
}

BindingTable remap_command(const BindingTable& table, std::string_view word, std::string_view rule) {
    require_rule(table, rule);
    BindingTable copy = table;
    copy.commands_.insert_or_assign(normalize_command(word), std::string(rule));
    return copy;
}

BindingTable apply_remap_document(const BindingTable& table, const nlohmann::json& document) {
    if (!document.is_object())
        throw Error(ErrorCode::ParseError, "binding preferences must map tokens to rule names");
    BindingTable out = table;
    for (const auto& [token, rule] : document.items()) {
        if (!rule.is_string())
            throw Error(ErrorCode::ParseError, "binding for '" + token + "' must be a rule name");
        out = remap(out, token, rule.get<std::string>());
    }
    return out;
}

std::optional<std::string> parse_command(const BindingTable& table, std::string_view text) {
    return table.command_rule(text);
}

std::optional<MoveResult> dispatch(const BindingTable& table, FocusState& state, std::string_view token) {
    auto rule = table.lookup(token);
    if (!rule) return std::nullopt;
    return move(state, *rule);
}

}  // namespace dnav
