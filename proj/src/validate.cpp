#include "dnav/validate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "dnav/error.hpp"
#include "dnav/graph_io.hpp"

namespace dnav {

std::string_view to_string(Severity severity) noexcept {
    return severity == Severity::error ? "error" : "warning";
}

std::vector<Diagnostic> validate(const Graph& graph) {
    std::vector<Diagnostic> out;
    auto warn = [&](std::string code, std::string subject, std::string message) {
        out.push_back({Severity::warning, std::move(code), std::move(subject), std::move(message)});
    };

    // Outgoing destinations of every node with no history.
    std::map<std::string_view, std::vector<NodeId>> successors;
    bool any_exit = false;
    for (const auto& node : graph.nodes()) {
        auto ctx = static_context(graph, node.id);
        auto& next = successors[node.id];
        for (const auto& rule : graph.rules()) {
            for (auto& match : applicable_edges(graph, node.id, rule.name, ctx)) {
                if (match.destination == kExitNode) {
                    any_exit = true;
                } else if (graph.find_node(match.destination) != nullptr) {
                    next.push_back(std::move(match.destination));
                }
            }
        }
    }

    std::unordered_set<std::string_view> reached{graph.entry()};
    std::deque<std::string_view> queue{graph.entry()};
    while (!queue.empty()) {
        auto id = queue.front();
        queue.pop_front();
        for (const auto& next : successors[id]) {
            const std::string& stable = graph.node(next).id;
            if (reached.insert(stable).second) queue.push_back(stable);
        }
    }

    for (const auto& node : graph.nodes()) {
        if (!reached.contains(node.id))
            warn("Unreachable", node.id, "not reachable from entry '" + graph.entry() + "' under any rule");
        const auto& next = successors[node.id];
        const bool only_self = std::all_of(next.begin(), next.end(),
                                           [&](const NodeId& n) { return n == node.id; });
        if (graph.nodes().size() > 1 && only_self)
            warn("DeadEnd", node.id, "no outgoing move other than exit");
        if (node.semantics.label.empty()) warn("MissingLabel", node.id, "focusable node has an empty label");
    }

    std::map<std::string, std::vector<std::string>> token_rules;
    for (const auto& rule : graph.rules()) {
        for (const auto& token : rule.bindings) token_rules[token].push_back(rule.name);
    }
    for (const auto& [token, rules] : token_rules) {
        if (rules.size() < 2) continue;
        std::string names;
        for (const auto& r : rules) names += (names.empty() ? "'" : ", '") + r + "'";
        warn("ConflictingBinding", token, "input token bound by rules " + names);
    }

    std::unordered_set<std::string_view> listed(graph.universal_edges().begin(),
                                                graph.universal_edges().end());
    for (const auto& node : graph.nodes()) listed.insert(node.edges.begin(), node.edges.end());
    for (const auto& edge : graph.edges()) {
        if (!listed.contains(edge.id))
            warn("OrphanEdge", edge.id, "edge is neither listed by a node nor universal");
        if (edge.source == edge.target) {
            std::set<Direction> directions;
            for (const auto& r : edge.rules) directions.insert(graph.rule(r).direction);
            warn("SelfLoop", edge.id,
                 directions.size() > 1 ? "source equals target and rules move in both directions"
                                       : "source equals target");
        }
    }

    if (!any_exit) warn("NoExit", graph.entry(), "no node has a move to '::exit'");
    return out;
}

std::vector<Diagnostic> diagnose_document(const nlohmann::json& document) {
    try {
        return validate(graph_from_json(document));
    } catch (const Error& e) {
        return {{Severity::error, std::string(to_string(e.code())), "", e.what()}};
    }
}

std::size_t error_count(const std::vector<Diagnostic>& diagnostics) {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const auto& d) {
        return d.severity == Severity::error;
    }));
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string line{to_string(d.severity)};
    line += " ";
    line += d.code;
    if (!d.subject.empty()) line += " [" + d.subject + "]";
    line += ": " + d.message;
    return line;
}

nlohmann::json to_json(const Diagnostic& d) {
    return {{"severity", to_string(d.severity)}, {"code", d.code}, {"subject", d.subject}, {"message", d.message}};
}

}  // namespace dnav
