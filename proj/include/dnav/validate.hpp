#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/graph.hpp"

namespace dnav {

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::warning;
    std::string code;     // Unreachable, DeadEnd, ConflictingBinding, ...
    std::string subject;  // node, edge or token the diagnostic is about
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

std::string_view to_string(Severity severity) noexcept;

/// Structural lint over a built graph. Reachability and dead ends are judged
/// with an empty focus history, so history-dependent resolvers (previous,
/// rings) contribute nothing.
///
/// Codes: Unreachable, DeadEnd, ConflictingBinding, SelfLoop, OrphanEdge,
/// MissingLabel, NoExit. A built graph has already passed every reference
/// check, so these are warnings; error-severity diagnostics come from
/// diagnose_document() when a document fails to build.
std::vector<Diagnostic> validate(const Graph& graph);

/// Builds the document and validates it; build failures become a single
/// error diagnostic carrying the failing ErrorCode.
std::vector<Diagnostic> diagnose_document(const nlohmann::json& document);

std::size_t error_count(const std::vector<Diagnostic>& diagnostics);

std::string format_diagnostic(const Diagnostic& d);
nlohmann::json to_json(const Diagnostic& d);

}  // namespace dnav
