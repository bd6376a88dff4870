#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/graph.hpp"
#include "dnav/protocol.hpp"

namespace dnav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation errors, halted simulation
inline constexpr int kExitUsage = 2;    // usage, IO and parse errors

// --- simulation scripts -------------------------------------------------------
//
// {"start": "optional node", "mode": "onDemand", "verbosity": "default",
//  "bindings": {"token": "rule"}, "steps": ["ArrowDown", {"kind": "rule", "value": "up"}]}
//
// A bare string step is a key/gesture token (falling back to command words).

struct Step {
    enum class Kind { key, rule, command };
    Kind kind = Kind::key;
    std::string value;
};

struct SimScript {
    std::optional<NodeId> start;
    std::optional<std::string> mode;
    std::optional<std::string> verbosity;
    nlohmann::json bindings;  // null or a remap document
    std::vector<Step> steps;
};

/// Throws ParseError for malformed scripts (including an empty step list).
SimScript script_from_json(const nlohmann::json& j);

/// Protocol requests equivalent to running `script` on `graph_path`:
/// init, enter, then one request per step.
std::vector<nlohmann::json> script_requests(const SimScript& script, const std::string& graph_path);

struct Simulation {
    std::vector<nlohmann::json> requests;
    std::vector<nlohmann::json> responses;
    /// A request failed; later requests were not sent.
    bool halted = false;
};

/// Drives a fresh protocol connection with script_requests().
Simulation simulate(const SimScript& script, const std::string& graph_path,
                    std::shared_ptr<protocol::GraphCache> cache = nullptr);

/// Response lines exactly as a server would write them.
std::string transcript(const Simulation& sim);
/// One tab-separated line per request after init: index, token, status,
/// "from -> to", description (or error code and message).
std::string trace_text(const Simulation& sim);

// --- benchmarking -----------------------------------------------------------------

struct BenchRow {
    std::size_t marks = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double ingest_ms = 0;  // median of extract, infer, describe and build
    double build_ms = 0;   // median of build_graph alone
};

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, std::size_t reps, std::uint32_t seed = 7);
/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

// --- entry point ---------------------------------------------------------------------

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    bool color = false;
};

/// Runs the `dnav` command line and returns its exit code.
int run(int argc, const char* const* argv, Streams io);

}  // namespace dnav::cli
