// Shared test helpers and independent oracles. The oracles read raw JSON and
// recompute expectations without going through the library's own logic.
#pragma once

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnav/graph.hpp"
#include "dnav/graph_io.hpp"

namespace testing {

using nlohmann::json;

inline std::string fixture(const std::string& name) { return std::string(DNAV_FIXTURES) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(DNAV_GOLDEN) + "/" + name; }

inline const std::vector<std::string>& fixture_graphs() {
    static const std::vector<std::string> names{"stacked_bar.json", "us_states.json", "set_diagram.json",
                                                "parallel_vectors.json"};
    return names;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json raw(const std::string& path) { return json::parse(slurp(path)); }

inline std::shared_ptr<const dnav::Graph> shared_graph(const std::string& path) {
    return std::make_shared<const dnav::Graph>(dnav::load_graph(path));
}

/// Runs a shell command and captures stdout and the exit status.
struct Captured {
    std::string out;
    int status = -1;
};

inline Captured run_command(const std::string& command) {
    Captured c;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (pipe == nullptr) return c;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, n);
    const int rc = ::pclose(pipe);
    c.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return c;
}

inline std::string dnav_bin() { return DNAV_BIN; }

// --- oracles -------------------------------------------------------------------

/// Node ids reachable from the entry over literal-to-literal edges in a raw
/// graph document, honoring rule direction.
inline std::set<std::string> literal_reachable(const json& doc) {
    std::map<std::string, std::set<std::string>> next;
    const auto& rules = doc.at("rules");
    for (const auto& [node_id, node] : doc.at("nodes").items()) {
        for (const auto& edge_id : node.at("edges")) {
            const auto& e = doc.at("edges").at(edge_id.get<std::string>());
            if (!e.at("source").contains("literal") || !e.at("target").contains("literal")) continue;
            const auto s = e.at("source").at("literal").get<std::string>();
            const auto t = e.at("target").at("literal").get<std::string>();
            for (const auto& r : e.at("rules")) {
                const bool forward = rules.at(r.get<std::string>()).at("direction") == "toward_target";
                if (forward && s == node_id) next[node_id].insert(t);
                if (!forward && t == node_id) next[node_id].insert(s);
            }
        }
    }
    std::set<std::string> seen{doc.at("entry").get<std::string>()};
    std::deque<std::string> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        auto id = queue.front();
        queue.pop_front();
        for (const auto& n : next[id]) {
            if (n != "::exit" && seen.insert(n).second) queue.push_back(n);
        }
    }
    return seen;
}

/// Unordered neighbor sets straight from a border list.
inline std::map<std::string, std::set<std::string>> border_sets(const json& borders) {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& pair : borders) {
        const auto a = pair.at(0).get<std::string>(), b = pair.at(1).get<std::string>();
        out[a].insert(b);
        out[b].insert(a);
    }
    return out;
}

/// Coefficient of determination as 1 - SSres/SStot with the fit computed from
/// normal equations solved by Cramer's rule.
inline double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    const double b = (n * sxy - sx * sy) / det;
    const double a = (sy * sxx - sx * sxy) / det;
    const double mean = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ss_res += std::pow(y[i] - (a + b * x[i]), 2);
        ss_tot += std::pow(y[i] - mean, 2);
    }
    return ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

}  // namespace testing
