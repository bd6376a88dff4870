#include "dnav/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dnav/builders.hpp"
#include "dnav/error.hpp"
#include "dnav/extraction.hpp"
#include "dnav/graph_io.hpp"
#include "dnav/server.hpp"
#include "dnav/validate.hpp"

namespace dnav::cli {

using nlohmann::json;

// --- scripts ---------------------------------------------------------------------

namespace {

[[noreturn]] void script_error(const std::string& message) {
    throw Error(ErrorCode::ParseError, "script: " + message);
}

std::optional<std::string> optional_text(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) script_error(std::string("'") + key + "' must be a string");
    return it->get<std::string>();
}

}  // namespace

SimScript script_from_json(const json& j) {
    SimScript s;
    const json* steps = &j;
    if (j.is_object()) {
        s.start = optional_text(j, "start");
        s.mode = optional_text(j, "mode");
        s.verbosity = optional_text(j, "verbosity");
        if (auto b = j.find("bindings"); b != j.end()) s.bindings = *b;
        auto it = j.find("steps");
        if (it == j.end()) script_error("missing 'steps'");
        steps = &*it;
    }
    if (!steps->is_array()) script_error("'steps' must be an array");
    for (const auto& item : *steps) {
        Step step;
        if (item.is_string()) {
            step.value = item.get<std::string>();
        } else if (item.is_object()) {
            const auto kind = optional_text(item, "kind").value_or("key");
            if (kind == "key") step.kind = Step::Kind::key;
            else if (kind == "rule") step.kind = Step::Kind::rule;
            else if (kind == "command") step.kind = Step::Kind::command;
            else script_error("unknown step kind '" + kind + "'");
            auto value = optional_text(item, "value");
            if (!value) script_error("step needs a 'value'");
            step.value = *value;
        } else {
            script_error("steps must be strings or {kind, value} objects");
        }
        s.steps.push_back(std::move(step));
    }
    if (s.steps.empty()) script_error("script has no steps");
    return s;
}

std::vector<json> script_requests(const SimScript& script, const std::string& graph_path) {
    std::vector<json> out;
    int id = 0;
    json init_args = {{"graph", graph_path}, {"protocol", protocol::kVersion}};
    if (script.mode) init_args["mode"] = *script.mode;
    if (script.verbosity) init_args["verbosity"] = *script.verbosity;
    if (!script.bindings.is_null()) init_args["bindings"] = script.bindings;
    out.push_back({{"id", ++id}, {"op", "init"}, {"args", std::move(init_args)}});
    json enter_args = json::object();
    if (script.start) enter_args["node"] = *script.start;
    out.push_back({{"id", ++id}, {"op", "enter"}, {"args", std::move(enter_args)}});
    for (const auto& step : script.steps) {
        switch (step.kind) {
            case Step::Kind::key:
                out.push_back({{"id", ++id}, {"op", "input"}, {"args", {{"token", step.value}}}});
                break;
            case Step::Kind::rule:
                out.push_back({{"id", ++id}, {"op", "move"}, {"args", {{"rule", step.value}}}});
                break;
            case Step::Kind::command:
                out.push_back({{"id", ++id}, {"op", "command"}, {"args", {{"text", step.value}}}});
                break;
        }
    }
    return out;
}

Simulation simulate(const SimScript& script, const std::string& graph_path,
                    std::shared_ptr<protocol::GraphCache> cache) {
    if (!cache) cache = std::make_shared<protocol::GraphCache>();
    protocol::Connection connection(std::move(cache));
    Simulation sim;
    sim.requests = script_requests(script, graph_path);
    for (const auto& request : sim.requests) {
        sim.responses.push_back(connection.handle(request));
        if (!sim.responses.back().value("ok", false)) {
            sim.halted = true;
            break;
        }
    }
    return sim;
}

std::string transcript(const Simulation& sim) {
    std::string out;
    for (const auto& r : sim.responses) {
        out += protocol::wire(r);
        out += '\n';
    }
    return out;
}

namespace {

std::string id_or_dash(const json& v) { return v.is_string() ? v.get<std::string>() : "-"; }

std::string request_token(const json& request) {
    const auto& args = request.at("args");
    const auto op = request.at("op").get<std::string>();
    if (op == "input") return args.at("token").get<std::string>();
    if (op == "command") return args.at("text").get<std::string>();
    if (op == "move") return args.at("rule").get<std::string>();
    return op;
}

}  // namespace

std::string trace_text(const Simulation& sim) {
    std::ostringstream out;
    for (std::size_t i = 1; i < sim.responses.size(); ++i) {
        const auto& response = sim.responses[i];
        out << (i - 1) << '\t' << request_token(sim.requests[i]) << '\t';
        if (!response.at("ok").get<bool>()) {
            const auto& e = response.at("error");
            out << "error\t" << e.at("code").get<std::string>() << '\t' << e.at("message").get<std::string>()
                << '\n';
            continue;
        }
        const auto& result = response.at("result");
        if (result.contains("handled") && !result.at("handled").get<bool>()) {
            out << "unbound\t-\t\n";
            continue;
        }
        const auto& move = result.at("move");
        const auto& description = result.at("description");
        out << move.at("status").get<std::string>() << '\t' << id_or_dash(move.at("from")) << " -> "
            << id_or_dash(move.at("to")) << '\t' << (description.is_string() ? description.get<std::string>() : "")
            << '\n';
    }
    if (!sim.responses.empty() && !sim.responses.front().at("ok").get<bool>()) {
        const auto& e = sim.responses.front().at("error");
        out << "init\terror\t" << e.at("code").get<std::string>() << '\t' << e.at("message").get<std::string>()
            << '\n';
    }
    return out.str();
}

// --- bench --------------------------------------------------------------------------

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

GraphDecl decl_for(const extraction::SceneSpec& scene) {
    auto s = extraction::infer_edges(extraction::extract_nodes(scene), {});
    auto nodes = extraction::describe_nodes(std::move(s.nodes), extraction::template_text("default"));
    GraphDecl decl;
    for (auto& n : nodes) decl.nodes.push_back(std::move(n.node));
    decl.edges = std::move(s.edges);
    decl.rules = std::move(s.rules);
    decl.universal_edges = std::move(s.universal_edges);
    decl.entry = std::move(s.entry);
    return decl;
}

}  // namespace

std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, std::size_t reps, std::uint32_t seed) {
    reps = std::max<std::size_t>(reps, 1);
    std::vector<extraction::SceneSpec> scenes;
    std::vector<GraphDecl> decls;
    std::vector<BenchRow> rows(sizes.size());
    std::vector<std::vector<double>> ingest_times(sizes.size()), build_times(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        scenes.push_back(extraction::synthesize_scatter(sizes[i], seed));
        decls.push_back(decl_for(scenes.back()));
        rows[i].marks = sizes[i];
        extraction::ingest(scenes.back());  // warm-up, untimed
    }
    // Sizes are interleaved so that transient load affects every size alike.
    for (std::size_t r = 0; r < reps; ++r) {
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            std::optional<Graph> g;
            ingest_times[i].push_back(time_ms([&] { g.emplace(extraction::ingest(scenes[i])); }));
            rows[i].nodes = g->nodes().size();
            rows[i].edges = g->edges().size();
            g.reset();
            GraphDecl copy = decls[i];
            build_times[i].push_back(time_ms([&] { g.emplace(build_graph(std::move(copy))); }));
        }
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        rows[i].ingest_ms = median(ingest_times[i]);
        rows[i].build_ms = median(build_times[i]);
    }
    return rows;
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    if (xs.size() < 2 || xs.size() != ys.size()) return {};
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    LinearFit f;
    if (sxx == 0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

// --- commands ------------------------------------------------------------------------

namespace {

enum class Format { text, json, csv };

const std::map<std::string, Format> kReportFormats{{"text", Format::text}, {"json", Format::json}};
const std::map<std::string, Format> kBenchFormats{
    {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

std::string paint(const Streams& io, std::string_view text, std::string_view ansi) {
    if (!io.color) return std::string(text);
    return "\x1b[" + std::string(ansi) + "m" + std::string(text) + "\x1b[0m";
}

int report_error(const Streams& io, const std::exception& e) {
    io.err << paint(io, "error", "31") << ": ";
    if (const auto* err = dynamic_cast<const Error*>(&e)) io.err << to_string(err->code()) << ": ";
    io.err << e.what() << '\n';
    return kExitUsage;
}

int cmd_validate(const Streams& io, const std::string& path, Format format) {
    auto diagnostics = diagnose_document(load_json_file(path));
    const auto errors = error_count(diagnostics);
    const auto warnings = diagnostics.size() - errors;
    if (format == Format::json) {
        json list = json::array();
        for (const auto& d : diagnostics) list.push_back(to_json(d));
        io.out << json{{"path", path}, {"errors", errors}, {"warnings", warnings}, {"diagnostics", list}}.dump(2)
               << '\n';
    } else {
        for (const auto& d : diagnostics) {
            auto line = format_diagnostic(d);
            const auto severity = to_string(d.severity);
            io.out << paint(io, severity, d.severity == Severity::error ? "31" : "33")
                   << line.substr(severity.size()) << '\n';
        }
        io.out << path << ": " << errors << " error(s), " << warnings << " warning(s)\n";
    }
    return errors == 0 ? kExitOk : kExitFailure;
}

void emit_graph(const Streams& io, const Graph& graph, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        io.out << serialize(graph);
    } else {
        write_file(out_path, serialize(graph));
    }
}

int cmd_simulate(const Streams& io, const std::string& graph_path, const std::string& script_path,
                 const std::string& bindings_path, Format format, bool requests_only) {
    auto script = script_from_json(load_json_file(script_path));
    if (!bindings_path.empty()) script.bindings = load_json_file(bindings_path);
    if (requests_only) {
        for (const auto& r : script_requests(script, graph_path)) io.out << protocol::wire(r) << '\n';
        return kExitOk;
    }
    const auto sim = simulate(script, graph_path);
    if (format == Format::json) {
        io.out << transcript(sim);
    } else {
        auto text = trace_text(sim);
        if (io.color) {
            std::string painted;
            std::istringstream lines(text);
            for (std::string line; std::getline(lines, line);) {
                const bool bad = line.find("\terror\t") != std::string::npos;
                painted += (bad ? paint(io, line, "31") : line) + "\n";
            }
            text = std::move(painted);
        }
        io.out << text;
    }
    if (sim.halted) {
        io.err << "simulation halted at request " << sim.responses.size() << " of " << sim.requests.size() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_bench(const Streams& io, const std::vector<std::size_t>& sizes, std::size_t reps, std::uint32_t seed,
              Format format) {
    const auto rows = bench(sizes, reps, seed);
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        xs.push_back(static_cast<double>(r.marks));
        ys.push_back(r.ingest_ms);
    }
    const auto fit = fit_linear(xs, ys);
    if (format == Format::json) {
        json list = json::array();
        for (const auto& r : rows)
            list.push_back({{"marks", r.marks}, {"nodes", r.nodes}, {"edges", r.edges},
                            {"ingest_ms", r.ingest_ms}, {"build_ms", r.build_ms}});
        io.out << json{{"reps", reps},
                       {"rows", list},
                       {"fit", {{"slope_ms_per_mark", fit.slope}, {"intercept_ms", fit.intercept}, {"r2", fit.r2}}}}
                      .dump(2)
               << '\n';
        return kExitOk;
    }
    const auto old_flags = io.out.flags();
    const auto old_precision = io.out.precision();
    io.out << std::fixed << std::setprecision(4);
    if (format == Format::csv) {
        io.out << "marks,nodes,edges,ingest_ms,build_ms\n";
        for (const auto& r : rows)
            io.out << r.marks << ',' << r.nodes << ',' << r.edges << ',' << r.ingest_ms << ',' << r.build_ms << '\n';
        io.out << "# fit slope_ms_per_mark=" << std::setprecision(8) << fit.slope << " intercept_ms=" << fit.intercept
               << " r2=" << std::setprecision(4) << fit.r2 << '\n';
    } else {
        io.out << std::setw(8) << "marks" << std::setw(8) << "nodes" << std::setw(8) << "edges" << std::setw(12)
               << "ingest ms" << std::setw(12) << "build ms" << '\n';
        for (const auto& r : rows)
            io.out << std::setw(8) << r.marks << std::setw(8) << r.nodes << std::setw(8) << r.edges << std::setw(12)
                   << r.ingest_ms << std::setw(12) << r.build_ms << '\n';
        if (rows.size() >= 2)
            io.out << "linear fit: " << std::setprecision(6) << fit.slope * 1000 << " us/mark, R^2 = "
                   << std::setprecision(4) << fit.r2 << '\n';
    }
    io.out.flags(old_flags);
    io.out.precision(old_precision);
    return kExitOk;
}

int cmd_serve(const Streams& io, bool use_stdio, std::optional<int> port, const std::string& graph) {
    auto cache = std::make_shared<protocol::GraphCache>();
    std::optional<std::filesystem::path> default_graph;
    if (!graph.empty()) {
        cache->load(graph);  // surface load errors before serving
        default_graph = graph;
    }
    if (use_stdio || !port) {
        protocol::Connection connection(cache, default_graph);
        protocol::serve_stream(io.in, io.out, connection);
        return kExitOk;
    }
    protocol::TcpServer server(static_cast<std::uint16_t>(*port), cache, default_graph);
    io.out << "listening on 127.0.0.1:" << server.port() << std::endl;
    server.run();
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, Streams io) {
    CLI::App app{"Navigation graph engine: validate, build, ingest, simulate, serve, bench", "dnav"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dnav 1.0.0 (protocol " + std::to_string(protocol::kVersion) + ")");

    Format format = Format::text;

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check a graph file and list diagnostics");
    validate_cmd->add_option("graph", validate_path, "Graph JSON file")->required();
    validate_cmd->add_option("--format", format, "Output format")
        ->transform(CLI::CheckedTransformer(kReportFormats, CLI::ignore_case));

    std::string build_path, build_out;
    auto* build_cmd = app.add_subcommand("build", "Run a structure builder over a spec file");
    build_cmd->add_option("spec", build_path, "Builder spec JSON (kind: list|tree|dual_hierarchy|adjacency)")
        ->required();
    build_cmd->add_option("-o,--output", build_out, "Output graph file (default stdout)");

    std::string ingest_path, ingest_out, ingest_mode = "flat", ingest_template = "default";
    auto* ingest_cmd = app.add_subcommand("ingest", "Turn a chart scene into a navigation graph");
    ingest_cmd->add_option("scene", ingest_path, "Scene JSON file")->required();
    ingest_cmd->add_option("--mode", ingest_mode, "flat or grouped")->check(CLI::IsMember({"flat", "grouped"}));
    ingest_cmd->add_option("--template", ingest_template, "Template id (default, values, position) or text");
    ingest_cmd->add_option("-o,--output", ingest_out, "Output graph file (default stdout)");

    std::string sim_graph, sim_script, sim_bindings;
    bool sim_requests = false;
    auto* sim_cmd = app.add_subcommand("simulate", "Replay an input script and print the trace");
    sim_cmd->add_option("graph", sim_graph, "Graph JSON file")->required();
    sim_cmd->add_option("script", sim_script, "Script JSON file")->required();
    sim_cmd->add_option("--bindings", sim_bindings, "Binding preferences {token: rule}");
    sim_cmd->add_option("--format", format, "text (trace) or json (protocol transcript)")
        ->transform(CLI::CheckedTransformer(kReportFormats, CLI::ignore_case));
    sim_cmd->add_flag("--requests", sim_requests, "Print the equivalent protocol requests instead");

    bool serve_stdio = false;
    std::optional<int> serve_port;
    std::string serve_graph;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the session protocol");
    auto* stdio_flag = serve_cmd->add_flag("--stdio", serve_stdio, "Serve on stdin/stdout");
    serve_cmd->add_option("--port", serve_port, "Serve on 127.0.0.1:<port> (0 picks one)")
        ->check(CLI::Range(0, 65535))
        ->excludes(stdio_flag);
    serve_cmd->add_option("--graph", serve_graph, "Graph used when init names none");

    std::vector<std::size_t> bench_sizes{406, 1000, 5000, 10000, 20300};
    std::size_t bench_reps = 10;
    std::uint32_t bench_seed = 7;
    auto* bench_cmd = app.add_subcommand("bench", "Time ingestion of synthetic scatter scenes");
    bench_cmd->add_option("--sizes", bench_sizes, "Mark counts")->delimiter(',');
    bench_cmd->add_option("--reps", bench_reps, "Repetitions per size (median reported)")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_seed, "Scene generator seed");
    bench_cmd->add_option("--format", format, "csv, json or text")
        ->transform(CLI::CheckedTransformer(kBenchFormats, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, io.out, io.err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(io, validate_path, format);
        if (*build_cmd) {
            emit_graph(io, builders::build_from_spec(load_json_file(build_path)), build_out);
            return kExitOk;
        }
        if (*ingest_cmd) {
            extraction::ExtractionOptions options;
            options.mode = *extraction::mode_from_string(ingest_mode);
            options.description_template = ingest_template;
            emit_graph(io, extraction::ingest(extraction::scene_from_json(load_json_file(ingest_path)), options),
                       ingest_out);
            return kExitOk;
        }
        if (*sim_cmd) return cmd_simulate(io, sim_graph, sim_script, sim_bindings, format, sim_requests);
        if (*serve_cmd) return cmd_serve(io, serve_stdio, serve_port, serve_graph);
        if (*bench_cmd) {
            return cmd_bench(io, bench_sizes, bench_reps, bench_seed,
                             bench_cmd->count("--format") ? format : Format::csv);
        }
    } catch (const std::exception& e) {
        return report_error(io, e);
    }
    return kExitUsage;
}

}  // namespace dnav::cli
