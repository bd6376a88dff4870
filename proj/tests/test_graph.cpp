#include <doctest.h>

#include "dnav/error.hpp"
#include "dnav/graph.hpp"
#include "dnav/graph_io.hpp"
#include "dnav/resolvers.hpp"
#include "dnav/validate.hpp"
#include "support.hpp"

using namespace dnav;
using testing::fixture;

namespace {

Node make_node(std::string id, std::vector<std::string> edges, std::string label = "") {
    Node n;
    n.id = std::move(id);
    n.edges = std::move(edges);
    n.semantics.label = label.empty() ? n.id : label;
    return n;
}

/// a -> b -> c under next/prev, plus universal exit.
GraphDecl chain_decl() {
    GraphDecl d;
    d.rules = {{"next", Direction::toward_target, {"ArrowRight"}},
               {"prev", Direction::toward_source, {"ArrowLeft"}},
               {"exit", Direction::toward_target, {"Escape"}}};
    d.nodes = {make_node("a", {"ab"}), make_node("b", {"ab", "bc"}), make_node("c", {"bc"})};
    d.edges = {{"ab", Endpoint::literal("a"), Endpoint::literal("b"), {"next", "prev"}},
               {"bc", Endpoint::literal("b"), Endpoint::literal("c"), {"next", "prev"}},
               {"any-exit", Endpoint::resolver("current"), Endpoint::resolver("exit"), {"exit"}}};
    d.universal_edges = {"any-exit"};
    d.entry = "a";
    return d;
}

ErrorCode build_error(GraphDecl d) {
    try {
        build_graph(std::move(d));
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected build_graph to throw");
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("build_graph accepts a well-formed chain and indexes it") {
    auto g = build_graph(chain_decl());
    CHECK(g.nodes().size() == 3);
    CHECK(g.find_node("b") != nullptr);
    CHECK(g.find_node("::exit") == nullptr);
    CHECK(g.find_edge("bc")->target.ref == "c");
    CHECK(g.rule("prev").direction == Direction::toward_source);
    CHECK(g.entry() == "a");
    CHECK_THROWS_AS(g.node("zz"), Error);
}

TEST_CASE("build_graph rejects broken declarations with specific codes") {
    SUBCASE("dangling edge target") {
        auto d = chain_decl();
        d.edges[1].target = Endpoint::literal("nowhere");
        CHECK(build_error(d) == ErrorCode::DanglingEdgeRef);
    }
    SUBCASE("node lists an unknown edge") {
        auto d = chain_decl();
        d.nodes[0].edges.push_back("ghost");
        CHECK(build_error(d) == ErrorCode::DanglingEdgeRef);
    }
    SUBCASE("edge names an unknown rule") {
        auto d = chain_decl();
        d.edges[0].rules.push_back("teleport");
        CHECK(build_error(d) == ErrorCode::DanglingEdgeRef);
    }
    SUBCASE("duplicate node id") {
        auto d = chain_decl();
        d.nodes.push_back(make_node("a", {}));
        CHECK(build_error(d) == ErrorCode::DuplicateId);
    }
    SUBCASE("duplicate edge id") {
        auto d = chain_decl();
        d.edges.push_back(d.edges[0]);
        CHECK(build_error(d) == ErrorCode::DuplicateId);
    }
    SUBCASE("unknown entry") {
        auto d = chain_decl();
        d.entry = "q";
        CHECK(build_error(d) == ErrorCode::UnknownEntry);
    }
    SUBCASE("reserved exit id") {
        auto d = chain_decl();
        d.nodes.push_back(make_node("::exit", {}));
        CHECK(build_error(d) == ErrorCode::ReservedIdUse);
    }
    SUBCASE("unknown resolver") {
        auto d = chain_decl();
        d.edges[2].target = Endpoint::resolver("sideways");
        CHECK(build_error(d) == ErrorCode::UnknownResolver);
    }
    SUBCASE("edge without rules") {
        auto d = chain_decl();
        d.edges[0].rules.clear();
        CHECK(build_error(d) == ErrorCode::InvalidDeclaration);
    }
    SUBCASE("universal edge with a literal source") {
        auto d = chain_decl();
        d.universal_edges.push_back("ab");
        CHECK(build_error(d) == ErrorCode::InvalidDeclaration);
    }
    SUBCASE("negative rect geometry") {
        auto d = chain_decl();
        d.nodes[0].render = Render{RectGeometry{0, 0, -1, 4}, "dn-focus"};
        CHECK(build_error(d) == ErrorCode::InvalidDeclaration);
    }
    SUBCASE("empty path geometry") {
        auto d = chain_decl();
        d.nodes[0].render = Render{PathGeometry{""}, "dn-focus"};
        CHECK(build_error(d) == ErrorCode::InvalidDeclaration);
    }
    SUBCASE("listing an edge the node does not take part in") {
        auto d = chain_decl();
        d.nodes[2].edges.push_back("ab");
        CHECK(build_error(d) == ErrorCode::DanglingEdgeRef);
    }
}

TEST_CASE("edges may target the exit sentinel literally") {
    auto d = chain_decl();
    d.edges.push_back({"c-out", Endpoint::literal("c"), Endpoint::literal("::exit"), {"next"}});
    d.nodes[2].edges.push_back("c-out");
    auto g = build_graph(d);
    auto match = first_applicable_edge(g, "c", "next", static_context(g, "c"));
    REQUIRE(match);
    CHECK(match->destination == "::exit");
}

TEST_CASE("applicable edges: node edges in declared order, then universal edges") {
    auto d = chain_decl();
    d.edges.push_back({"b-exit", Endpoint::literal("b"), Endpoint::literal("a"), {"exit"}});
    d.nodes[1].edges.insert(d.nodes[1].edges.begin(), "b-exit");
    auto g = build_graph(d);
    auto list = applicable_edges(g, "b", "exit", static_context(g, "b"));
    REQUIRE(list.size() == 2);
    CHECK(list[0] == EdgeMatch{"b-exit", "a"});
    CHECK(list[1] == EdgeMatch{"any-exit", std::string(kExitNode)});
    CHECK(first_applicable_edge(g, "b", "exit", static_context(g, "b"))->edge == "b-exit");
    // Rule direction decides which endpoint is the destination.
    CHECK(first_applicable_edge(g, "b", "prev", static_context(g, "b"))->destination == "a");
    CHECK(first_applicable_edge(g, "b", "next", static_context(g, "b"))->destination == "c");
    CHECK_FALSE(first_applicable_edge(g, "a", "prev", static_context(g, "a")));
}

TEST_CASE("built-in resolvers") {
    auto g = build_graph(chain_decl());
    ResolverContext ctx{"b", std::string("a"), "a", {}};
    CHECK(resolve_endpoint(g, Endpoint::resolver("current"), ctx) == "b");
    CHECK(resolve_endpoint(g, Endpoint::resolver("previous"), ctx) == "a");
    CHECK(resolve_endpoint(g, Endpoint::resolver("entry"), ctx) == "a");
    CHECK(resolve_endpoint(g, Endpoint::resolver("exit"), ctx) == std::string(kExitNode));
    ResolverContext no_history{"b", std::nullopt, "a", {}};
    CHECK_FALSE(resolve_endpoint(g, Endpoint::resolver("previous"), no_history));
    CHECK(resolve_endpoint(g, Endpoint::literal("c"), ctx) == "c");
}

TEST_CASE("custom resolver registries") {
    auto registry = std::make_shared<ResolverRegistry>();
    resolvers::register_builtins(*registry);
    registry->add("always-c", [](const Graph&, const ResolverContext&) { return std::optional<NodeId>("c"); });
    auto d = chain_decl();
    d.edges.push_back({"jump", Endpoint::resolver("current"), Endpoint::resolver("always-c"), {"next"}});
    d.universal_edges.push_back("jump");
    auto g = build_graph(d, registry);
    CHECK(first_applicable_edge(g, "c", "next", static_context(g, "c"))->destination == "c");
    CHECK_THROWS_AS(build_graph(d), Error);  // not in the default registry
}

TEST_CASE("graph copies stay usable") {
    auto g = build_graph(chain_decl());
    Graph copy = g;
    Graph assigned = build_graph(chain_decl());
    assigned = copy;
    CHECK(copy == g);
    CHECK(assigned.find_node("c") != nullptr);
    CHECK(assigned.find_edge("ab") != nullptr);
}

TEST_CASE("serialization is canonical and round-trips") {
    auto g = build_graph(chain_decl());
    const auto text = serialize(g);
    CHECK(text.back() == '\n');
    auto back = deserialize(text);
    CHECK(back == g);
    CHECK(serialize(back) == text);
    auto doc = nlohmann::json::parse(text);
    CHECK(doc.at("exitTarget").is_null());
    CHECK(doc.at("edges").at("ab").at("source") == nlohmann::json{{"literal", "a"}});
    CHECK_FALSE(doc.contains("drillRule"));
}

TEST_CASE("shipped fixtures are stored in canonical form") {
    for (const auto& name : testing::fixture_graphs()) {
        CAPTURE(name);
        const auto text = testing::slurp(fixture(name));
        CHECK(serialize(deserialize(text)) == text);
    }
}

TEST_CASE("parse errors carry line and column") {
    try {
        deserialize("{\n  \"nodes\": {,\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 11);
    }
    CHECK_THROWS_AS(deserialize("[]"), ParseError);
    CHECK_THROWS_AS(deserialize(R"({"nodes": {}, "edges": {}, "rules": {}})"), Error);
}

TEST_CASE("missing files raise IoError") {
    try {
        load_graph("/nonexistent/graph.json");
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}

TEST_CASE("validate: shipped fixtures are clean and fully reachable (oracle)") {
    for (const auto& name : testing::fixture_graphs()) {
        CAPTURE(name);
        auto g = load_graph(fixture(name));
        auto diagnostics = validate(g);
        for (const auto& d : diagnostics) MESSAGE(format_diagnostic(d));
        CHECK(diagnostics.empty());
        const auto reachable = testing::literal_reachable(testing::raw(fixture(name)));
        CHECK(reachable.size() == g.nodes().size());
    }
}

TEST_CASE("validate reports warnings without errors") {
    auto d = chain_decl();
    d.nodes.push_back(make_node("island", {}));
    d.nodes.push_back(make_node("mute", {"mute-loop"}, ""));
    d.nodes.back().semantics.label.clear();
    d.edges.push_back({"mute-loop", Endpoint::literal("mute"), Endpoint::literal("mute"), {"next"}});
    d.edges.push_back({"stray", Endpoint::literal("a"), Endpoint::literal("c"), {"next"}});
    d.rules.push_back({"also-next", Direction::toward_target, {"ArrowRight"}});
    auto g = build_graph(d);
    auto diagnostics = validate(g);
    CHECK(error_count(diagnostics) == 0);
    auto has = [&](std::string_view code, std::string_view subject) {
        for (const auto& x : diagnostics)
            if (x.code == code && x.subject == subject) return true;
        return false;
    };
    CHECK(has("Unreachable", "island"));
    CHECK(has("DeadEnd", "island"));
    CHECK(has("MissingLabel", "mute"));
    CHECK(has("SelfLoop", "mute-loop"));
    CHECK(has("OrphanEdge", "stray"));
    CHECK(has("ConflictingBinding", "ArrowRight"));
    CHECK_FALSE(has("Unreachable", "c"));
    CHECK(format_diagnostic(diagnostics.front()).rfind("warning ", 0) == 0);
}

TEST_CASE("validate warns when nothing leads out of the structure") {
    auto d = chain_decl();
    d.universal_edges.clear();
    d.edges.pop_back();
    d.rules.pop_back();
    auto diagnostics = validate(build_graph(d));
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].code == "NoExit");
}

TEST_CASE("diagnose_document turns build failures into one error") {
    auto doc = testing::raw(fixture("set_diagram.json"));
    CHECK(diagnose_document(doc).empty());
    doc["edges"]["up:a-only"]["target"] = {{"literal", "missing"}};
    auto diagnostics = diagnose_document(doc);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].severity == Severity::error);
    CHECK(diagnostics[0].code == "DanglingEdgeRef");
    CHECK(error_count(diagnostics) == 1);
}
