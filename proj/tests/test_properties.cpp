// Property tests over seeded random inputs.
#include <doctest.h>

#include <random>

#include "dnav/builders.hpp"
#include "dnav/engine.hpp"
#include "dnav/graph_io.hpp"
#include "dnav/render.hpp"
#include "support.hpp"

using namespace dnav;

namespace {

using Rng = std::mt19937;

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

std::string random_text(Rng& rng) {
    static const std::vector<std::string> words{"alpha", "Beta", "γάμμα", "\"quoted\"", "tab\there", "", "42", "é"};
    return words[pick(rng, words.size())] + " " + words[pick(rng, words.size())];
}

/// Random well-formed declaration: literal and resolver edges, universal
/// edges, optional render and datum payloads.
GraphDecl random_decl(Rng& rng) {
    GraphDecl d;
    const std::size_t n = 1 + pick(rng, 12);
    const std::vector<std::string> resolvers{"previous", "entry", "exit", "first-child", "current"};
    d.rules = {{"r0", Direction::toward_target, {"KeyA"}},
               {"r1", Direction::toward_source, {"KeyB", "swipe-up"}},
               {"r2", Direction::toward_target, {}}};
    for (std::size_t i = 0; i < n; ++i) {
        Node node;
        node.id = "n" + std::to_string(i);
        node.semantics.label = random_text(rng);
        if (pick(rng, 2)) node.semantics.description = random_text(rng);
        if (pick(rng, 3) == 0) node.semantics.position = Position{i + 1, n};
        if (pick(rng, 3) == 0) node.render = Render{RectGeometry{double(i), 2.5, 10, 0.25}, "dn-focus"};
        if (pick(rng, 2)) node.datum = {{"value", static_cast<int>(pick(rng, 1000))}, {"tag", random_text(rng)}};
        d.nodes.push_back(std::move(node));
    }
    const std::size_t m = pick(rng, 3 * n + 1);
    for (std::size_t k = 0; k < m; ++k) {
        Edge e;
        e.id = "e" + std::to_string(k);
        const auto s = pick(rng, n);
        e.source = Endpoint::literal(d.nodes[s].id);
        e.target = pick(rng, 4) == 0 ? Endpoint::resolver(resolvers[pick(rng, resolvers.size())])
                                     : Endpoint::literal(d.nodes[pick(rng, n)].id);
        e.rules = {d.rules[pick(rng, 3)].name};
        if (pick(rng, 3) == 0) e.rules.push_back(d.rules[pick(rng, 3)].name);
        d.nodes[s].edges.push_back(e.id);
        if (e.target.is_literal() && pick(rng, 2)) d.nodes[std::stoul(e.target.ref.substr(1))].edges.push_back(e.id);
        d.edges.push_back(std::move(e));
    }
    for (auto& node : d.nodes) {
        std::sort(node.edges.begin(), node.edges.end());
        node.edges.erase(std::unique(node.edges.begin(), node.edges.end()), node.edges.end());
    }
    if (pick(rng, 2)) {
        d.edges.push_back({"u-exit", Endpoint::resolver("current"), Endpoint::resolver("exit"), {"r2"}});
        d.universal_edges.push_back("u-exit");
    }
    d.entry = d.nodes[pick(rng, n)].id;
    if (pick(rng, 2)) d.exit_target = "after";
    if (pick(rng, 4) == 0) d.drill_rule = "r0";
    return d;
}

bool targets_previous(const Graph& g, const MoveResult& r) {
    if (!r.edge || !r.rule) return false;
    const Edge& e = *g.find_edge(*r.edge);
    const bool forward = g.rule(*r.rule).direction == Direction::toward_target;
    return (forward ? e.target : e.source).is_resolver("previous");
}

/// Random walk checked against an independently maintained history stack and
/// a running count of materialized elements under on-demand plans.
void random_walk(const std::shared_ptr<const Graph>& g, Rng& rng) {
    const auto node_pick = pick(rng, g->nodes().size() + 1);
    const std::optional<NodeId> start =
        node_pick == g->nodes().size() ? std::nullopt : std::optional<NodeId>(g->nodes()[node_pick].id);
    auto [s, entered] = enter(g, start);
    std::vector<NodeId> stack;
    long live = 0;
    auto apply = [&](const MoveResult& r) {
        const auto plan = plan_render(*g, r, RenderMode::on_demand);
        live += static_cast<long>(plan.additions.size()) - static_cast<long>(plan.removals.size());
    };
    apply(entered);
    REQUIRE(live == 1);
    const auto length = pick(rng, 51);
    for (std::size_t step = 0; step < length; ++step) {
        const NodeId before = s.current();
        const bool do_undo = pick(rng, 5) == 0;
        MoveResult r = do_undo ? undo(s) : move(s, g->rules()[pick(rng, g->rules().size())].name);
        apply(r);
        if (r.status == MoveStatus::exited) {
            CHECK_FALSE(s.active());
            CHECK(live == 0);
            CHECK(r.from == before);
            return;
        }
        CHECK(live == 1);
        if (r.status == MoveStatus::blocked) {
            CHECK(s.current() == before);
            if (do_undo) CHECK(stack.empty());
        } else if (do_undo || targets_previous(*g, r)) {
            REQUIRE_FALSE(stack.empty());
            CHECK(r.to == stack.back());
            stack.pop_back();
        } else {
            stack.push_back(before);
        }
        CHECK(s.previous_stack() == stack);
        CHECK(s.current() == (r.to ? *r.to : before));
    }
}

}  // namespace

TEST_CASE("random graphs survive serialize and deserialize unchanged") {
    Rng rng(20241);
    for (int i = 0; i < 300; ++i) {
        auto g = build_graph(random_decl(rng));
        const auto text = serialize(g);
        auto back = deserialize(text);
        CHECK(back == g);
        CHECK(serialize(back) == text);
    }
}

TEST_CASE("random walks: undo restores the prior node and plans keep one element live") {
    Rng rng(99);
    for (const auto& name : testing::fixture_graphs()) {
        CAPTURE(name);
        auto g = testing::shared_graph(testing::fixture(name));
        for (int walk = 0; walk < 1000; ++walk) random_walk(g, rng);
    }
}

TEST_CASE("random walks over random graphs") {
    Rng rng(5150);
    for (int i = 0; i < 200; ++i) {
        auto g = std::make_shared<const Graph>(build_graph(random_decl(rng)));
        for (int walk = 0; walk < 10; ++walk) random_walk(g, rng);
    }
}

TEST_CASE("exit is reachable in one move from every node of every fixture") {
    for (const auto& name : testing::fixture_graphs()) {
        auto g = testing::shared_graph(testing::fixture(name));
        for (const auto& node : g->nodes()) {
            CAPTURE(node.id);
            auto [s, r0] = enter(g, node.id);
            auto r = move(s, "exit");
            CHECK(r.status == MoveStatus::exited);
            CHECK_FALSE(s.active());
            auto plan = plan_render(*g, r, RenderMode::on_demand);
            CHECK(plan.focus.kind == FocusTarget::Kind::external);
            CHECK(plan.focus.ref == *g->exit_target());
        }
    }
}

TEST_CASE("random adjacency: rings match the border sets and cycle in order") {
    Rng rng(777);
    for (int i = 0; i < 200; ++i) {
        builders::AdjacencySpec spec;
        const std::size_t n = 1 + pick(rng, 15);
        for (std::size_t k = 0; k < n; ++k) spec.regions.push_back("r" + std::to_string(k));
        nlohmann::json borders = nlohmann::json::array();
        if (n > 1) {
            const std::size_t m = pick(rng, 2 * n + 1);
            for (std::size_t k = 0; k < m; ++k) {
                auto a = pick(rng, n), b = pick(rng, n);
                if (a == b) continue;
                spec.borders.emplace_back(spec.regions[a], spec.regions[b]);
                borders.push_back({spec.regions[a], spec.regions[b]});
            }
        }
        const auto expected = testing::border_sets(borders);
        auto g = std::make_shared<const Graph>(builders::build_adjacency(spec));
        for (const auto& region : spec.regions) {
            const auto ring = g->node(region).datum.at("neighbors").get<std::vector<std::string>>();
            const std::set<std::string> got(ring.begin(), ring.end());
            auto it = expected.find(region);
            CHECK(got == (it == expected.end() ? std::set<std::string>{} : it->second));
            CHECK(got.size() == ring.size());
            if (ring.empty()) continue;
            auto [s, r0] = enter(g, region);
            REQUIRE(move(s, "drill").to == ring[0]);
            for (std::size_t k = 1; k <= ring.size(); ++k) {
                auto r = move(s, "next-neighbor");
                if (ring.size() == 1) {
                    CHECK(r.status == MoveStatus::blocked);
                } else {
                    CHECK(r.to == ring[k % ring.size()]);
                }
            }
            CHECK(move(s, "up").to == region);
        }
    }
}

TEST_CASE("describe is pure") {
    for (const auto& name : testing::fixture_graphs()) {
        auto g = testing::shared_graph(testing::fixture(name));
        for (const auto& node : g->nodes()) {
            const Node copy = node;
            for (auto v : {Verbosity::terse, Verbosity::normal, Verbosity::verbose}) {
                CHECK(describe(node, v) == describe(node, v));
                CHECK_FALSE(describe(node, v).empty());
            }
            CHECK(copy == node);
        }
    }
}
