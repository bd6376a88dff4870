#include <doctest.h>

#include "dnav/error.hpp"
#include "dnav/render.hpp"
#include "support.hpp"

using namespace dnav;

namespace {

std::shared_ptr<const Graph> stacked_bar() {
    static auto g = testing::shared_graph(testing::fixture("stacked_bar.json"));
    return g;
}

MoveResult bpl_to_fa_cup() {
    auto [s, r0] = enter(stacked_bar(), NodeId("BPL"));
    return move(s, "down");
}

}  // namespace

TEST_CASE("on-demand move removes the origin and adds the destination") {
    auto r = bpl_to_fa_cup();
    auto plan = plan_render(*stacked_bar(), r, RenderMode::on_demand);
    CHECK(plan.removals == std::vector<NodeId>{"BPL"});
    REQUIRE(plan.additions.size() == 1);
    CHECK(plan.additions[0].first == "FA Cup");
    CHECK(plan.additions[0].second.geometry.has_value());
    CHECK(plan.additions[0].second.style_token == "dn-focus");
    CHECK(plan.additions[0].second.semantics.label == "FA Cup");
    CHECK(plan.focus == FocusTarget{FocusTarget::Kind::node, "FA Cup"});
}

TEST_CASE("pre-rendered move only shifts focus") {
    auto plan = plan_render(*stacked_bar(), bpl_to_fa_cup(), RenderMode::pre_rendered);
    CHECK(plan.removals.empty());
    CHECK(plan.additions.empty());
    CHECK(plan.focus.ref == "FA Cup");
}

TEST_CASE("exit removes the origin and hands focus to the exit target") {
    auto [s, r0] = enter(stacked_bar(), NodeId("CL"));
    auto r = move(s, "exit");
    auto plan = plan_render(*stacked_bar(), r, RenderMode::on_demand);
    CHECK(plan.removals == std::vector<NodeId>{"CL"});
    CHECK(plan.additions.empty());
    CHECK(plan.focus == FocusTarget{FocusTarget::Kind::external, "after-chart"});
}

TEST_CASE("blocked and entered plans") {
    auto [s, entered] = enter(stacked_bar());
    auto plan = plan_render(*stacked_bar(), entered, RenderMode::on_demand);
    CHECK(plan.removals.empty());
    CHECK(plan.additions.size() == 1);
    auto blocked = move(s, "left");
    REQUIRE(blocked.status == MoveStatus::blocked);
    plan = plan_render(*stacked_bar(), blocked, RenderMode::on_demand);
    CHECK(plan.additions.empty());
    CHECK(plan.removals.empty());
    CHECK(plan.focus.ref == "title");
}

TEST_CASE("nodes without geometry fall back to a semantics-only entry") {
    auto g = testing::shared_graph(testing::fixture("parallel_vectors.json"));
    const auto& node = g->node("vectors");
    REQUIRE_FALSE(node.render);
    auto spec = render_spec_for(node);
    CHECK_FALSE(spec.geometry);
    CHECK(spec.semantics.label == "Vectors");
    try {
        render_spec_for(node, PlanOptions{false});
        FAIL("expected MissingRenderSpec");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingRenderSpec);
    }
}

TEST_CASE("plan JSON inlines geometry") {
    auto j = to_json(plan_render(*stacked_bar(), bpl_to_fa_cup(), RenderMode::on_demand));
    CHECK(j.at("removals") == nlohmann::json{"BPL"});
    CHECK(j.at("additions")[0].at("node") == "FA Cup");
    CHECK(j.at("additions")[0].at("geometry").at("kind") == "rect");
    CHECK(j.at("focus").at("kind") == "node");
}

TEST_CASE("describe at each verbosity") {
    const auto& fa = stacked_bar()->node("FA Cup");
    // Oracle built from the fixture's own fields.
    const auto& s = fa.semantics;
    const std::string expected = s.label + ". " + s.description + ". " + std::to_string(s.position->index) + " of " +
                                 std::to_string(s.position->count) + ".";
    CHECK(expected == "FA Cup. Contest group. 2 of 3.");
    CHECK(describe(fa) == expected);
    CHECK(describe(fa, Verbosity::terse) == "FA Cup");
    CHECK(describe(fa, Verbosity::verbose) == "FA Cup, group. Contest group. 2 of 3.");
    CHECK(describe(fa) == describe(fa));

    Node bare;
    bare.id = "x";
    bare.semantics.label = "Just a label";
    CHECK(describe(bare, Verbosity::terse) == "Just a label");
    CHECK(describe(bare) == "Just a label.");

    Node link;
    link.semantics = {Role::link, "Source", "Where the data came from!", std::string("https://example.org"), {}};
    CHECK(describe(link, Verbosity::verbose) == "Source, link. Where the data came from! Links to https://example.org.");
}

TEST_CASE("mode and verbosity tokens") {
    CHECK(render_mode_from_string("onDemand") == RenderMode::on_demand);
    CHECK(to_string(RenderMode::pre_rendered) == "preRendered");
    CHECK(verbosity_from_string("default") == Verbosity::normal);
    CHECK_FALSE(verbosity_from_string("chatty"));
}
