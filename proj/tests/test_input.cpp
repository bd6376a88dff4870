#include <doctest.h>

#include "dnav/error.hpp"
#include "dnav/input.hpp"
#include "support.hpp"

using namespace dnav;

namespace {

std::shared_ptr<const Graph> stacked_bar() {
    static auto g = testing::shared_graph(testing::fixture("stacked_bar.json"));
    return g;
}

}  // namespace

TEST_CASE("default bindings come from rule declarations") {
    auto table = default_bindings(stacked_bar());
    CHECK(table.token_rule("ArrowDown") == "down");
    CHECK(table.token_rule("swipe-left") == "left");
    CHECK(table.token_rule("KeyL") == "up-to-contest");
    CHECK(table.token_rule("Backspace") == "up-to-axis");
    CHECK(table.token_rule("Escape") == "exit");
    CHECK_FALSE(table.token_rule("arrowdown"));  // tokens are exact
    CHECK(table.command_rule("  LEFT ") == "left");
    CHECK(table.command_rule("undo") == "undo");
    CHECK_FALSE(table.command_rule("sideways"));
    CHECK(table.lookup("left") == "left");
}

TEST_CASE("two rules claiming one token is a ConflictingBinding") {
    auto doc = testing::raw(testing::fixture("set_diagram.json"));
    doc["rules"]["left"]["bindings"].push_back("Enter");
    auto g = std::make_shared<const Graph>(graph_from_json(doc));
    try {
        default_bindings(g);
        FAIL("expected ConflictingBinding");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConflictingBinding);
    }
}

TEST_CASE("remapping is persistent and validated") {
    auto table = default_bindings(stacked_bar());
    auto remapped = remap(table, "KeyJ", "down");
    CHECK(remapped.token_rule("KeyJ") == "down");
    CHECK_FALSE(table.token_rule("KeyJ"));
    auto spoken = remap_command(table, "Next Stack", "right");
    CHECK(spoken.command_rule("next stack") == "right");
    try {
        remap(table, "KeyJ", "warp");
        FAIL("expected UnknownRule");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownRule);
    }
    auto doc = apply_remap_document(table, {{"KeyW", "up"}, {"KeyS", "down"}});
    CHECK(doc.token_rule("KeyW") == "up");
    CHECK(doc.token_rule("KeyS") == "down");
    CHECK_THROWS_AS(apply_remap_document(table, nlohmann::json::array()), Error);
}

TEST_CASE("key, gesture and spoken inputs reach the same move") {
    auto table = default_bindings(stacked_bar());
    std::vector<MoveResult> results;
    for (std::string_view token : {"ArrowLeft", "swipe-left", "left"}) {
        auto [s, r0] = enter(stacked_bar(), NodeId("BPL-Chelsea"));
        auto r = dispatch(table, s, token);
        REQUIRE(r);
        results.push_back(*r);
    }
    CHECK(results[0].to == "BPL-Arsenal");
    CHECK(results[0] == results[1]);
    CHECK(results[1] == results[2]);
}

TEST_CASE("unbound tokens do nothing") {
    auto table = default_bindings(stacked_bar());
    auto [s, r0] = enter(stacked_bar());
    const FocusState before = s;
    CHECK_FALSE(dispatch(table, s, "KeyQ"));
    CHECK(s == before);
    CHECK_FALSE(parse_command(table, "dance"));
    CHECK(normalize_command("\t Up-To-Axis \n") == "up-to-axis");
}
