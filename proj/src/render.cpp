#include "dnav/render.hpp"

#include "dnav/error.hpp"

namespace dnav {

std::string_view to_string(RenderMode mode) noexcept {
    return mode == RenderMode::on_demand ? "onDemand" : "preRendered";
}

std::optional<RenderMode> render_mode_from_string(std::string_view s) noexcept {
    if (s == "onDemand") return RenderMode::on_demand;
    if (s == "preRendered") return RenderMode::pre_rendered;
    return std::nullopt;
}

std::string_view to_string(Verbosity verbosity) noexcept {
    switch (verbosity) {
        case Verbosity::terse: return "terse";
        case Verbosity::normal: return "default";
        case Verbosity::verbose: return "verbose";
    }
    return "default";
}

std::optional<Verbosity> verbosity_from_string(std::string_view s) noexcept {
    if (s == "terse") return Verbosity::terse;
    if (s == "default") return Verbosity::normal;
    if (s == "verbose") return Verbosity::verbose;
    return std::nullopt;
}

nlohmann::json to_json(const RenderPlan& plan) {
    nlohmann::json additions = nlohmann::json::array();
    for (const auto& [id, spec] : plan.additions) {
        auto entry = to_json(spec);
        entry["node"] = id;
        additions.push_back(std::move(entry));
    }
    std::string_view kind = plan.focus.kind == FocusTarget::Kind::node       ? "node"
                            : plan.focus.kind == FocusTarget::Kind::external ? "external"
                                                                             : "none";
    return {{"removals", plan.removals},
            {"additions", std::move(additions)},
            {"focus", {{"kind", kind}, {"ref", plan.focus.ref}}}};
}

RenderSpec render_spec_for(const Node& node, const PlanOptions& options) {
    RenderSpec spec;
    spec.semantics = node.semantics;
    if (node.render) {
        spec.geometry = node.render->geometry;
        spec.style_token = node.render->style_token;
    } else if (!options.allow_fallback) {
        throw Error(ErrorCode::MissingRenderSpec, "node '" + node.id + "' has no render geometry");
    }
    return spec;
}

RenderPlan plan_render(const Graph& graph, const MoveResult& result, RenderMode mode,
                       const PlanOptions& options) {
    RenderPlan plan;
    const bool on_demand = mode == RenderMode::on_demand;
    auto focus_node = [&](const NodeId& id) {
        plan.focus = {FocusTarget::Kind::node, id};
    };

    switch (result.status) {
        case MoveStatus::blocked:
            if (result.from) focus_node(*result.from);
            break;
        case MoveStatus::entered:
        case MoveStatus::moved: {
            const NodeId& to = result.to.value();
            if (on_demand) {
                if (result.status == MoveStatus::moved && result.from) plan.removals.push_back(*result.from);
                plan.additions.emplace_back(to, render_spec_for(graph.node(to), options));
            }
            focus_node(to);
            break;
        }
        case MoveStatus::exited:
            if (on_demand && result.from) plan.removals.push_back(*result.from);
            plan.focus = {FocusTarget::Kind::external, graph.exit_target().value_or("")};
            break;
    }
    return plan;
}

namespace {

void append_sentence(std::string& out, std::string_view sentence) {
    if (sentence.empty()) return;
    if (!out.empty()) out += ' ';
    out += sentence;
    const char last = sentence.back();
    if (last != '.' && last != '!' && last != '?') out += '.';
}

}  // namespace

std::string describe(const Node& node, Verbosity verbosity) {
    const SemanticsPayload& s = node.semantics;
    if (verbosity == Verbosity::terse) return s.label;

    std::string out;
    if (verbosity == Verbosity::verbose) {
        std::string head = s.label;
        head += head.empty() ? "" : ", ";
        head += to_string(s.role);
        append_sentence(out, head);
    } else {
        append_sentence(out, s.label);
    }
    append_sentence(out, s.description);
    if (s.position && s.position->count > 0) {
        append_sentence(out, std::to_string(s.position->index) + " of " + std::to_string(s.position->count));
    }
    if (verbosity == Verbosity::verbose && s.external_ref) append_sentence(out, "Links to " + *s.external_ref);
    return out;
}

}  // namespace dnav
