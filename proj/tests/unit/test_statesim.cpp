#include <gtest/gtest.h>

#include <map>
#include <tuple>

#include "fixtures.hpp"
#include "jsrehab/rewrite.hpp"
#include "jsrehab/statesim.hpp"
#include "naive_selector.hpp"

using namespace jsrehab;

namespace {

struct Rewritten {
    DomTree doc;
    std::vector<CssRule> rules;
};

Rewritten rewritten(const std::string& rel, const RewriteConfig& config = {})
{
    auto res = rewrite_document(fx::read(rel), config);
    Rewritten out{parse_html(res.html), {}};
    out.rules = injected_rules(out.doc);
    return out;
}

naive::State to_naive(const StateAssignment& s)
{
    naive::State n;
    n.dynamic = true;
    n.checked = s.checked;
    for (auto h : s.hovered)
        n.hovered.insert(h.value);
    if (s.focused)
        n.focused = s.focused->value;
    n.fragment = s.fragment.value_or("");
    return n;
}

// Element display/visibility by brute force: every (rule, complex) pair is
// matched with the naive selector engine and the winner per property is the
// highest (specificity, source position).
std::map<std::uint32_t, bool> naive_hidden(const DomTree& doc, const std::vector<CssRule>& rules, const StateAssignment& s)
{
    using Key = std::tuple<std::array<int, 3>, std::size_t>;
    std::map<std::uint32_t, std::map<std::string, std::pair<Key, std::string>>> won;
    auto st = to_naive(s);
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (const auto& cx : rules[i].selector.complexes()) {
            if (cx.pseudo_element != PseudoElement::None)
                continue;
            Key key{naive::specificity(cx), i};
            for (auto e : naive::select_complex(doc, cx, st)) {
                for (const auto& d : rules[i].declarations) {
                    auto& slot = won[e.value];
                    auto it = slot.find(d.property);
                    if (it == slot.end() || !(key < it->second.first))
                        slot[d.property] = {key, d.value};
                }
            }
        }
    }
    std::map<std::uint32_t, bool> self;
    for (auto e : doc.elements_in_order()) {
        auto& props = won[e.value];
        bool h = (props.count("display") && props["display"].second == "none") ||
                 (props.count("visibility") && props["visibility"].second == "hidden");
        self[e.value] = h;
    }
    std::map<std::uint32_t, bool> out;
    for (auto e : doc.elements_in_order()) {
        bool h = false;
        for (NodeId p = e; p && doc.is_element(p); p = doc.parent(p))
            h = h || self[p.value];
        out[e.value] = h;
    }
    return out;
}

void expect_cascade_agrees(const DomTree& doc, const std::vector<CssRule>& rules, const StateAssignment& s)
{
    auto map = evaluate(doc, rules, s);
    auto oracle = naive_hidden(doc, rules, s);
    for (auto e : doc.elements_in_order())
        EXPECT_EQ(!rendered(doc, map, e), oracle[e.value]) << node_path(doc, e);
}

}  // namespace

TEST(StateSim, ToggleCheckbox)
{
    auto doc = parse_html("<input type=checkbox id=a><input type=checkbox id=b checked>");
    auto s = initial_state(doc);
    EXPECT_EQ(s.checked, (std::set<std::string>{"b"}));
    s = toggle(doc, s, "a");
    EXPECT_EQ(s.checked, (std::set<std::string>{"a", "b"}));
    s = toggle(doc, s, "b");
    EXPECT_EQ(s.checked, (std::set<std::string>{"a"}));
}

TEST(StateSim, RadioClearsGroup)
{
    auto doc = parse_html("<input type=radio name=g id=a checked><input type=radio name=g id=b>"
                          "<input type=radio name=h id=c checked>");
    auto s = toggle(doc, initial_state(doc), "b");
    EXPECT_EQ(s.checked, (std::set<std::string>{"b", "c"}));
    s = toggle(doc, s, "b");
    EXPECT_EQ(s.checked, (std::set<std::string>{"b", "c"}));
}

TEST(StateSim, UnknownControlThrows)
{
    auto doc = parse_html("<input type=checkbox id=a><p id=p></p>");
    EXPECT_THROW(toggle(doc, initial_state(doc), "missing"), UnknownControl);
    EXPECT_THROW(toggle(doc, initial_state(doc), "p"), UnknownControl);
}

TEST(StateSim, HoverIncludesAncestors)
{
    auto doc = parse_html("<div id=a><span id=b></span></div>");
    auto s = hover(doc, initial_state(doc), doc.find_by_id("b"));
    EXPECT_TRUE(s.hovered.count(doc.find_by_id("a")));
    EXPECT_TRUE(s.hovered.count(doc.find_by_id("b")));
    EXPECT_TRUE(s.hovered.count(doc.body()));
}

TEST(StateSim, NoRulesEverythingVisible)
{
    auto doc = parse_html(fx::read("realistic.html"));
    auto map = evaluate(doc, {}, initial_state(doc));
    for (auto e : doc.elements_in_order())
        EXPECT_TRUE(rendered(doc, map, e));
}

TEST(StateSim, DropdownMenuFollowsCheckbox)
{
    auto r = rewritten("dropdown.html");
    auto menu = select(r.doc, ".dropdown-menu");
    ASSERT_EQ(menu.size(), 1u);
    // The page's own stylesheet hides the menu; model that with a leading rule.
    auto rules = r.rules;
    rules.insert(rules.begin(), make_rule(".dropdown-menu", {{"display", "none"}}));
    auto s = initial_state(r.doc);
    EXPECT_FALSE(rendered(r.doc, evaluate(r.doc, rules, s), menu[0]));
    s = toggle(r.doc, s, "jsrehab-0");
    EXPECT_TRUE(rendered(r.doc, evaluate(r.doc, rules, s), menu[0]));
    s = toggle(r.doc, s, "jsrehab-0");
    EXPECT_FALSE(rendered(r.doc, evaluate(r.doc, rules, s), menu[0]));
}

TEST(StateSim, TabsExhaustiveAgainstNaiveCascade)
{
    for (auto mode : {TabsMechanism::Radio, TabsMechanism::Target}) {
        RewriteConfig config;
        config.tabs_mechanism = mode;
        auto r = rewritten("components/v5/navs-tabs.html", config);
        std::vector<NodeId> panes = select(r.doc, ".tab-pane");
        ASSERT_EQ(panes.size(), 3u);
        std::vector<StateAssignment> states;
        auto s0 = initial_state(r.doc);
        states.push_back(s0);
        if (mode == TabsMechanism::Radio) {
            for (auto in : select(r.doc, "input[type=radio]"))
                states.push_back(toggle(r.doc, s0, *r.doc.attr(in, "id")));
        } else {
            for (const char* f : {"desc", "specs", "reviews", "nowhere"})
                states.push_back(navigate(s0, std::string(f)));
        }
        for (const auto& s : states) {
            expect_cascade_agrees(r.doc, r.rules, s);
            auto map = evaluate(r.doc, r.rules, s);
            int shown = 0;
            for (auto p : panes)
                shown += rendered(r.doc, map, p) ? 1 : 0;
            EXPECT_EQ(shown, 1);
        }
    }
}

TEST(StateSim, RealisticPageAgreesWithNaiveCascade)
{
    auto r = rewritten("realistic.html");
    auto s = initial_state(r.doc);
    expect_cascade_agrees(r.doc, r.rules, s);
    for (auto in : select(r.doc, "input.jsrehab-visually-hidden"))
        expect_cascade_agrees(r.doc, r.rules, toggle(r.doc, s, *r.doc.attr(in, "id")));
}

TEST(StateSim, TooltipOnHoverAndFocus)
{
    auto r = rewritten("components/v5/tooltip.html");
    auto tips = select(r.doc, "[data-jsrehab-tooltip]");
    ASSERT_FALSE(tips.empty());
    auto s = initial_state(r.doc);
    EXPECT_FALSE(evaluate(r.doc, r.rules, s)[tips[0]].has_after_content());
    EXPECT_TRUE(evaluate(r.doc, r.rules, hover(r.doc, s, tips[0]))[tips[0]].has_after_content());
    EXPECT_TRUE(evaluate(r.doc, r.rules, focus(s, tips[0]))[tips[0]].has_after_content());
}

TEST(StateSim, CascadeOrderAndSpecificity)
{
    auto doc = parse_html("<p id=x class=c></p>");
    auto x = doc.find_by_id("x");
    auto s = initial_state(doc);
    std::vector<CssRule> rules{make_rule("#x", {{"display", "none"}}), make_rule(".c", {{"display", "block"}})};
    EXPECT_EQ(evaluate(doc, rules, s)[x].display(), "none");
    rules = {make_rule(".c", {{"display", "none"}}), make_rule("p.c", {{"display", "block"}})};
    EXPECT_EQ(evaluate(doc, rules, s)[x].display(), "block");
    rules = {make_rule(".c", {{"display", "none"}}), make_rule(".c", {{"display", "block"}})};
    EXPECT_EQ(evaluate(doc, rules, s)[x].display(), "block");
    rules = {make_rule("#x::before", {{"display", "none"}})};
    EXPECT_EQ(evaluate(doc, rules, s)[x].display(), "");
}

TEST(Check, AllComponentFixturesPass)
{
    for (const auto& c : fx::components()) {
        auto res = rewrite_document(fx::read_path(c.path), {});
        auto report = check(parse_html(res.html));
        EXPECT_TRUE(report.ok()) << c.path << ": "
                                 << (report.failures.empty() ? "" : report.failures[0].assertion + " " + report.failures[0].detail);
    }
}

TEST(Check, BrokenLabelFails)
{
    auto report = check(parse_html(fx::read("broken.html")));
    ASSERT_FALSE(report.ok());
    bool label = false;
    for (const auto& f : report.failures)
        label = label || f.assertion == "label-target";
    EXPECT_TRUE(label);
}

TEST(Check, AriaStateIsFlagged)
{
    auto res = rewrite_document(fx::read("dropdown.html"), {});
    auto doc = parse_html(res.html);
    doc.set_attr(select(doc, "label[for=jsrehab-0]")[0], "aria-expanded", "false");
    auto report = check(doc);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.failures[0].assertion, "aria-state");
}

TEST(Check, HiddenInputIsNotFocusable)
{
    auto res = rewrite_document(fx::read("dropdown.html"), {});
    auto doc = parse_html(res.html);
    doc.set_attr(doc.find_by_id("jsrehab-0"), "tabindex", "-1");
    auto report = check(doc);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.failures[0].assertion, "focusable");
}

TEST(Check, EmptyLabelText)
{
    auto res = rewrite_document(fx::read("dropdown.html"), {});
    auto doc = parse_html(res.html);
    auto label = select(doc, "label[for=jsrehab-0]")[0];
    while (!doc.children(label).empty())
        doc.destroy(doc.children(label)[0]);
    auto report = check(doc);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.failures[0].assertion, "label-text");
}

TEST(Check, DeadRulesAreNotInteractive)
{
    auto res = rewrite_document(fx::read("dropdown.html"), {});
    auto doc = parse_html(res.html);
    std::vector<CssRule> none;
    auto report = check(doc, none);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.failures[0].assertion, "interactive");
}

TEST(Check, RealisticCounts)
{
    auto res = rewrite_document(fx::read("realistic.html"), {});
    auto doc = parse_html(res.html);
    auto report = check(doc);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.checkboxes, select(doc, "input[type=checkbox].jsrehab-visually-hidden").size());
    EXPECT_EQ(report.tooltips, select(doc, "[data-jsrehab-tooltip]").size());
    EXPECT_GT(report.states_evaluated, report.checkboxes);
}
