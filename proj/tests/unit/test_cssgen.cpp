#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "jsrehab/cssgen.hpp"
#include "jsrehab/rewrite.hpp"

using namespace jsrehab;

namespace {

std::size_t count_styles(const DomTree& doc)
{
    return select(doc, "style[data-jsrehab=styles]").size();
}

}  // namespace

TEST(Css, MinifiedPrinting)
{
    auto r = make_rule("#jsrehab-0:checked ~ .dropdown-menu", {{"display", "block"}});
    EXPECT_EQ(r.to_string(), "#jsrehab-0:checked~.dropdown-menu{display:block}");
    auto two = make_rule("a, b", {{"display", "none"}, {"opacity", "0"}});
    EXPECT_EQ(two.to_string(), "a,b{display:none;opacity:0}");
}

TEST(Css, BaseStylesheetIsStable)
{
    EXPECT_EQ(print_stylesheet(base_stylesheet()), print_stylesheet(base_stylesheet()));
}

TEST(Css, VisuallyHiddenKeepsFocus)
{
    for (const auto& r : base_stylesheet()) {
        if (r.selector.to_string() != ".jsrehab-visually-hidden")
            continue;
        for (const auto& d : r.declarations) {
            EXPECT_FALSE(d.property == "display" && d.value == "none");
            EXPECT_FALSE(d.property == "visibility" && d.value == "hidden");
        }
        return;
    }
    FAIL() << "no visually-hidden rule";
}

TEST(Css, RoundTrip)
{
    std::vector<CssRule> rules = base_stylesheet();
    rules.push_back(make_rule("[data-jsrehab-tooltip]:hover::after,[data-jsrehab-tooltip]:focus::after",
                              {{"content", "attr(data-jsrehab-tooltip)"}, {"font-family", "\"a;b\""}}));
    rules.push_back(make_rule("#a~.b>#c:nth-child(2)", {{"background", "url(x;y.png)"}}));
    rules.push_back(highlight_rule());
    auto text = print_stylesheet(rules);
    auto back = parse_stylesheet(text);
    ASSERT_EQ(back.size(), rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i)
        EXPECT_EQ(back[i], rules[i]) << rules[i].to_string();
    EXPECT_EQ(print_stylesheet(back), text);
}

TEST(Css, RejectsGarbage)
{
    EXPECT_THROW(parse_stylesheet("a{color:red"), CssParseError);
    EXPECT_THROW(parse_stylesheet("@media (x){a{b:c}}"), std::exception);
}

TEST(Css, InjectSynthesizesHead)
{
    DomTree doc;
    auto html = doc.create_element("html", {});
    doc.append_child(doc.root(), html);
    auto body = doc.create_element("body", {});
    doc.append_child(html, body);
    inject_styles(doc, {make_rule("#x", {{"display", "none"}})});
    auto heads = select(doc, "head");
    ASSERT_EQ(heads.size(), 1u);
    auto style = find_injected_style(doc);
    ASSERT_TRUE(style);
    EXPECT_EQ(doc.parent(style), heads[0]);
}

TEST(Css, InjectTwiceReplaces)
{
    auto doc = parse_html("<html><head><title>t</title></head><body></body></html>");
    std::vector<CssRule> rules{make_rule("#x", {{"display", "none"}})};
    inject_styles(doc, rules);
    auto first = serialize(doc);
    inject_styles(doc, rules);
    EXPECT_EQ(count_styles(doc), 1u);
    EXPECT_EQ(serialize(doc), first);
}

TEST(Css, InjectedSheetParsesBackToBasePlusInstanceRules)
{
    auto doc = parse_html("<html><head></head><body></body></html>");
    std::vector<CssRule> rules;
    for (int i = 0; i < 5; ++i)
        rules.push_back(make_rule("#jsrehab-" + std::to_string(i) + ":checked~.x", {{"display", "block"}}));
    inject_styles(doc, rules);
    auto back = parse_stylesheet(doc.text_content(find_injected_style(doc)));
    EXPECT_EQ(back.size(), base_stylesheet().size() + 5);
}

TEST(Css, RewrittenFixtureSheetMatchesRuleCount)
{
    auto res = rewrite_document(fx::read("realistic.html"), {});
    auto doc = parse_html(res.html);
    auto back = parse_stylesheet(doc.text_content(find_injected_style(doc)));
    std::set<std::string> distinct;
    for (const auto& r : base_stylesheet())
        distinct.insert(r.to_string());
    for (const auto& r : res.rules)
        distinct.insert(r.to_string());
    EXPECT_EQ(back.size(), distinct.size());
}

TEST(Css, OnlyTableOnePseudoClasses)
{
    auto res = rewrite_document(fx::read("realistic.html"), {});
    auto doc = parse_html(res.html);
    for (const auto& r : parse_stylesheet(doc.text_content(find_injected_style(doc)))) {
        auto s = r.selector.to_string();
        for (std::size_t p = s.find(':'); p != std::string::npos; p = s.find(':', p + 1)) {
            auto rest = s.substr(p);
            bool ok = false;
            for (const char* allowed : {":checked", ":target", ":focus", ":hover", ":not(", ":nth-child(", "::after", ":after"})
                ok = ok || rest.rfind(allowed, 0) == 0;
            EXPECT_TRUE(ok) << s;
        }
    }
}

TEST(Css, RulesOnlyReferenceExistingIds)
{
    auto res = rewrite_document(fx::read("realistic.html"), {});
    auto doc = parse_html(res.html);
    for (const auto& r : res.rules) {
        for (const auto& cx : r.selector.complexes())
            for (const auto& comp : cx.compounds)
                for (const auto& s : comp.simples)
                    if (s.type == SimpleSelector::Type::Id)
                        EXPECT_FALSE(select(doc, "#" + s.name).empty()) << r.to_string();
    }
}
