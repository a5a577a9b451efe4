#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "jsrehab/selector.hpp"
#include "naive_selector.hpp"

using namespace jsrehab;

namespace {

std::string random_page(std::mt19937& rng, int n)
{
    static const char* tags[] = {"div", "span", "ul", "li", "a", "p", "section"};
    static const char* classes[] = {"menu", "item", "x", "dropdown-menu", "show"};
    std::string out = "<body>";
    int depth = 0;
    for (int i = 0; i < n; ++i) {
        if (depth > 0 && rng() % 3 == 0) {
            out += "</div>";
            --depth;
            continue;
        }
        std::string tag = tags[rng() % std::size(tags)];
        if (tag == "li" || tag == "p" || tag == "a")
            tag = "span";
        bool container = rng() % 2 == 0;
        if (container)
            tag = "div";
        out += "<" + tag;
        if (rng() % 2)
            out += std::string(" class=\"") + classes[rng() % std::size(classes)] + " " + classes[rng() % std::size(classes)] + "\"";
        if (rng() % 5 == 0)
            out += " id=" + std::string(1, static_cast<char>('a' + rng() % 4));
        if (rng() % 4 == 0)
            out += " data-k=v" + std::to_string(rng() % 2);
        out += ">";
        if (container)
            ++depth;
        else
            out += "t</" + tag + ">";
    }
    return out;
}

}  // namespace

TEST(Selector, PrintParseFixedPoint)
{
    const char* cases[] = {
        "#a ~ .menu",
        "div>p+span~a b",
        "*",
        "*.x",
        "[data-bs-toggle=dropdown]",
        "[title=\"a b\"]",
        "[title='x\"y']",
        "a:not(.b)",
        "li:nth-child( 2 )",
        "#jsrehab-0:checked ~ .dropdown-menu",
        "[data-jsrehab-tooltip]:hover::after, [data-jsrehab-tooltip]:focus::after",
        "A.B  >  C",
        ":focus-within,:focus-visible,:target",
    };
    for (const char* c : cases) {
        auto once = Selector::parse(c).to_string();
        EXPECT_EQ(Selector::parse(once).to_string(), once) << c;
        EXPECT_EQ(Selector::parse(once), Selector::parse(c)) << c;
    }
    EXPECT_EQ(Selector::parse("#jsrehab-0:checked ~ .dropdown-menu").to_string(), "#jsrehab-0:checked~.dropdown-menu");
    EXPECT_EQ(Selector::parse("[a='b']").to_string(), "[a=b]");
}

TEST(Selector, UnsupportedSyntaxRejected)
{
    const char* bad[] = {"", "a,", "a >", "[a^=b]", "a::first-line", ":nth-child(2n+1)", "a::after b", ":is(a)",
                         "#1x", "a:not(:not(b))", "[a=b i]", "a::after.x", ".a\\:b", "a||b", "@x"};
    for (const char* b : bad)
        EXPECT_THROW(Selector::parse(b), SelectorUnsupported) << b;
}

TEST(Selector, Specificity)
{
    auto sp = [](const char* s) { return Selector::parse(s).complexes()[0].specificity(); };
    EXPECT_EQ(sp("#a"), (Specificity{1, 0, 0}));
    EXPECT_EQ(sp("#a:checked~.b"), (Specificity{1, 2, 0}));
    EXPECT_EQ(sp("div p::after"), (Specificity{0, 0, 3}));
    EXPECT_EQ(sp("*"), (Specificity{0, 0, 0}));
    EXPECT_EQ(sp("a:not(#x.y)"), (Specificity{1, 1, 1}));
    EXPECT_LT(sp(".a .b"), sp("#a"));
}

TEST(Selector, DropdownMenuQuery)
{
    auto t = parse_html(R"(<div class="dropdown"><button class="btn dropdown-toggle" data-bs-toggle="dropdown">Menu</button>
<ul class="dropdown-menu"><li><a class="dropdown-item" href="#">A</a></li></ul></div>)");
    EXPECT_EQ(select(t, "[data-bs-toggle=dropdown]").size(), 1u);
    EXPECT_TRUE(select(t, ".nope").empty());
    EXPECT_EQ(select(t, "button ~ .dropdown-menu").size(), 1u);
    EXPECT_EQ(select(t, "li, a, li").size(), 2u);
}

TEST(Selector, ScopeExcludesScopeElement)
{
    auto t = parse_html("<div id=s class=k><p class=k></p></div><p class=k></p>");
    EXPECT_EQ(select(t, ".k").size(), 3u);
    EXPECT_EQ(select(t, Selector::parse(".k"), t.find_by_id("s")).size(), 1u);
}

TEST(Selector, DynamicState)
{
    auto t = parse_html("<input type=checkbox id=c checked><div id=m></div><a id=x></a>");
    EXPECT_EQ(select(t, "#c:checked~#m").size(), 1u);
    EXPECT_TRUE(select(t, Selector::parse(":target"), std::nullopt, StaticState{}).empty());
    EXPECT_EQ(select(t, Selector::parse(":target"), std::nullopt, StaticState{"x"}).size(), 1u);
}

TEST(Selector, MatchesNaiveOracleOnRandomPages)
{
    std::mt19937 rng(7);
    const char* sels[] = {"#a ~ .menu", ".x .item", "div > .show", "span + div", ".menu ~ span.x", "div div > span",
                          "[data-k=v1] ~ div .item", "#b, .x > *", "div:not(.x) > span", "div > :nth-child(2)",
                          "[data-k]", "section", "*"};
    for (int page = 0; page < 30; ++page) {
        auto t = parse_html(random_page(rng, 120));
        for (const char* s : sels) {
            auto sel = Selector::parse(s);
            auto fast = select(t, sel);
            auto slow = naive::select(t, sel);
            ASSERT_EQ(fast, slow) << "selector " << s << " on page " << page;
        }
    }
}
