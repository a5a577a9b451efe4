#include <gtest/gtest.h>

#include <random>

#include "jsrehab/dom.hpp"

using namespace jsrehab;

namespace {

bool same_structure(const DomTree& a, NodeId x, const DomTree& b, NodeId y, std::string* why)
{
    if (a.kind(x) != b.kind(y)) {
        *why = "kind mismatch";
        return false;
    }
    if (a.tag(x) != b.tag(y) || a.data(x) != b.data(y)) {
        *why = "tag/data mismatch at <" + a.tag(x) + "> '" + a.data(x) + "' vs <" + b.tag(y) + "> '" + b.data(y) + "'";
        return false;
    }
    if (a.kind(x) == NodeKind::Element && a.attributes(x) != b.attributes(y)) {
        *why = "attributes differ on <" + a.tag(x) + ">";
        return false;
    }
    auto ca = a.children(x);
    auto cb = b.children(y);
    if (ca.size() != cb.size()) {
        *why = "child count differs under <" + a.tag(x) + ">: " + std::to_string(ca.size()) + " vs " +
               std::to_string(cb.size());
        return false;
    }
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (!same_structure(a, ca[i], b, cb[i], why))
            return false;
    }
    return true;
}

std::vector<std::string> tags_under(const DomTree& t, NodeId n)
{
    std::vector<std::string> out;
    for (auto c : t.children(n))
        out.push_back(t.kind(c) == NodeKind::Element ? t.tag(c) : "#");
    return out;
}

const char* kSamples[] = {
    "",
    "<p>a<p>b",
    "<!DOCTYPE html><html lang=en><head><title>T &amp; U</title></head><body><div class=x>hi</div></body></html>",
    "<table><tr><td>1<td>2</table><ul><li>a<li>b</ul>",
    "<select><option>a<option>b</select><dl><dt>x<dd>y</dl>",
    "<pre>\n\nx</pre><textarea>\nq</textarea>",
    "<script>if (a < b && c > d) {}</script><style>a>b{}</style>",
    "<svg viewBox='0 0 1 1'><path d='M0'/><foreignObject><p>x</p></foreignObject></svg><p>after",
    "<b><i>x</b>y</i>z",
    "<div a=1 A=2 b='\"'>&lt;&copy &notin; &#x41;&#0;</div>",
    "text before<html><body>late</body></html><!-- trailing -->",
    "<p>unclosed <span>nested <a href=#x>link",
    "</div></p>stray<br/>",
    "<input type=checkbox checked><label for=a>L</label>",
    "<h1>a<h2>b</h2></h1>",
    "<head><meta charset=utf-8></head><body><template><p>t</template>",
    "\xff\xfe bad bytes \xc3",
    "<!-- a -- b --><!doctype html>",
};

}  // namespace

TEST(Dom, EmptyDocumentSynthesizesSkeleton)
{
    auto t = parse_html("");
    auto html = t.document_element();
    ASSERT_TRUE(t.is_element(html, "html"));
    EXPECT_EQ(tags_under(t, t.root()), (std::vector<std::string>{"html"}));
    EXPECT_EQ(tags_under(t, html), (std::vector<std::string>{"head", "body"}));
    EXPECT_TRUE(t.children(t.head()).empty());
    EXPECT_TRUE(t.children(t.body()).empty());
    EXPECT_EQ(t.node_count(), 3u);
}

TEST(Dom, ParagraphsAutoClose)
{
    auto t = parse_html("<p>a<p>b");
    auto kids = t.element_children(t.body());
    ASSERT_EQ(kids.size(), 2u);
    EXPECT_EQ(t.tag(kids[0]), "p");
    EXPECT_EQ(t.tag(kids[1]), "p");
    EXPECT_EQ(t.text_content(kids[0]), "a");
    EXPECT_EQ(t.text_content(kids[1]), "b");
}

TEST(Dom, SerializeEscapesAndVoids)
{
    DomTree t;
    auto p = t.create_element("p", {{"class", "x"}});
    t.append_child(p, t.create_text("hi"));
    EXPECT_EQ(serialize(t, p), "<p class=\"x\">hi</p>");

    auto in = t.create_element("input", {{"type", "checkbox"}, {"checked", ""}});
    EXPECT_EQ(serialize(t, in), "<input type=\"checkbox\" checked>");

    auto d = t.create_element("div", {{"title", "a&\"b<"}});
    t.append_child(d, t.create_text("1 < 2 & 3 > 0 \""));
    EXPECT_EQ(serialize(t, d), "<div title=\"a&amp;&quot;b<\">1 &lt; 2 &amp; 3 &gt; 0 \"</div>");
}

TEST(Dom, DuplicateAttributesKeepLastValueAtFirstPosition)
{
    auto t = parse_html("<div a=1 b=2 A=3></div>");
    auto d = t.first_element_child(t.body());
    ASSERT_EQ(t.attributes(d).size(), 2u);
    EXPECT_EQ(t.attributes(d)[0], (Attribute{"a", "3"}));
    EXPECT_EQ(t.attributes(d)[1], (Attribute{"b", "2"}));
}

TEST(Dom, EntitiesDecoded)
{
    EXPECT_EQ(decode_entities("&amp;&lt;&copy;&#65;&#x42;&notin;", false), "&<\xC2\xA9" "AB\xE2\x88\x89");
    EXPECT_EQ(decode_entities("&notit;", false), "\xC2\xACit;");
    EXPECT_EQ(decode_entities("a?x=1&copy=2", true), "a?x=1&copy=2");
    EXPECT_EQ(decode_entities("&#x80;", false), "\xE2\x82\xAC");
    EXPECT_EQ(decode_entities("& &; &zzz;", false), "& &; &zzz;");
}

TEST(Dom, Windows1252Decoding)
{
    auto t = parse_html("<p>caf\xe9 \x80</p>", "iso-8859-1");
    EXPECT_EQ(t.text_content(t.first_element_child(t.body())), "caf\xC3\xA9 \xE2\x82\xAC");
    auto sniffed = parse_html("<meta charset=\"windows-1252\"><p>\xe9</p>");
    EXPECT_EQ(sniffed.text_content(sniffed.body()), "\xC3\xA9");
}

TEST(Dom, RawTextAndForeignContent)
{
    auto t = parse_html("<script>a</b>c</script><svg><circle r=\"1\"/><g></g></svg>");
    auto out = serialize(t);
    EXPECT_NE(out.find("<script>a</b>c</script>"), std::string::npos);
    EXPECT_NE(out.find("<circle r=\"1\"/><g/>"), std::string::npos);
}

TEST(Dom, RoundTripFixedPoint)
{
    for (const char* s : kSamples) {
        auto first = serialize(parse_html(s));
        auto t2 = parse_html(first);
        auto second = serialize(t2);
        EXPECT_EQ(first, second) << "input: " << s;
        auto t1 = parse_html(s);
        std::string why;
        EXPECT_TRUE(same_structure(t1, t1.root(), t2, t2.root(), &why)) << s << ": " << why;
    }
}

TEST(Dom, WrapAndRename)
{
    DomTree t;
    auto div = t.create_element("div");
    t.append_child(t.root(), div);
    auto text = t.create_text("text");
    t.append_child(div, text);
    t.wrap(text, t.create_element("label"));
    EXPECT_EQ(serialize(t, div), "<div><label>text</label></div>");

    auto b = t.create_element("button", {{"class", "btn"}, {"type", "button"}});
    t.append_child(b, t.create_text("Go"));
    t.append_child(div, b);
    t.rename(b, "label");
    EXPECT_EQ(serialize(t, b), "<label class=\"btn\" type=\"button\">Go</label>");
}

TEST(Dom, StaleHandlesThrow)
{
    DomTree t;
    auto a = t.create_element("a");
    t.append_child(t.root(), a);
    t.destroy(a);
    EXPECT_THROW(t.tag(a), InvalidHandle);
    EXPECT_THROW(t.set_attr(a, "x", "y"), InvalidHandle);
    EXPECT_THROW(t.parent(NodeId{12345}), InvalidHandle);
}

TEST(Dom, CycleRejected)
{
    DomTree t;
    auto a = t.create_element("div");
    auto b = t.create_element("div");
    t.append_child(t.root(), a);
    t.append_child(a, b);
    EXPECT_ANY_THROW(t.append_child(b, a));
    EXPECT_ANY_THROW(t.wrap(a, b));
    EXPECT_TRUE(t.check_consistency());
}

TEST(Dom, RemoveReturnsSubtree)
{
    auto t = parse_html("<div id=a><span>x</span></div>");
    auto a = t.find_by_id("a");
    auto removed = t.remove(a);
    EXPECT_EQ(removed, a);
    EXPECT_FALSE(t.is_attached(a));
    EXPECT_EQ(serialize(t, a), "<div id=\"a\"><span>x</span></div>");
    EXPECT_TRUE(t.check_consistency());
}

TEST(Dom, FuzzedMutationsStayConsistent)
{
    std::mt19937 rng(1234);
    for (int round = 0; round < 40; ++round) {
        auto t = parse_html(kSamples[round % std::size(kSamples)]);
        std::vector<NodeId> pool = t.elements_in_order();
        for (int i = 0; i < 200; ++i) {
            auto pick = [&] { return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]; };
            NodeId a = pick(), b = pick();
            if (!t.is_valid(a) || !t.is_valid(b))
                continue;
            try {
                switch (rng() % 8) {
                case 0:
                    pool.push_back(t.create_element("span"));
                    break;
                case 1:
                    t.insert_before(a, b);
                    break;
                case 2:
                    t.insert_first_child(a, b);
                    break;
                case 3:
                    t.remove(a);
                    break;
                case 4:
                    t.rename(a, "section");
                    break;
                case 5:
                    t.set_attr(a, "data-x", std::to_string(i));
                    break;
                case 6: {
                    auto w = t.create_element("label");
                    pool.push_back(w);
                    t.wrap(a, w);
                    break;
                }
                case 7:
                    t.remove_attr(a, "data-x");
                    break;
                }
            } catch (const std::exception&) {
                // Rejected mutations (cycles, document insertion) leave the tree as it was.
            }
            std::string why;
            ASSERT_TRUE(t.check_consistency(&why)) << why;
        }
        auto once = serialize(t);
        EXPECT_EQ(serialize(parse_html(once)), serialize(parse_html(serialize(parse_html(once)))));
    }
}
