#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jsrehab/detect.hpp"
#include "jsrehab/rewrite.hpp"

using namespace jsrehab;

namespace {

BootstrapProfile detect(const std::string& html, const ScriptBodies* bodies = nullptr)
{
    return detect_bootstrap(parse_html(html), bodies);
}

bool has_method(const BootstrapProfile& p, EvidenceMethod m)
{
    for (const auto& e : p.evidence)
        if (e.method == m)
            return true;
    return false;
}

}  // namespace

TEST(Detect, ScriptUrlVersion)
{
    auto p = detect(R"(<script src="https://cdn.jsdelivr.net/npm/bootstrap@5.1.3/dist/js/bootstrap.bundle.min.js"></script>)");
    EXPECT_TRUE(p.detected);
    EXPECT_EQ(p.major, 5);
    EXPECT_EQ(p.full_version, "5.1.3");
    ASSERT_FALSE(p.evidence.empty());
    EXPECT_EQ(p.evidence.front().method, EvidenceMethod::ScriptUrl);
    EXPECT_EQ(p.attr_prefix, "data-bs-");
}

TEST(Detect, BannerInProvidedBody)
{
    ScriptBodies bodies{{"/js/vendor.js", "/*! Bootstrap v4.6.0 (https://getbootstrap.com/)\n * Copyright 2011-2021 */\n!function(){}"}};
    auto p = detect(R"(<script src="/js/vendor.js"></script>)", &bodies);
    EXPECT_EQ(p.major, 4);
    EXPECT_EQ(p.full_version, "4.6.0");
    EXPECT_TRUE(has_method(p, EvidenceMethod::BannerComment));
    EXPECT_EQ(p.attr_prefix, "data-");
}

TEST(Detect, MarkupOnly)
{
    auto p = detect(R"(<button data-bs-toggle="modal" data-bs-target="#m">x</button><div class="modal" id="m"></div>)");
    EXPECT_TRUE(p.detected);
    EXPECT_EQ(p.major, 5);
    EXPECT_FALSE(p.full_version);
    ASSERT_EQ(p.evidence.size(), 1u);
    EXPECT_EQ(p.evidence.front().method, EvidenceMethod::MarkupHeuristic);
}

TEST(Detect, UrlOutranksMarkup)
{
    auto p = detect(R"(<script src="/static/bootstrap-4.1.3/js/bootstrap.min.js"></script><a data-bs-toggle="collapse" href="#x">x</a>)");
    EXPECT_EQ(p.major, 4);
    EXPECT_TRUE(has_method(p, EvidenceMethod::ScriptUrl));
    EXPECT_TRUE(has_method(p, EvidenceMethod::MarkupHeuristic));
}

TEST(Detect, NothingFound)
{
    auto p = detect("<p>hello</p><script src=/app.js></script>");
    EXPECT_FALSE(p.detected);
    EXPECT_TRUE(p.evidence.empty());
}

TEST(Scan, DocsDropdown)
{
    auto doc = parse_html(fx::read("dropdown.html"));
    auto inst = scan_components(doc, detect_bootstrap(doc));
    ASSERT_EQ(inst.size(), 1u);
    EXPECT_EQ(inst[0].kind, ComponentKind::Dropdown);
    EXPECT_EQ(inst[0].triggers.size(), 1u);
    ASSERT_EQ(inst[0].targets.size(), 1u);
    EXPECT_EQ(doc.tag(inst[0].targets[0]), "ul");
}

TEST(Scan, EmptyDocument)
{
    auto doc = parse_html("");
    BootstrapProfile p;
    p.detected = true;
    p.major = 5;
    p.attr_prefix = "data-bs-";
    EXPECT_TRUE(scan_components(doc, p).empty());
}

TEST(Scan, LegacyAccordionGrouped)
{
    std::string html = R"(<script src="https://stackpath.bootstrapcdn.com/bootstrap/4.5.2/js/bootstrap.min.js"></script><div id="acc">)";
    for (int i = 1; i <= 3; ++i) {
        auto n = std::to_string(i);
        html += R"(<div class="card"><div class="card-header"><button class="btn btn-link" data-toggle="collapse" data-target="#c)" + n +
                R"(">Item )" + n + R"(</button></div><div id="c)" + n + R"(" class="collapse)" + (i == 1 ? " show" : "") +
                R"(" data-parent="#acc"><div class="card-body">Body</div></div></div>)";
    }
    html += "</div>";
    auto doc = parse_html(html);
    auto inst = scan_components(doc, detect_bootstrap(doc));
    ASSERT_EQ(inst.size(), 1u);
    EXPECT_EQ(inst[0].kind, ComponentKind::Accordion);
    EXPECT_EQ(inst[0].group_key, "acc");
    EXPECT_EQ(inst[0].triggers.size(), 3u);
    EXPECT_EQ(inst[0].targets.size(), 3u);
    EXPECT_EQ(inst[0].active_index, 0u);
}

TEST(Scan, GroupKeyOnlyForGroupedKinds)
{
    for (const auto& f : fx::components()) {
        auto doc = parse_html(fx::read_path(f.path));
        for (const auto& in : scan_components(doc, detect_bootstrap(doc))) {
            bool grouped = in.kind == ComponentKind::Accordion || in.kind == ComponentKind::NavsTabs || in.kind == ComponentKind::Carousel;
            EXPECT_EQ(in.group_key.has_value(), grouped) << f.path;
        }
    }
}

TEST(Scan, FixtureKindsMatchFileNames)
{
    for (const auto& f : fx::components()) {
        auto doc = parse_html(fx::read_path(f.path));
        auto inst = scan_components(doc, detect_bootstrap(doc));
        ASSERT_FALSE(inst.empty()) << f.path;
        for (const auto& in : inst)
            EXPECT_EQ(kind_name(in.kind), f.kind) << f.path;
    }
}

TEST(Scan, DeterministicAndTriggersUnique)
{
    auto html = fx::read("realistic.html");
    auto doc = parse_html(html);
    auto prof = detect_bootstrap(doc);
    auto a = scan_components(doc, prof);
    auto b = scan_components(doc, prof);
    ASSERT_EQ(a.size(), b.size());
    std::map<ComponentKind, std::set<NodeId>> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].kind, b[i].kind);
        EXPECT_EQ(a[i].trigger_nodes(), b[i].trigger_nodes());
        EXPECT_EQ(a[i].targets, b[i].targets);
        for (auto t : a[i].trigger_nodes())
            EXPECT_TRUE(seen[a[i].kind].insert(t).second);
    }
}

TEST(Scan, RewrittenDocumentYieldsNoNewInstances)
{
    for (const auto& f : fx::components()) {
        if (fx::unsupported_kind(f.kind))
            continue;
        auto out = rewrite_document(fx::read_path(f.path), {});
        auto doc = parse_html(out.html);
        auto inst = scan_components(doc, detect_bootstrap(doc));
        EXPECT_TRUE(inst.empty()) << f.path << " rescanned " << inst.size();
    }
}

TEST(Stats, PagesPerKind)
{
    auto h = component_stats(std::vector<std::vector<ComponentKind>>{{ComponentKind::Dropdown}, {ComponentKind::Dropdown, ComponentKind::Modal}});
    EXPECT_EQ(h.at(ComponentKind::Dropdown), 2u);
    EXPECT_EQ(h.at(ComponentKind::Modal), 1u);
    EXPECT_EQ(h.at(ComponentKind::Toast), 0u);
    EXPECT_EQ(h.size(), kAllComponentKinds.size());
}

TEST(Stats, EmptyHistogram)
{
    auto h = component_stats(std::vector<std::vector<ComponentKind>>{});
    EXPECT_EQ(h.size(), kAllComponentKinds.size());
    for (auto [k, n] : h)
        EXPECT_EQ(n, 0u);
}

TEST(Stats, RepeatedKindCountsOncePerPage)
{
    auto h = component_stats(std::vector<std::vector<ComponentKind>>{{ComponentKind::Collapse, ComponentKind::Collapse}});
    EXPECT_EQ(h.at(ComponentKind::Collapse), 1u);
    auto f = component_fractions(h, 4);
    EXPECT_DOUBLE_EQ(f.at(ComponentKind::Collapse), 0.25);
}

TEST(Stats, FixtureCorpusRanksCollapseFirst)
{
    std::vector<std::vector<ComponentInstance>> pages;
    for (const auto& p : fx::corpus_pages()) {
        auto doc = parse_html(fx::read_path(p));
        auto prof = detect_bootstrap(doc);
        pages.push_back(prof.detected ? scan_components(doc, prof) : std::vector<ComponentInstance>{});
    }
    ASSERT_EQ(pages.size(), 20u);
    auto h = component_stats(pages);
    for (auto k : kAllComponentKinds) {
        if (k != ComponentKind::Collapse)
            EXPECT_GT(h.at(ComponentKind::Collapse), h.at(k)) << kind_name(k);
    }
    EXPECT_GT(h.at(ComponentKind::Dropdown), h.at(ComponentKind::Modal));
}

TEST(Kinds, NamesRoundTrip)
{
    for (auto k : kAllComponentKinds)
        EXPECT_EQ(kind_from_name(kind_name(k)), k);
    EXPECT_FALSE(kind_from_name("navbar"));
}
