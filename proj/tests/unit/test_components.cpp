#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "jsrehab/components.hpp"
#include "jsrehab/rewrite.hpp"

using namespace jsrehab;

namespace {

RewritePlan plan_for(const DomTree& doc, const RewriteConfig& config = {})
{
    auto profile = detect_bootstrap(doc);
    return plan(doc, scan_components(doc, profile), config);
}

std::string attr_or(const DomTree& doc, NodeId n, std::string_view name)
{
    auto v = doc.attr(n, name);
    return v ? std::string(*v) : std::string();
}

}  // namespace

TEST(Mechanism, TableMapping)
{
    RewriteConfig radio;
    RewriteConfig target;
    target.tabs_mechanism = TabsMechanism::Target;
    EXPECT_EQ(mechanism_for(ComponentKind::Dropdown, radio).type, MechanismType::CheckboxToggle);
    EXPECT_EQ(mechanism_for(ComponentKind::Collapse, radio).type, MechanismType::CheckboxToggle);
    EXPECT_EQ(mechanism_for(ComponentKind::Modal, radio).type, MechanismType::CheckboxToggle);
    EXPECT_EQ(mechanism_for(ComponentKind::Alert, radio).type, MechanismType::CheckboxToggle);
    EXPECT_EQ(mechanism_for(ComponentKind::Accordion, radio).type, MechanismType::RadioGroup);
    EXPECT_EQ(mechanism_for(ComponentKind::Carousel, radio).type, MechanismType::RadioGroup);
    EXPECT_EQ(mechanism_for(ComponentKind::NavsTabs, radio).type, MechanismType::RadioGroup);
    EXPECT_EQ(mechanism_for(ComponentKind::NavsTabs, target).type, MechanismType::UrlFragmentTarget);
    EXPECT_EQ(mechanism_for(ComponentKind::Tooltip, radio).type, MechanismType::HoverFocus);
    EXPECT_EQ(mechanism_for(ComponentKind::Affix, radio).type, MechanismType::StickyPosition);
    EXPECT_EQ(mechanism_for(ComponentKind::Scrollspy, radio).type, MechanismType::Unsupported);
    EXPECT_EQ(mechanism_for(ComponentKind::Typeahead, radio).type, MechanismType::Unsupported);
}

TEST(Mechanism, UnsupportedReasons)
{
    EXPECT_EQ(mechanism_for(ComponentKind::Scrollspy, {}).reason, "no access to viewport in CSS");
    EXPECT_EQ(mechanism_for(ComponentKind::Typeahead, {}).reason, "cannot replicate autocompletion");
}

TEST(IdAllocator, SkipsTakenIds)
{
    auto doc = parse_html("<p id=jsrehab-0></p><p id=jsrehab-2></p>");
    IdAllocator ids(doc);
    EXPECT_EQ(ids.next(), "jsrehab-1");
    EXPECT_EQ(ids.next(), "jsrehab-3");
    EXPECT_EQ(ids.next(), "jsrehab-4");
}

TEST(Components, DocsDropdown)
{
    auto res = rewrite_document(fx::read("dropdown.html"), {});
    auto doc = parse_html(res.html);
    auto inputs = select(doc, "input.jsrehab-visually-hidden");
    ASSERT_EQ(inputs.size(), 1u);
    EXPECT_EQ(attr_or(doc, inputs[0], "type"), "checkbox");
    EXPECT_EQ(attr_or(doc, inputs[0], "id"), "jsrehab-0");

    auto labels = select(doc, "label[for=jsrehab-0]");
    ASSERT_EQ(labels.size(), 1u);
    EXPECT_TRUE(doc.has_class(labels[0], "dropdown-toggle"));
    EXPECT_TRUE(doc.has_class(labels[0], "btn"));
    EXPECT_FALSE(doc.has_attr(labels[0], "data-bs-toggle"));
    EXPECT_FALSE(doc.has_attr(labels[0], "aria-expanded"));
    EXPECT_TRUE(select(doc, "button.dropdown-toggle").empty());

    std::set<std::string> printed;
    for (const auto& r : res.rules)
        printed.insert(r.to_string());
    EXPECT_TRUE(printed.count("#jsrehab-0:checked~.dropdown-menu{display:block}"));
    EXPECT_EQ(res.instances.size(), 1u);
    EXPECT_TRUE(res.warnings.empty());
}

TEST(Components, TabsBecomeRadioGroup)
{
    auto res = rewrite_document(fx::read("components/v5/navs-tabs.html"), {});
    auto doc = parse_html(res.html);
    auto radios = select(doc, "input[type=radio].jsrehab-visually-hidden");
    ASSERT_EQ(radios.size(), 3u);
    std::set<std::string> names;
    int checked = 0;
    for (auto r : radios) {
        names.insert(attr_or(doc, r, "name"));
        checked += doc.has_attr(r, "checked") ? 1 : 0;
        EXPECT_EQ(select(doc, "label[for=" + attr_or(doc, r, "id") + "]").size(), 1u);
    }
    EXPECT_EQ(names.size(), 1u);
    EXPECT_EQ(checked, 1);
    EXPECT_TRUE(doc.has_attr(radios[0], "checked"));
    EXPECT_EQ(select(doc, "label.nav-link").size(), 3u);
    EXPECT_EQ(res.rules.size(), 4u);
}

TEST(Components, TabsTargetMode)
{
    RewriteConfig config;
    config.tabs_mechanism = TabsMechanism::Target;
    auto res = rewrite_document(fx::read("components/v5/navs-tabs.html"), config);
    auto doc = parse_html(res.html);
    EXPECT_TRUE(select(doc, "input.jsrehab-visually-hidden").empty());
    EXPECT_EQ(select(doc, "a[href=\"#specs\"]").size(), 1u);
    bool has_target = false;
    for (const auto& r : res.rules)
        has_target = has_target || r.to_string().find(":target") != std::string::npos;
    EXPECT_TRUE(has_target);
}

TEST(Components, UnsupportedKindsWarnWithoutMutation)
{
    for (const auto& c : fx::components()) {
        if (!fx::unsupported_kind(c.kind))
            continue;
        auto res = rewrite_document(fx::read_path(c.path), {});
        EXPECT_EQ(res.mutations, 0u) << c.path;
        ASSERT_FALSE(res.warnings.empty()) << c.path;
        EXPECT_EQ(res.warnings[0].kind, c.kind);
        EXPECT_EQ(res.warnings[0].reason, mechanism_for(*kind_from_name(c.kind), {}).reason);
    }
}

TEST(Components, EverySupportedFixtureMutates)
{
    for (const auto& c : fx::components()) {
        if (fx::unsupported_kind(c.kind))
            continue;
        auto res = rewrite_document(fx::read_path(c.path), {});
        EXPECT_GT(res.mutations, 0u) << c.path;
        EXPECT_TRUE(res.warnings.empty()) << c.path;
        std::size_t of_kind = 0;
        for (const auto& i : res.instances)
            of_kind += kind_name(i.kind) == c.kind ? 1 : 0;
        EXPECT_GE(of_kind, 1u) << c.path;
    }
}

TEST(Components, GeneratedIdsAreUnique)
{
    auto res = rewrite_document(fx::read("realistic.html"), {});
    auto doc = parse_html(res.html);
    std::set<std::string> seen;
    for (auto n : doc.elements_in_order()) {
        if (auto id = doc.attr(n, "id"))
            EXPECT_TRUE(seen.insert(std::string(*id)).second) << *id;
    }
}

TEST(Components, TargetUnreachableLeavesDocumentUntouched)
{
    const char* html =
        "<html><head><script src=\"https://cdn.example/bootstrap@5.3.0/bootstrap.min.js\"></script></head><body>"
        "<ul class=\"nav nav-tabs\" id=\"t\">"
        "<li><a class=\"nav-link active\" data-bs-toggle=\"tab\" href=\"#a\">A</a></li>"
        "<li><a class=\"nav-link\" data-bs-toggle=\"tab\" href=\"#b\">B</a></li></ul>"
        "<div class=\"tab-content\"><div><div class=\"tab-pane active\" id=\"a\">a</div></div>"
        "<div><div class=\"tab-pane\" id=\"b\">b</div></div></div></body></html>";
    RewriteConfig config;
    config.tabs_mechanism = TabsMechanism::Target;
    auto doc = parse_html(html);
    auto p = plan_for(doc, config);
    ASSERT_EQ(p.entries.size(), 1u);
    auto before = serialize(doc);
    EXPECT_THROW(apply_instance(p.entries[0], doc, "data-bs-"), TargetUnreachable);
    EXPECT_EQ(serialize(doc), before);

    auto res = rewrite_document(html, config);
    EXPECT_EQ(res.mutations, 0u);
    ASSERT_EQ(res.warnings.size(), 1u);
    EXPECT_EQ(res.warnings[0].kind, "navs-tabs");
}

TEST(Components, AccessibleText)
{
    auto doc = parse_html("<a id=a>x</a><a id=b aria-label=y></a><a id=c><img alt=z></a><a id=d> </a><a id=e><img></a>");
    EXPECT_TRUE(has_accessible_text(doc, doc.find_by_id("a")));
    EXPECT_TRUE(has_accessible_text(doc, doc.find_by_id("b")));
    EXPECT_TRUE(has_accessible_text(doc, doc.find_by_id("c")));
    EXPECT_FALSE(has_accessible_text(doc, doc.find_by_id("d")));
    EXPECT_FALSE(has_accessible_text(doc, doc.find_by_id("e")));
}
