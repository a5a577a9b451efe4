#include "jsrehab/detect.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <tuple>

#include "jsrehab/selector.hpp"
#include "strings.hpp"

namespace jsrehab {

namespace {

struct KindInfo {
    ComponentKind kind;
    std::string_view name;
};

constexpr KindInfo kKindNames[] = {
    {ComponentKind::Accordion, "accordion"}, {ComponentKind::Affix, "affix"},
    {ComponentKind::Alert, "alert"},         {ComponentKind::Carousel, "carousel"},
    {ComponentKind::Collapse, "collapse"},   {ComponentKind::Dropdown, "dropdown"},
    {ComponentKind::Modal, "modal"},         {ComponentKind::NavsTabs, "navs-tabs"},
    {ComponentKind::Offcanvas, "offcanvas"}, {ComponentKind::Popover, "popover"},
    {ComponentKind::Scrollspy, "scrollspy"}, {ComponentKind::Toast, "toast"},
    {ComponentKind::Tooltip, "tooltip"},     {ComponentKind::Typeahead, "typeahead"},
};

using Version = std::tuple<int, int, int>;

std::string version_string(const Version& v)
{
    return std::to_string(std::get<0>(v)) + "." + std::to_string(std::get<1>(v)) + "." + std::to_string(std::get<2>(v));
}

std::optional<Version> version_from(const std::smatch& m)
{
    try {
        Version v{std::stoi(m[1].str()), std::stoi(m[2].str()), std::stoi(m[3].str())};
        if (std::get<0>(v) < 2 || std::get<0>(v) > 5)
            return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<Version> version_from_url(const std::string& src)
{
    static const std::regex named(R"(bootstrap(?:@|[.\-/])v?(\d+)\.(\d+)\.(\d+))", std::regex::icase);
    static const std::regex dir(R"(/v?(\d+)\.(\d+)\.(\d+)/(?:dist/)?(?:js/)?bootstrap[.\-])", std::regex::icase);
    std::smatch m;
    if (std::regex_search(src, m, named))
        return version_from(m);
    if (std::regex_search(src, m, dir))
        return version_from(m);
    return std::nullopt;
}

std::optional<Version> version_from_banner(const std::string& body)
{
    static const std::regex banner(R"(Bootstrap v(\d+)\.(\d+)\.(\d+))");
    std::smatch m;
    // Banners sit at the top of the file; bound the search on large bundles.
    std::string head = body.size() > 4096 ? body.substr(0, 4096) : body;
    if (std::regex_search(head, m, banner))
        return version_from(m);
    return std::nullopt;
}

constexpr std::string_view kBsBehaviorAttrs[] = {"data-bs-toggle", "data-bs-dismiss", "data-bs-target", "data-bs-ride",
                                                 "data-bs-spy",    "data-bs-slide",   "data-bs-slide-to", "data-bs-parent"};

constexpr std::string_view kLegacyToggles[] = {"dropdown", "collapse", "modal", "tab", "pill", "list",
                                               "tooltip", "popover", "button", "buttons"};

constexpr std::string_view kContainerClasses[] = {"navbar", "carousel", "modal", "dropdown", "collapse", "nav",
                                                  "btn-group", "card", "panel", "alert", "tab-content", "container",
                                                  "list-group", "accordion", "btn", "dropdown-menu"};

bool has_any_class(const DomTree& t, NodeId n, std::initializer_list<std::string_view> cls)
{
    for (auto c : cls) {
        if (t.has_class(n, c))
            return true;
    }
    return false;
}

std::string attr_or_empty(const DomTree& t, NodeId n, std::string_view name)
{
    return std::string(detail::trim(t.attr(n, name).value_or("")));
}

// Document-order positions and the set of elements excluded from scanning.
struct ScanIndex {
    std::vector<std::uint32_t> order;
    std::vector<bool> skipped;
    std::vector<NodeId> elements;  // non-skipped elements in document order

    explicit ScanIndex(const DomTree& t) : order(t.capacity(), UINT32_MAX), skipped(t.capacity(), false)
    {
        std::uint32_t pos = 0;
        std::vector<std::pair<NodeId, bool>> stack{{t.root(), false}};
        while (!stack.empty()) {
            auto [n, skip] = stack.back();
            stack.pop_back();
            order[n.value] = pos++;
            if (t.kind(n) == NodeKind::Element) {
                skip = skip || t.has_attr(n, "data-jsrehab");
                skipped[n.value] = skip;
                if (!skip)
                    elements.push_back(n);
            }
            auto kids = t.children(n);
            for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                stack.push_back({*it, skip});
        }
    }

    bool is_skipped(NodeId n) const { return n.value >= skipped.size() || skipped[n.value]; }
    std::uint32_t pos(NodeId n) const { return n.value < order.size() ? order[n.value] : UINT32_MAX; }
};

class Scanner {
public:
    Scanner(const DomTree& t, const BootstrapProfile& p) : t_(t), p_(p.attr_prefix), idx_(t), major_(p.major) {}

    std::vector<ComponentInstance> run()
    {
        collect_toggles();
        scan_collapse_and_accordion();
        scan_simple_target(ComponentKind::Dropdown);
        scan_simple_target(ComponentKind::Modal);
        scan_simple_target(ComponentKind::Offcanvas);
        scan_tabs();
        scan_dismissible(ComponentKind::Alert, "alert");
        scan_dismissible(ComponentKind::Toast, "toast");
        scan_carousels();
        scan_self_kinds();

        std::stable_sort(out_.begin(), out_.end(), [&](const ComponentInstance& a, const ComponentInstance& b) {
            return idx_.pos(anchor(a)) < idx_.pos(anchor(b));
        });
        return std::move(out_);
    }

private:
    std::string a(std::string_view suffix) const { return p_ + std::string(suffix); }

    std::string toggle_of(NodeId n) const { return detail::to_lower(attr_or_empty(t_, n, a("toggle"))); }

    static NodeId anchor(const ComponentInstance& inst)
    {
        if (!inst.triggers.empty())
            return inst.triggers.front().node;
        if (!inst.targets.empty())
            return inst.targets.front();
        return inst.container;
    }

    void collect_toggles()
    {
        for (auto n : idx_.elements) {
            auto v = toggle_of(n);
            if (!v.empty())
                by_toggle_[v].push_back(n);
        }
    }

    const std::vector<NodeId>& toggles(std::string_view value) const
    {
        static const std::vector<NodeId> none;
        auto it = by_toggle_.find(std::string(value));
        return it == by_toggle_.end() ? none : it->second;
    }

    // Resolves the selector in `{prefix}target` or an in-page href.
    std::vector<NodeId> resolve(NodeId trigger, std::string* warning) const
    {
        std::string ref = attr_or_empty(t_, trigger, a("target"));
        if (ref.empty()) {
            auto href = attr_or_empty(t_, trigger, "href");
            if (href.starts_with('#'))
                ref = href;
        }
        if (ref.empty() || ref == "#") {
            *warning = "no target reference on <" + t_.tag(trigger) + ">";
            return {};
        }
        std::vector<NodeId> found;
        if (ref.starts_with('#') && is_css_identifier(std::string_view(ref).substr(1))) {
            auto n = t_.find_by_id(std::string_view(ref).substr(1));
            if (n)
                found.push_back(n);
        } else {
            try {
                found = select(t_, ref);
            } catch (const SelectorUnsupported&) {
                *warning = "unsupported target selector '" + ref + "'";
                return {};
            }
        }
        std::erase_if(found, [&](NodeId n) { return idx_.is_skipped(n); });
        if (found.empty())
            *warning = "target '" + ref + "' not found";
        return found;
    }

    NodeId closest(NodeId n, std::initializer_list<std::string_view> cls) const
    {
        for (NodeId p = t_.parent(n); p && t_.kind(p) == NodeKind::Element; p = t_.parent(p)) {
            if (has_any_class(t_, p, cls))
                return p;
        }
        return {};
    }

    bool shown(NodeId n) const { return has_any_class(t_, n, {"show", "in", "active"}); }

    // Parent group of an accordion pane: the element named by `{prefix}parent`
    // or the closest `.accordion`.
    NodeId accordion_of(NodeId trigger, NodeId target, std::string* key) const
    {
        for (NodeId src : {target, trigger}) {
            auto sel = attr_or_empty(t_, src, a("parent"));
            if (sel.empty())
                continue;
            if (sel.starts_with('#') && is_css_identifier(std::string_view(sel).substr(1))) {
                auto p = t_.find_by_id(std::string_view(sel).substr(1));
                if (p) {
                    *key = sel.substr(1);
                    return p;
                }
            }
        }
        NodeId acc = closest(target, {"accordion"});
        if (acc) {
            auto id = t_.attr(acc, "id");
            *key = id && !id->empty() ? std::string(*id) : "";
        }
        return acc;
    }

    void scan_collapse_and_accordion()
    {
        struct Group {
            NodeId container;
            std::string key;
            ComponentInstance inst{ComponentKind::Accordion, {}, {}, {}, {}, false, {}, {}};
        };
        std::vector<Group> groups;
        std::vector<ComponentInstance> collapses;

        for (auto trig : toggles("collapse")) {
            std::string warning;
            auto targets = resolve(trig, &warning);
            if (targets.empty()) {
                ComponentInstance inst{ComponentKind::Collapse, {{trig}}, {}, {}, {}, false, {}, {warning}};
                collapses.push_back(std::move(inst));
                continue;
            }
            std::string key;
            NodeId acc = targets.size() == 1 ? accordion_of(trig, targets[0], &key) : NodeId{};
            if (acc) {
                auto g = std::find_if(groups.begin(), groups.end(), [&](const Group& gr) { return gr.container == acc; });
                if (g == groups.end()) {
                    groups.push_back(Group{acc, key});
                    g = groups.end() - 1;
                    g->inst.container = acc;
                }
                auto& inst = g->inst;
                auto ti = std::find(inst.targets.begin(), inst.targets.end(), targets[0]);
                int index = static_cast<int>(ti - inst.targets.begin());
                if (ti == inst.targets.end())
                    inst.targets.push_back(targets[0]);
                inst.triggers.push_back({trig, TriggerRole::Toggle, index});
                continue;
            }
            auto same = std::find_if(collapses.begin(), collapses.end(), [&](const ComponentInstance& c) { return c.targets == targets; });
            if (same != collapses.end()) {
                same->triggers.push_back({trig});
                continue;
            }
            ComponentInstance inst{ComponentKind::Collapse, {{trig}}, targets, {}, {}, false, {}, {}};
            inst.initially_active = std::all_of(targets.begin(), targets.end(), [&](NodeId n) { return shown(n); });
            collapses.push_back(std::move(inst));
        }

        int anonymous = 0;
        for (auto& g : groups) {
            auto& inst = g.inst;
            inst.group_key = g.key.empty() ? "accordion-" + std::to_string(anonymous++) : g.key;
            for (std::size_t i = 0; i < inst.targets.size(); ++i) {
                if (shown(inst.targets[i])) {
                    inst.active_index = i;
                    break;
                }
            }
            inst.initially_active = inst.active_index.has_value();
            out_.push_back(std::move(inst));
        }
        for (auto& c : collapses)
            out_.push_back(std::move(c));
    }

    NodeId dropdown_menu_for(NodeId trig) const
    {
        for (NodeId s = t_.next_element_sibling(trig); s; s = t_.next_element_sibling(s)) {
            if (t_.has_class(s, "dropdown-menu"))
                return s;
        }
        NodeId holder = closest(trig, {"dropdown", "btn-group", "dropup", "dropend", "dropstart", "dropleft", "dropright",
                                       "input-group"});
        if (!holder)
            return {};
        NodeId found;
        t_.walk(holder, [&](NodeId n) {
            if (found)
                return false;
            if (n != holder && t_.kind(n) == NodeKind::Element && t_.has_class(n, "dropdown-menu") && !idx_.is_skipped(n))
                found = n;
            return !found;
        });
        return found;
    }

    void scan_simple_target(ComponentKind kind)
    {
        std::string_view toggle = kind == ComponentKind::Dropdown ? "dropdown" : kind == ComponentKind::Modal ? "modal" : "offcanvas";
        std::string_view cls = toggle;
        std::vector<ComponentInstance> found;
        for (auto trig : toggles(toggle)) {
            std::string warning;
            NodeId target;
            if (kind == ComponentKind::Dropdown) {
                target = dropdown_menu_for(trig);
                if (!target)
                    warning = "no .dropdown-menu found for dropdown toggle";
            } else {
                auto targets = resolve(trig, &warning);
                if (!targets.empty()) {
                    if (t_.has_class(targets[0], cls))
                        target = targets[0];
                    else
                        warning = "target of " + std::string(toggle) + " toggle lacks class ." + std::string(cls);
                }
            }
            if (!target) {
                found.push_back(ComponentInstance{kind, {{trig}}, {}, {}, {}, false, {}, {warning}});
                continue;
            }
            auto same = std::find_if(found.begin(), found.end(), [&](const ComponentInstance& c) {
                return !c.targets.empty() && c.targets[0] == target;
            });
            if (same != found.end()) {
                same->triggers.push_back({trig});
                continue;
            }
            ComponentInstance inst{kind, {{trig}}, {target}, {}, {}, false, {}, {}};
            inst.initially_active = shown(target) || (kind == ComponentKind::Dropdown && t_.parent(target) &&
                                                      t_.has_class(t_.parent(target), "open"));
            found.push_back(std::move(inst));
        }
        if (kind != ComponentKind::Dropdown) {
            for (auto& inst : found) {
                if (inst.targets.empty())
                    continue;
                t_.walk(inst.targets[0], [&](NodeId n) {
                    if (t_.kind(n) == NodeKind::Element &&
                        detail::iequals(attr_or_empty(t_, n, a("dismiss")), toggle) && !idx_.is_skipped(n))
                        inst.triggers.push_back({n, TriggerRole::Dismiss});
                    return true;
                });
            }
        }
        for (auto& f : found)
            out_.push_back(std::move(f));
    }

    NodeId tablist_of(NodeId trig) const
    {
        for (NodeId p = t_.parent(trig); p && t_.kind(p) == NodeKind::Element; p = t_.parent(p)) {
            if (has_any_class(t_, p, {"nav", "list-group"}) || attr_or_empty(t_, p, "role") == "tablist")
                return p;
        }
        return t_.parent(trig);
    }

    void scan_tabs()
    {
        std::vector<ComponentInstance> groups;
        int anonymous = 0;
        for (auto value : {"tab", "pill", "list"}) {
            for (auto trig : toggles(value))
                tab_triggers_.push_back(trig);
        }
        std::sort(tab_triggers_.begin(), tab_triggers_.end(), [&](NodeId x, NodeId y) { return idx_.pos(x) < idx_.pos(y); });
        for (auto trig : tab_triggers_) {
            NodeId list = tablist_of(trig);
            auto g = std::find_if(groups.begin(), groups.end(), [&](const ComponentInstance& c) { return c.container == list; });
            if (g == groups.end()) {
                ComponentInstance inst{ComponentKind::NavsTabs, {}, {}, list, {}, false, {}, {}};
                auto id = t_.attr(list, "id");
                inst.group_key = id && !id->empty() ? std::string(*id) : "tabs-" + std::to_string(anonymous++);
                groups.push_back(std::move(inst));
                g = groups.end() - 1;
            }
            std::string warning;
            auto panes = resolve(trig, &warning);
            if (panes.empty()) {
                g->warnings.push_back(warning);
                g->triggers.push_back({trig, TriggerRole::Toggle, -1});
                continue;
            }
            auto pi = std::find(g->targets.begin(), g->targets.end(), panes[0]);
            int index = static_cast<int>(pi - g->targets.begin());
            if (pi == g->targets.end())
                g->targets.push_back(panes[0]);
            g->triggers.push_back({trig, TriggerRole::Toggle, index});
            if (!g->active_index && t_.has_class(trig, "active"))
                g->active_index = static_cast<std::size_t>(index);
        }
        for (auto& g : groups) {
            if (!g.active_index) {
                for (std::size_t i = 0; i < g.targets.size(); ++i) {
                    if (t_.has_class(g.targets[i], "active")) {
                        g.active_index = i;
                        break;
                    }
                }
            }
            g.initially_active = g.active_index.has_value();
            out_.push_back(std::move(g));
        }
    }

    void scan_dismissible(ComponentKind kind, std::string_view cls)
    {
        for (auto n : idx_.elements) {
            if (!t_.has_class(n, cls))
                continue;
            ComponentInstance inst{kind, {}, {n}, {}, {}, true, {}, {}};
            t_.walk(n, [&](NodeId d) {
                if (d != n && t_.kind(d) == NodeKind::Element && t_.has_class(d, cls))
                    return false;  // nested component of the same kind
                if (t_.kind(d) == NodeKind::Element && detail::iequals(attr_or_empty(t_, d, a("dismiss")), cls))
                    inst.triggers.push_back({d, TriggerRole::Dismiss});
                return true;
            });
            if (inst.triggers.empty()) {
                bool dismissible = kind == ComponentKind::Toast || t_.has_class(n, std::string(cls) + "-dismissible");
                if (!dismissible)
                    continue;
                inst.warnings.push_back("no dismiss control inside ." + std::string(cls));
            }
            out_.push_back(std::move(inst));
        }
    }

    void scan_carousels()
    {
        int anonymous = 0;
        for (auto car : idx_.elements) {
            if (!t_.has_class(car, "carousel"))
                continue;
            ComponentInstance inst{ComponentKind::Carousel, {}, {}, car, {}, false, {}, {}};
            auto id = t_.attr(car, "id");
            inst.group_key = id && !id->empty() ? std::string(*id) : "carousel-" + std::to_string(anonymous++);
            NodeId inner;
            t_.walk(car, [&](NodeId n) {
                if (!inner && n != car && t_.kind(n) == NodeKind::Element && t_.has_class(n, "carousel-inner"))
                    inner = n;
                return !inner;
            });
            if (inner) {
                for (auto s : t_.element_children(inner)) {
                    if (t_.has_class(s, "carousel-item") || t_.has_class(s, "item"))
                        inst.targets.push_back(s);
                }
            }
            if (inst.targets.empty()) {
                inst.warnings.push_back("carousel has no .carousel-item slides");
            } else {
                for (std::size_t i = 0; i < inst.targets.size(); ++i) {
                    if (t_.has_class(inst.targets[i], "active")) {
                        inst.active_index = i;
                        break;
                    }
                }
                inst.initially_active = inst.active_index.has_value();
            }
            auto consider = [&](NodeId n) {
                auto slide = detail::to_lower(attr_or_empty(t_, n, a("slide")));
                auto to = attr_or_empty(t_, n, a("slide-to"));
                if (slide == "prev") {
                    inst.triggers.push_back({n, TriggerRole::Prev});
                } else if (slide == "next") {
                    inst.triggers.push_back({n, TriggerRole::Next});
                } else if (!to.empty()) {
                    int k = -1;
                    try {
                        k = std::stoi(to);
                    } catch (const std::exception&) {
                    }
                    if (k < 0 || k >= static_cast<int>(inst.targets.size()))
                        inst.warnings.push_back("slide-to index '" + to + "' out of range");
                    else
                        inst.triggers.push_back({n, TriggerRole::Toggle, k});
                }
            };
            t_.walk(car, [&](NodeId n) {
                if (n != car && t_.kind(n) == NodeKind::Element) {
                    if (t_.has_class(n, "carousel"))
                        return false;
                    consider(n);
                }
                return true;
            });
            // Controls placed outside the carousel reference it by id.
            if (id && !id->empty()) {
                std::string ref = "#" + std::string(*id);
                for (auto n : idx_.elements) {
                    if (t_.is_ancestor_of(car, n))
                        continue;
                    if (attr_or_empty(t_, n, a("target")) == ref || attr_or_empty(t_, n, "href") == ref)
                        consider(n);
                }
            }
            out_.push_back(std::move(inst));
        }
    }

    void scan_self_kinds()
    {
        for (auto n : idx_.elements) {
            auto toggle = toggle_of(n);
            std::optional<ComponentKind> kind;
            if (toggle == "popover")
                kind = ComponentKind::Popover;
            else if (toggle == "tooltip")
                kind = ComponentKind::Tooltip;
            else if (attr_or_empty(t_, n, "data-spy") == "affix" && (!major_ || *major_ <= 3))
                kind = ComponentKind::Affix;
            else if (attr_or_empty(t_, n, "data-spy") == "scroll" || attr_or_empty(t_, n, a("spy")) == "scroll")
                kind = ComponentKind::Scrollspy;
            else if (attr_or_empty(t_, n, "data-provide") == "typeahead")
                kind = ComponentKind::Typeahead;
            if (kind)
                out_.push_back(ComponentInstance{*kind, {{n}}, {}, {}, {}, false, {}, {}});
        }
    }

    const DomTree& t_;
    std::string p_;
    ScanIndex idx_;
    std::optional<int> major_;
    std::map<std::string, std::vector<NodeId>> by_toggle_;
    std::vector<NodeId> tab_triggers_;
    std::vector<ComponentInstance> out_;
};

}  // namespace

std::string_view kind_name(ComponentKind kind)
{
    for (const auto& k : kKindNames) {
        if (k.kind == kind)
            return k.name;
    }
    return "unknown";
}

std::optional<ComponentKind> kind_from_name(std::string_view name)
{
    for (const auto& k : kKindNames) {
        if (k.name == name)
            return k.kind;
    }
    return std::nullopt;
}

std::string_view method_name(EvidenceMethod m)
{
    switch (m) {
    case EvidenceMethod::ScriptUrl:
        return "script-url";
    case EvidenceMethod::BannerComment:
        return "banner-comment";
    case EvidenceMethod::MarkupHeuristic:
        return "markup-heuristic";
    }
    return "unknown";
}

std::vector<NodeId> ComponentInstance::trigger_nodes() const
{
    std::vector<NodeId> out;
    out.reserve(triggers.size());
    for (const auto& t : triggers)
        out.push_back(t.node);
    return out;
}

BootstrapProfile detect_bootstrap(const DomTree& doc, const ScriptBodies* script_bodies)
{
    BootstrapProfile prof;
    std::optional<Version> url_version, banner_version;
    std::optional<int> markup_major;
    bool any_bs_attr = false;

    auto note_banner = [&](const std::string& where, const std::string& body) {
        if (auto v = version_from_banner(body)) {
            prof.evidence.push_back({EvidenceMethod::BannerComment, "Bootstrap v" + version_string(*v) + " in " + where});
            if (!banner_version || *v > *banner_version)
                banner_version = v;
        }
    };

    bool legacy_toggle = false;
    bool legacy_container = false;
    bool typeahead = false;
    bool affix = false;
    std::string bs_attr_seen;

    for (auto n : doc.elements_in_order()) {
        const auto& tag = doc.tag(n);
        if (tag == "script") {
            if (auto src = doc.attr(n, "src")) {
                std::string s(*src);
                if (auto v = version_from_url(s)) {
                    prof.evidence.push_back({EvidenceMethod::ScriptUrl, "script src " + s + " -> " + version_string(*v)});
                    if (!url_version || *v > *url_version)
                        url_version = v;
                }
            } else {
                note_banner("inline script", doc.text_content(n));
            }
        }
        for (const auto& at : doc.attributes(n)) {
            if (at.name.starts_with("data-bs-")) {
                if (std::find(std::begin(kBsBehaviorAttrs), std::end(kBsBehaviorAttrs), at.name) != std::end(kBsBehaviorAttrs) &&
                    bs_attr_seen.empty())
                    bs_attr_seen = at.name;
                any_bs_attr = true;
            } else if (at.name == "data-toggle") {
                auto v = detail::to_lower(detail::trim(at.value));
                if (std::find(std::begin(kLegacyToggles), std::end(kLegacyToggles), v) != std::end(kLegacyToggles))
                    legacy_toggle = true;
            } else if (at.name == "data-provide" && at.value == "typeahead") {
                typeahead = true;
            } else if (at.name == "data-spy" && at.value == "affix") {
                affix = true;
            }
        }
        if (!legacy_container) {
            for (auto c : kContainerClasses) {
                if (doc.has_class(n, c)) {
                    legacy_container = true;
                    break;
                }
            }
        }
    }
    if (script_bodies) {
        for (const auto& [url, body] : *script_bodies)
            note_banner(url, body);
    }

    if (!bs_attr_seen.empty()) {
        markup_major = 5;
        prof.evidence.push_back({EvidenceMethod::MarkupHeuristic, bs_attr_seen + " attribute implies major 5"});
    }
    if (legacy_toggle && legacy_container)
        prof.evidence.push_back({EvidenceMethod::MarkupHeuristic, "data-toggle with Bootstrap container class implies major <= 4"});
    if (affix) {
        prof.evidence.push_back({EvidenceMethod::MarkupHeuristic, "data-spy=affix implies major 3"});
        if (!markup_major)
            markup_major = 3;
    }
    if (typeahead) {
        prof.evidence.push_back({EvidenceMethod::MarkupHeuristic, "data-provide=typeahead implies major 2"});
        if (!markup_major)
            markup_major = 2;
    }

    prof.detected = !prof.evidence.empty();
    if (url_version) {
        prof.major = std::get<0>(*url_version);
        prof.full_version = version_string(*url_version);
    } else if (banner_version) {
        prof.major = std::get<0>(*banner_version);
        prof.full_version = version_string(*banner_version);
    } else if (markup_major) {
        prof.major = markup_major;
    }
    if (prof.major)
        prof.attr_prefix = *prof.major == 5 ? "data-bs-" : "data-";
    else
        prof.attr_prefix = any_bs_attr ? "data-bs-" : "data-";
    return prof;
}

std::vector<ComponentInstance> scan_components(const DomTree& doc, const BootstrapProfile& profile)
{
    return Scanner(doc, profile).run();
}

KindHistogram component_stats(const std::vector<std::vector<ComponentKind>>& pages)
{
    KindHistogram hist;
    for (auto k : kAllComponentKinds)
        hist[k] = 0;
    for (const auto& page : pages) {
        std::set<ComponentKind> seen(page.begin(), page.end());
        for (auto k : seen)
            ++hist[k];
    }
    return hist;
}

KindHistogram component_stats(const std::vector<std::vector<ComponentInstance>>& pages)
{
    std::vector<std::vector<ComponentKind>> kinds;
    kinds.reserve(pages.size());
    for (const auto& page : pages) {
        auto& v = kinds.emplace_back();
        for (const auto& inst : page)
            v.push_back(inst.kind);
    }
    return component_stats(kinds);
}

std::map<ComponentKind, double> component_fractions(const KindHistogram& hist, std::size_t total_pages)
{
    std::map<ComponentKind, double> out;
    for (const auto& [k, n] : hist)
        out[k] = total_pages == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(total_pages);
    return out;
}

}  // namespace jsrehab
