#include "jsrehab/components.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_set>

#include "strings.hpp"

namespace jsrehab {

namespace {

constexpr std::string_view kNoInputParents[] = {"table", "thead", "tbody", "tfoot", "tr", "colgroup", "select", "optgroup",
                                                "datalist", "ul", "ol", "dl", "menu", "html", "head", "frameset"};

constexpr std::string_view kFocusOutline[] = {"outline", "2px solid #0d6efd"};

bool disallows_input(const DomTree& t, NodeId parent)
{
    if (!parent || t.kind(parent) != NodeKind::Element)
        return true;
    const auto& tag = t.tag(parent);
    return std::find(std::begin(kNoInputParents), std::end(kNoInputParents), tag) != std::end(kNoInputParents) ||
           is_raw_text_element(tag) || t.is_foreign(parent);
}

bool is_focusable(const DomTree& t, NodeId n)
{
    const auto& tag = t.tag(n);
    if (t.has_attr(n, "tabindex"))
        return true;
    if (tag == "a" || tag == "area")
        return t.has_attr(n, "href");
    return tag == "button" || tag == "input" || tag == "select" || tag == "textarea" || tag == "summary" ||
           tag == "iframe";
}

bool safe_attr_value(std::string_view v)
{
    return std::none_of(v.begin(), v.end(), [](char c) { return c == '"' || c == '\\' || c == '<' || c == '\n' || c == '\r'; });
}

// Selector compound addressing an element by id.
std::string id_ref(std::string_view id)
{
    if (is_css_identifier(id))
        return "#" + std::string(id);
    if (!id.empty() && safe_attr_value(id))
        return "[id=\"" + std::string(id) + "\"]";
    throw TargetUnreachable("id '" + std::string(id) + "' cannot be addressed by a selector");
}

// Compound addressing a sibling on the path to a target.
std::string step_ref(const DomTree& t, NodeId n)
{
    if (auto id = t.attr(n, "id"); id && !id->empty()) {
        try {
            return id_ref(*id);
        } catch (const TargetUnreachable&) {
        }
    }
    for (auto c : t.classes(n)) {
        if (is_css_identifier(c))
            return "." + std::string(c);
    }
    return t.tag(n);
}

NodeId lowest_common_ancestor(const DomTree& t, const std::vector<NodeId>& nodes)
{
    NodeId l = nodes.front();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        while (l && !t.is_ancestor_of(l, nodes[i]) && l != nodes[i])
            l = t.parent(l);
    }
    return l;
}

// Ancestor-or-self of `n` whose parent is `parent`.
NodeId child_toward(const DomTree& t, NodeId parent, NodeId n)
{
    for (NodeId cur = n; cur; cur = t.parent(cur)) {
        if (t.parent(cur) == parent)
            return cur;
    }
    return {};
}

std::string attr_trimmed(const DomTree& t, NodeId n, std::string_view name)
{
    return std::string(detail::trim(t.attr(n, name).value_or("")));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

constexpr std::string_view kDroppedTriggerAttrs[] = {
    "type", "href", "role", "tabindex", "aria-expanded", "aria-selected", "aria-pressed", "aria-checked",
    "aria-haspopup", "aria-current", "target", "rel", "download", "value", "name", "form", "formaction", "for",
    "disabled", "autocomplete"};

constexpr std::string_view kDroppedBehaviorSuffixes[] = {
    "toggle", "target", "dismiss", "parent", "slide", "slide-to", "display", "offset", "reference", "auto-close",
    "boundary", "backdrop", "keyboard", "focus", "scroll", "ride", "interval", "pause", "wrap", "touch"};

class Applier {
public:
    Applier(DomTree& t, const PlanEntry& e, std::string_view prefix)
        : t_(t), e_(e), in_(e.instance), p_(prefix), kind_(kind_name(e.instance.kind))
    {
    }

    ApplyResult run()
    {
        switch (e_.mechanism.type) {
        case MechanismType::CheckboxToggle:
            if (in_.kind == ComponentKind::Popover)
                popover();
            else
                checkbox();
            break;
        case MechanismType::RadioGroup:
            radio_group();
            break;
        case MechanismType::UrlFragmentTarget:
            fragment_tabs();
            break;
        case MechanismType::HoverFocus:
            tooltip();
            break;
        case MechanismType::StickyPosition:
            affix();
            break;
        case MechanismType::Unsupported:
            break;
        }
        return std::move(r_);
    }

private:
    std::string a(std::string_view suffix) const { return p_ + std::string(suffix); }

    void rule(const std::string& selector, std::vector<Declaration> decls)
    {
        r_.rules.push_back(make_rule(selector, std::move(decls), std::string(kind_)));
    }

    std::vector<NodeId> toggle_triggers() const
    {
        std::vector<NodeId> out;
        for (const auto& tr : in_.triggers) {
            if (tr.role != TriggerRole::Dismiss)
                out.push_back(tr.node);
        }
        return out;
    }

    // Node the generated inputs are inserted before, so that every target is
    // reachable through `~` (optionally followed by a descendant path).
    NodeId placement(const std::vector<NodeId>& targets, NodeId container = {}) const
    {
        NodeId p;
        if (container) {
            p = container;
        } else if (targets.size() == 1) {
            p = targets.front();
        } else {
            NodeId l = lowest_common_ancestor(t_, targets);
            if (std::find(targets.begin(), targets.end(), l) != targets.end())
                l = t_.parent(l);
            for (auto c : t_.children(l)) {
                if (std::any_of(targets.begin(), targets.end(), [&](NodeId tg) { return tg == c || t_.is_ancestor_of(c, tg); })) {
                    p = c;
                    break;
                }
            }
        }
        if (!p || !t_.is_attached(p))
            throw TargetUnreachable("target is not attached to the document");
        while (disallows_input(t_, t_.parent(p))) {
            NodeId up = t_.parent(p);
            if (!up || t_.kind(up) != NodeKind::Element || t_.tag(up) == "html" || t_.tag(up) == "head" ||
                t_.tag(up) == "body")
                throw TargetUnreachable("no element position before <" + t_.tag(p) + "> can hold a form control");
            p = up;
        }
        if (t_.tag(p) == "body" || t_.tag(p) == "head" || t_.tag(p) == "html")
            throw TargetUnreachable("target is the document body");
        // Let triggers that precede the target follow the input, so focus can be mirrored onto them.
        NodeId parent = t_.parent(p);
        std::size_t best = t_.index_in_parent(p);
        for (auto tr : toggle_triggers()) {
            NodeId x = child_toward(t_, parent, tr);
            if (x && t_.index_in_parent(x) < best && t_.kind(x) == NodeKind::Element) {
                best = t_.index_in_parent(x);
                p = x;
            }
        }
        return p;
    }

    // Selector fragment following `~` that reaches `target` from an input placed before `p`.
    std::string reference(NodeId p, NodeId target, const std::string& final) const
    {
        NodeId parent = t_.parent(p);
        NodeId s = child_toward(t_, parent, target);
        if (!s || t_.index_in_parent(s) < t_.index_in_parent(p))
            throw TargetUnreachable("<" + t_.tag(target) + "> does not follow the generated control");
        if (s == target)
            return final;
        return step_ref(t_, s) + (t_.parent(target) == s ? ">" : " ") + final;
    }

    std::string target_final(std::size_t i) const
    {
        const auto& id = e_.target_ids[i];
        if (id.empty())
            return ".dropdown-menu";
        return id_ref(id);
    }

    NodeId make_input(std::string_view type, const std::string& id, const std::string& name, bool checked)
    {
        std::vector<Attribute> attrs{{"type", std::string(type)}};
        if (!name.empty())
            attrs.push_back({"name", name});
        attrs.push_back({"id", id});
        attrs.push_back({"class", "jsrehab-visually-hidden"});
        if (checked)
            attrs.push_back({"checked", ""});
        return t_.create_element("input", std::move(attrs));
    }

    void insert(NodeId node, NodeId before)
    {
        t_.insert_before(node, before);
        ++r_.mutations;
    }

    void prepare_targets(const std::vector<NodeId>& targets, bool mark)
    {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (i < e_.assign_target_id.size() && e_.assign_target_id[i]) {
                t_.set_attr(targets[i], "id", e_.target_ids[i]);
                ++r_.mutations;
            }
            if (t_.remove_attr(targets[i], "aria-hidden"))
                ++r_.mutations;
            if (mark) {
                t_.set_attr(targets[i], "data-jsrehab", std::string(kind_));
                ++r_.mutations;
            }
        }
    }

    bool is_behavior_attr(std::string_view name) const
    {
        if (std::find(std::begin(kDroppedTriggerAttrs), std::end(kDroppedTriggerAttrs), name) != std::end(kDroppedTriggerAttrs))
            return true;
        if (!name.starts_with(p_))
            return false;
        auto rest = name.substr(p_.size());
        return std::find(std::begin(kDroppedBehaviorSuffixes), std::end(kDroppedBehaviorSuffixes), rest) !=
               std::end(kDroppedBehaviorSuffixes);
    }

    // Turns a trigger into `<label for=ID>` keeping classes, children and
    // non-behavioral attributes.
    NodeId to_label(NodeId n, const std::string& for_id, std::string_view fallback)
    {
        NodeId label = n;
        std::string fallback_text(fallback);
        if (auto title = t_.attr(n, "title"); title && !detail::is_blank(*title))
            fallback_text = std::string(detail::trim(*title));
        if (t_.tag(n) == "input") {
            auto value = attr_trimmed(t_, n, "value");
            t_.rename(n, "label");
            if (!value.empty())
                t_.append_child(n, t_.create_text(value));
        } else if (is_void_element(t_.tag(n))) {
            label = t_.create_element("label");
            t_.wrap(n, label);
            std::vector<Attribute> kept;
            for (const auto& at : t_.attributes(n)) {
                if (!is_behavior_attr(at.name) || at.name == "type" || at.name == "value" || at.name == "name")
                    kept.push_back(at);
            }
            t_.set_attributes(n, std::move(kept));
        } else {
            t_.rename(n, "label");
        }
        std::vector<Attribute> attrs{{"for", for_id}};
        if (label == n) {
            for (const auto& at : t_.attributes(n)) {
                if (!is_behavior_attr(at.name))
                    attrs.push_back(at);
            }
        }
        t_.set_attributes(label, std::move(attrs));
        if (!has_accessible_text(t_, label))
            t_.set_attr(label, "aria-label", fallback_text);
        ++r_.mutations;
        return label;
    }

    std::vector<Declaration> focus_decls() const
    {
        return {{std::string(kFocusOutline[0]), std::string(kFocusOutline[1])}, {"outline-offset", "2px"}};
    }

    void focus_rule(const std::string& id)
    {
        auto ref = id_ref(id);
        rule(ref + ":focus-visible~label[for=" + id + "]," + ref + ":focus-visible~* label[for=" + id + "]", focus_decls());
    }

    void checkbox()
    {
        const auto& targets = in_.targets;
        const std::string& id = e_.ids.at(0);
        NodeId p = placement(targets);
        std::vector<std::string> refs;
        for (std::size_t i = 0; i < targets.size(); ++i)
            refs.push_back(reference(p, targets[i], target_final(i)));

        bool dismissal = in_.kind == ComponentKind::Alert || in_.kind == ComponentKind::Toast;
        insert(make_input("checkbox", id, {}, !dismissal && in_.initially_active), p);
        prepare_targets(targets, true);

        std::string fallback = dismissal ? "Close" : "Toggle";
        for (const auto& tr : in_.triggers)
            to_label(tr.node, id, tr.role == TriggerRole::Dismiss ? "Close" : fallback);

        if (in_.kind == ComponentKind::Modal) {
            NodeId backdrop = t_.create_element(
                "label", {{"for", id}, {"class", "jsrehab-backdrop"}, {"aria-label", "Close"}});
            t_.insert_first_child(backdrop, targets.front());
            ++r_.mutations;
        }

        auto with = [&](std::string_view state) {
            std::vector<std::string> parts;
            for (const auto& ref : refs)
                parts.push_back(id_ref(id) + std::string(state) + "~" + ref);
            return join(parts, ",");
        };
        switch (in_.kind) {
        case ComponentKind::Alert:
        case ComponentKind::Toast:
            rule(with(":checked"), {{"display", "none"}});
            break;
        case ComponentKind::Modal:
            rule(with(""), {{"display", "none"}});
            rule(with(":checked"), {{"display", "block"}, {"opacity", "1"}});
            break;
        case ComponentKind::Offcanvas:
            rule(with(""), {{"visibility", "hidden"}});
            rule(with(":checked"), {{"visibility", "visible"}, {"transform", "none"}});
            break;
        default:
            rule(with(""), {{"display", "none"}});
            rule(with(":checked"), {{"display", "block"}});
            break;
        }
        focus_rule(id);
    }

    void popover()
    {
        NodeId x = in_.triggers.at(0).node;
        if (disallows_input(t_, t_.parent(x)))
            throw TargetUnreachable("popover trigger sits where no wrapper element is allowed");
        const std::string& id = e_.ids.at(0);
        std::string title = attr_trimmed(t_, x, a("title"));
        if (title.empty())
            title = attr_trimmed(t_, x, "title");
        if (title.empty())
            title = attr_trimmed(t_, x, "data-original-title");
        std::string content = attr_trimmed(t_, x, a("content"));
        std::string placement = detail::to_lower(attr_trimmed(t_, x, a("placement")));
        if (placement == "left")
            placement = "start";
        else if (placement == "right")
            placement = "end";
        else if (placement != "bottom" && placement != "start" && placement != "end")
            placement = "top";

        NodeId wrapper = t_.create_element("span", {{"class", "jsrehab-popover"}, {"data-jsrehab", "popover"}});
        t_.wrap(x, wrapper);
        insert(make_input("checkbox", id, {}, false), x);
        for (const std::string& n : std::vector<std::string>{"title", "data-original-title", a("title"), a("content"), a("placement"),
                       a("trigger"), a("html"), a("container"), a("delay"), a("offset"), a("custom-class")})
            t_.remove_attr(x, n);
        NodeId label = to_label(x, id, title.empty() ? "Show details" : title);

        NodeId body = t_.create_element(
            "span", {{"class", "popover bs-popover-" + placement + " jsrehab-popover-body jsrehab-popover-" + placement},
                     {"role", "tooltip"}});
        if (!title.empty()) {
            NodeId h = t_.create_element("span", {{"class", "popover-header"}});
            t_.append_child(h, t_.create_text(title));
            t_.append_child(body, h);
        }
        if (!content.empty()) {
            NodeId b = t_.create_element("span", {{"class", "popover-body"}});
            t_.append_child(b, t_.create_text(content));
            t_.append_child(body, b);
        }
        t_.insert_after(body, label);
        ++r_.mutations;

        static const std::pair<std::string_view, std::vector<Declaration>> kPlacement[] = {
            {"top", {{"top", "auto"}, {"bottom", "100%"}, {"left", "0"}}},
            {"bottom", {{"top", "100%"}, {"bottom", "auto"}, {"left", "0"}}},
            {"start", {{"top", "0"}, {"right", "100%"}, {"left", "auto"}}},
            {"end", {{"top", "0"}, {"left", "100%"}}},
        };
        rule(".jsrehab-popover", {{"position", "relative"}, {"display", "inline-block"}});
        for (const auto& [name, decls] : kPlacement) {
            if (name == placement) {
                auto d = decls;
                d.insert(d.begin(), {"position", "absolute"});
                d.push_back({"width", "max-content"});
                d.push_back({"max-width", "276px"});
                rule(".jsrehab-popover-" + placement, d);
            }
        }
        auto ref = id_ref(id);
        rule(ref + "~.jsrehab-popover-body", {{"display", "none"}});
        rule(ref + ":checked~.jsrehab-popover-body", {{"display", "block"}});
    }

    void tooltip()
    {
        NodeId x = in_.triggers.at(0).node;
        std::string title = attr_trimmed(t_, x, a("title"));
        if (title.empty())
            title = attr_trimmed(t_, x, "title");
        if (title.empty())
            title = attr_trimmed(t_, x, "data-original-title");
        bool had_text = has_accessible_text(t_, x);
        for (const std::string& n : std::vector<std::string>{"title", "data-original-title", a("title"), a("toggle"), a("placement"),
                       a("trigger"), a("html"), a("container"), a("delay"), a("offset"), a("custom-class")})
            t_.remove_attr(x, n);
        t_.set_attr(x, "data-jsrehab-tooltip", title);
        t_.set_attr(x, "data-jsrehab", "tooltip");
        if (!is_focusable(t_, x))
            t_.set_attr(x, "tabindex", "0");
        if (!had_text)
            t_.set_attr(x, "aria-label", title);
        ++r_.mutations;
        rule("[data-jsrehab-tooltip]", {{"position", "relative"}});
        rule("[data-jsrehab-tooltip]:hover::after,[data-jsrehab-tooltip]:focus::after",
             {{"content", "attr(data-jsrehab-tooltip)"},
              {"position", "absolute"},
              {"bottom", "100%"},
              {"left", "50%"},
              {"transform", "translateX(-50%)"},
              {"z-index", "1070"},
              {"padding", ".25rem .5rem"},
              {"border-radius", ".25rem"},
              {"background", "#000"},
              {"color", "#fff"},
              {"font-size", ".875rem"},
              {"white-space", "nowrap"},
              {"pointer-events", "none"}});
    }

    void affix()
    {
        NodeId x = in_.triggers.at(0).node;
        long offset = 0;
        auto v = attr_trimmed(t_, x, "data-offset-top");
        if (v.empty())
            v = attr_trimmed(t_, x, "data-offset");
        std::from_chars(v.data(), v.data() + v.size(), offset);
        auto ref = id_ref(e_.target_ids.at(0));
        if (!e_.assign_target_id.empty() && e_.assign_target_id[0])
            t_.set_attr(x, "id", e_.target_ids[0]);
        for (auto n : {"data-spy", "data-offset-top", "data-offset-bottom", "data-offset"})
            t_.remove_attr(x, n);
        t_.set_attr(x, "data-jsrehab", "affix");
        ++r_.mutations;
        rule(ref, {{"position", "sticky"}, {"top", std::to_string(offset) + "px"}});
    }

    NodeId pane_container(const std::vector<NodeId>& panes) const
    {
        NodeId c = lowest_common_ancestor(t_, panes);
        if (std::find(panes.begin(), panes.end(), c) != panes.end())
            c = t_.parent(c);
        return c;
    }

    void radio_group()
    {
        const auto& panes = in_.targets;
        const std::size_t n = panes.size();
        NodeId container = pane_container(panes);
        NodeId p = placement(panes, container);
        std::vector<std::string> refs;
        for (std::size_t i = 0; i < n; ++i)
            refs.push_back(reference(p, panes[i], target_final(i)));

        std::vector<NodeId> prev, next;
        for (const auto& tr : in_.triggers) {
            if (tr.role == TriggerRole::Prev)
                prev.push_back(tr.node);
            else if (tr.role == TriggerRole::Next)
                next.push_back(tr.node);
        }
        std::vector<std::string> prev_refs, next_refs;
        for (auto c : prev)
            prev_refs.push_back(reference(p, c, ".jsrehab-prev"));
        for (auto c : next)
            next_refs.push_back(reference(p, c, ".jsrehab-next"));

        std::size_t active = in_.active_index.value_or(0);
        if (active >= n)
            active = 0;
        for (std::size_t i = 0; i < n; ++i)
            insert(make_input("radio", e_.ids[i], e_.mechanism.group, i == active), p);
        prepare_targets(panes, false);
        NodeId root = in_.kind == ComponentKind::Carousel && in_.container ? in_.container : container;
        t_.set_attr(root, "data-jsrehab", std::string(kind_));
        if (in_.kind == ComponentKind::Carousel) {
            for (const std::string& name : std::vector<std::string>{"data-ride", a("ride"), a("interval"), a("pause"), a("wrap"), a("touch")})
                t_.remove_attr(root, name);
        }

        for (const auto& tr : in_.triggers) {
            if (tr.role == TriggerRole::Toggle && tr.target >= 0 && static_cast<std::size_t>(tr.target) < n) {
                std::string fallback = in_.kind == ComponentKind::Carousel ? "Slide " + std::to_string(tr.target + 1) : "Show";
                to_label(tr.node, e_.ids[tr.target], fallback);
            }
        }
        auto clone_controls = [&](const std::vector<NodeId>& controls, int step, std::string_view cls, std::string_view fallback) {
            for (auto c : controls) {
                NodeId last = c;
                NodeId pristine = t_.clone(c, true);
                for (std::size_t i = 0; i < n; ++i) {
                    NodeId node = c;
                    if (i > 0) {
                        node = t_.clone(pristine, true);
                        t_.remove_attr(node, "id");
                        t_.insert_after(node, last);
                    }
                    std::size_t to = (i + n + step) % n;
                    auto label = to_label(node, e_.ids[to], fallback);
                    auto cur = std::string(t_.attr(label, "class").value_or(""));
                    t_.set_attr(label, "class", cur.empty() ? std::string(cls) : cur + " " + std::string(cls));
                    last = label;
                }
                t_.destroy(pristine);
            }
        };
        clone_controls(prev, -1, "jsrehab-prev", "Previous");
        clone_controls(next, 1, "jsrehab-next", "Next");

        const std::string first = id_ref(e_.ids[0]);
        std::vector<std::string> hide;
        for (const auto& ref : refs)
            hide.push_back(first + "~" + ref);
        rule(join(hide, ","), {{"display", "none"}});
        std::vector<Declaration> show{{"display", "block"}};
        if (in_.kind == ComponentKind::NavsTabs)
            show.push_back({"opacity", "1"});
        for (std::size_t i = 0; i < n; ++i)
            rule(id_ref(e_.ids[i]) + ":checked~" + refs[i], show);

        if (!prev.empty() || !next.empty()) {
            std::vector<std::string> hide_controls;
            for (const auto& r : prev_refs)
                hide_controls.push_back(first + "~" + r);
            for (const auto& r : next_refs)
                hide_controls.push_back(first + "~" + r);
            rule(join(hide_controls, ","), {{"display", "none"}});
            if (n > 1) {
                for (std::size_t i = 0; i < n; ++i) {
                    std::vector<std::string> parts;
                    auto self = id_ref(e_.ids[i]) + ":checked~";
                    for (const auto& r : prev_refs)
                        parts.push_back(self + r + "[for=" + e_.ids[(i + n - 1) % n] + "]");
                    for (const auto& r : next_refs)
                        parts.push_back(self + r + "[for=" + e_.ids[(i + 1) % n] + "]");
                    rule(join(parts, ","), {{"display", "flex"}});
                }
            }
        }
    }

    void fragment_tabs()
    {
        const auto& panes = in_.targets;
        NodeId parent = t_.parent(panes.front());
        for (auto pn : panes) {
            if (t_.parent(pn) != parent)
                throw TargetUnreachable("tab panes are not siblings; :target switching needs a shared parent");
        }
        std::vector<std::string> refs;
        for (std::size_t i = 0; i < panes.size(); ++i)
            refs.push_back(target_final(i));
        std::size_t def = in_.active_index.value_or(0);
        if (def >= panes.size())
            def = 0;
        prepare_targets(panes, false);
        t_.set_attr(parent, "data-jsrehab", std::string(kind_));
        NodeId last = *std::max_element(panes.begin(), panes.end(), [&](NodeId x, NodeId y) {
            return t_.index_in_parent(x) < t_.index_in_parent(y);
        });
        if (last != panes[def]) {
            t_.insert_after(t_.remove(panes[def]), last);
            ++r_.mutations;
        }
        for (const auto& tr : in_.triggers) {
            if (tr.target < 0)
                continue;
            NodeId x = tr.node;
            std::vector<Attribute> attrs;
            for (const auto& at : t_.attributes(x)) {
                if (!is_behavior_attr(at.name))
                    attrs.push_back(at);
            }
            attrs.insert(attrs.begin(), {"href", "#" + e_.target_ids[tr.target]});
            if (t_.tag(x) != "a")
                t_.rename(x, "a");
            t_.set_attributes(x, std::move(attrs));
            ++r_.mutations;
        }
        std::vector<std::string> others, shown, hide_default;
        for (std::size_t i = 0; i < panes.size(); ++i) {
            if (i == def)
                continue;
            others.push_back(refs[i]);
            shown.push_back(refs[i] + ":target");
            hide_default.push_back(refs[i] + ":target~" + refs[def]);
        }
        if (others.empty())
            return;
        rule(join(others, ","), {{"display", "none"}});
        rule(join(shown, ","), {{"display", "block"}, {"opacity", "1"}});
        rule(join(hide_default, ","), {{"display", "none"}});
    }

    DomTree& t_;
    const PlanEntry& e_;
    const ComponentInstance& in_;
    std::string p_;
    std::string_view kind_;
    ApplyResult r_;
};

bool has_id_needs(const PlanEntry& e) { return e.mechanism.type != MechanismType::HoverFocus; }

}  // namespace

StateMechanism mechanism_for(ComponentKind kind, const RewriteConfig& config)
{
    switch (kind) {
    case ComponentKind::Accordion:
    case ComponentKind::Carousel:
        return {MechanismType::RadioGroup, {}, {}};
    case ComponentKind::NavsTabs:
        if (config.tabs_mechanism == TabsMechanism::Target)
            return {MechanismType::UrlFragmentTarget, {}, {}};
        return {MechanismType::RadioGroup, {}, {}};
    case ComponentKind::Affix:
        return {MechanismType::StickyPosition, {}, {}};
    case ComponentKind::Tooltip:
        return {MechanismType::HoverFocus, {}, {}};
    case ComponentKind::Scrollspy:
        return {MechanismType::Unsupported, {}, "no access to viewport in CSS"};
    case ComponentKind::Typeahead:
        return {MechanismType::Unsupported, {}, "cannot replicate autocompletion"};
    case ComponentKind::Alert:
    case ComponentKind::Collapse:
    case ComponentKind::Dropdown:
    case ComponentKind::Modal:
    case ComponentKind::Offcanvas:
    case ComponentKind::Popover:
    case ComponentKind::Toast:
        return {MechanismType::CheckboxToggle, {}, {}};
    }
    return {};
}

std::string_view mechanism_name(MechanismType type)
{
    switch (type) {
    case MechanismType::CheckboxToggle:
        return "checkbox";
    case MechanismType::RadioGroup:
        return "radio";
    case MechanismType::UrlFragmentTarget:
        return "target";
    case MechanismType::HoverFocus:
        return "hover-focus";
    case MechanismType::StickyPosition:
        return "sticky";
    case MechanismType::Unsupported:
        return "unsupported";
    }
    return "unsupported";
}

IdAllocator::IdAllocator(const DomTree& doc)
{
    doc.walk(doc.root(), [&](NodeId n) {
        if (doc.kind(n) == NodeKind::Element) {
            if (auto id = doc.attr(n, "id"); id && id->starts_with("jsrehab-"))
                taken_.emplace_back(*id);
        }
        return true;
    });
    std::sort(taken_.begin(), taken_.end());
}

std::string IdAllocator::next()
{
    for (;;) {
        std::string id = "jsrehab-" + std::to_string(counter_++);
        if (!std::binary_search(taken_.begin(), taken_.end(), id))
            return id;
    }
}

std::string node_path(const DomTree& doc, NodeId node)
{
    std::vector<std::string> parts;
    for (NodeId n = node; n && doc.kind(n) == NodeKind::Element; n = doc.parent(n)) {
        std::string part = doc.tag(n);
        if (auto id = doc.attr(n, "id"); id && !id->empty()) {
            part += "#" + std::string(*id);
        } else {
            auto cls = doc.classes(n);
            if (!cls.empty())
                part += "." + std::string(cls.front());
        }
        parts.push_back(std::move(part));
    }
    std::reverse(parts.begin(), parts.end());
    return join(parts, ">");
}

bool has_accessible_text(const DomTree& doc, NodeId node)
{
    if (auto al = doc.attr(node, "aria-label"); al && !detail::is_blank(*al))
        return true;
    if (doc.has_attr(node, "aria-labelledby"))
        return true;
    bool found = false;
    doc.walk(node, [&](NodeId n) {
        if (found)
            return false;
        switch (doc.kind(n)) {
        case NodeKind::Text:
            found = !detail::is_blank(doc.data(n));
            return false;
        case NodeKind::Element:
            if (n != node && doc.attr(n, "aria-hidden") == "true")
                return false;
            if (doc.tag(n) == "img" && !detail::is_blank(doc.attr(n, "alt").value_or("")))
                found = true;
            if (n != node && !detail::is_blank(doc.attr(n, "aria-label").value_or("")))
                found = true;
            return !found;
        default:
            return false;
        }
    });
    return found;
}

RewritePlan plan(const DomTree& doc, std::vector<ComponentInstance> instances, const RewriteConfig& config)
{
    RewritePlan out;
    IdAllocator ids(doc);
    std::set<std::string> group_names;
    for (auto& inst : instances) {
        auto kind = std::string(kind_name(inst.kind));
        NodeId where = !inst.triggers.empty() ? inst.triggers.front().node
                       : !inst.targets.empty() ? inst.targets.front()
                                               : inst.container;
        auto path = where ? node_path(doc, where) : std::string();
        auto mechanism = mechanism_for(inst.kind, config);
        PlanEntry e{std::move(inst), std::move(mechanism), {}, {}, {}};
        const auto& in = e.instance;
        if (e.mechanism.type == MechanismType::Unsupported) {
            out.warnings.push_back({kind, e.mechanism.reason, path});
            continue;
        }
        for (const auto& w : in.warnings)
            out.warnings.push_back({kind, w, path});

        bool self_target = in.kind == ComponentKind::Tooltip || in.kind == ComponentKind::Popover || in.kind == ComponentKind::Affix;
        if (!self_target && in.targets.empty())
            continue;
        bool has_toggle = std::any_of(in.triggers.begin(), in.triggers.end(), [](const Trigger& t) { return t.role != TriggerRole::Dismiss; });
        bool has_any = !in.triggers.empty();
        if ((in.kind == ComponentKind::Alert || in.kind == ComponentKind::Toast) ? !has_any
            : (in.kind == ComponentKind::Accordion || in.kind == ComponentKind::NavsTabs || in.kind == ComponentKind::Carousel)
                ? false
                : !has_toggle)
            continue;
        if (in.kind == ComponentKind::Tooltip || in.kind == ComponentKind::Popover) {
            NodeId x = in.triggers.front().node;
            const std::string p = doc.attr(x, "data-bs-toggle") ? "data-bs-" : "data-";
            bool has_title = !detail::is_blank(doc.attr(x, "title").value_or("")) ||
                             !detail::is_blank(doc.attr(x, p + "title").value_or("")) ||
                             !detail::is_blank(doc.attr(x, "data-original-title").value_or(""));
            bool has_content = !detail::is_blank(doc.attr(x, p + "content").value_or(""));
            if (in.kind == ComponentKind::Tooltip && !has_title) {
                out.warnings.push_back({kind, "tooltip has no title text", path});
                continue;
            }
            if (in.kind == ComponentKind::Popover && !has_title && !has_content) {
                out.warnings.push_back({kind, "popover has no title or content", path});
                continue;
            }
            if (in.kind == ComponentKind::Tooltip && is_void_element(doc.tag(x))) {
                out.warnings.push_back({kind, "tooltip on a void element cannot carry generated content", path});
                continue;
            }
        }

        switch (e.mechanism.type) {
        case MechanismType::CheckboxToggle:
            e.ids.push_back(ids.next());
            break;
        case MechanismType::RadioGroup: {
            for (std::size_t i = 0; i < in.targets.size(); ++i)
                e.ids.push_back(ids.next());
            std::string name = "jsrehab-" + in.group_key.value_or(kind);
            for (int k = 2; group_names.count(name); ++k)
                name = "jsrehab-" + in.group_key.value_or(kind) + "-" + std::to_string(k);
            group_names.insert(name);
            e.mechanism.group = name;
            break;
        }
        default:
            break;
        }

        std::vector<NodeId> addressed = in.targets;
        if (in.kind == ComponentKind::Affix)
            addressed = {in.triggers.front().node};
        if (in.kind == ComponentKind::Popover)
            addressed.clear();
        for (auto tg : addressed) {
            auto id = doc.attr(tg, "id");
            if (id && !id->empty()) {
                e.target_ids.emplace_back(*id);
                e.assign_target_id.push_back(false);
            } else if (in.kind == ComponentKind::Dropdown && !in.triggers.empty() &&
                       doc.parent(in.triggers.front().node) == doc.parent(tg) && doc.precedes(in.triggers.front().node, tg)) {
                e.target_ids.emplace_back();
                e.assign_target_id.push_back(false);
            } else {
                e.target_ids.push_back(ids.next());
                e.assign_target_id.push_back(true);
            }
        }
        if (!has_id_needs(e))
            e.target_ids.clear();
        out.entries.push_back(std::move(e));
    }
    out.next_id = ids.counter();
    return out;
}

ApplyResult apply_instance(const PlanEntry& entry, DomTree& doc, std::string_view attr_prefix)
{
    return Applier(doc, entry, attr_prefix).run();
}

std::size_t apply_plan(RewritePlan& p, DomTree& doc, std::string_view attr_prefix)
{
    std::size_t mutations = 0;
    for (const auto& e : p.entries) {
        const auto& in = e.instance;
        NodeId where = !in.triggers.empty() ? in.triggers.front().node : !in.targets.empty() ? in.targets.front() : in.container;
        try {
            auto r = apply_instance(e, doc, attr_prefix);
            mutations += r.mutations;
            for (auto& rule : r.rules)
                p.rules.push_back(std::move(rule));
        } catch (const TargetUnreachable& ex) {
            p.warnings.push_back({std::string(kind_name(in.kind)), ex.what(), where ? node_path(doc, where) : ""});
        }
    }
    return mutations;
}

}  // namespace jsrehab
