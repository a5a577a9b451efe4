#include "jsrehab/statesim.hpp"

#include <algorithm>

#include "jsrehab/components.hpp"
#include "strings.hpp"

namespace jsrehab {

namespace {

bool is_toggle_input(const DomTree& doc, NodeId n)
{
    if (!doc.is_element(n, "input"))
        return false;
    auto type = detail::to_lower(doc.attr(n, "type").value_or(""));
    return type == "checkbox" || type == "radio";
}

bool has_class(const DomTree& doc, NodeId n, std::string_view cls)
{
    bool found = false;
    detail::for_each_token(doc.attr(n, "class").value_or(""), [&](std::string_view t) {
        if (t == cls)
            found = true;
    });
    return found;
}

bool is_generated_input(const DomTree& doc, NodeId n)
{
    return is_toggle_input(doc, n) && has_class(doc, n, "jsrehab-visually-hidden");
}

std::string_view id_of(const DomTree& doc, NodeId n) { return doc.attr(n, "id").value_or(""); }

struct Slot {
    Specificity spec;
    std::size_t order = 0;
    std::string value;
};

void offer(std::map<std::string, Slot>& slots, const Declaration& d, Specificity spec, std::size_t order)
{
    auto it = slots.find(d.property);
    if (it == slots.end() || spec > it->second.spec || (spec == it->second.spec && order >= it->second.order))
        slots[d.property] = {spec, order, d.value};
}

}  // namespace

bool SimulatedState::checked(const DomTree& tree, NodeId el) const
{
    if (!is_toggle_input(tree, el))
        return false;
    auto id = tree.attr(el, "id");
    if (!id)
        return tree.has_attr(el, "checked");
    return s_.checked.count(std::string(*id)) > 0;
}

bool SimulatedState::targeted(const DomTree& tree, NodeId el) const
{
    if (!s_.fragment || s_.fragment->empty())
        return false;
    auto id = tree.attr(el, "id");
    return id && *id == *s_.fragment;
}

StateAssignment initial_state(const DomTree& doc)
{
    StateAssignment s;
    for (auto n : doc.elements_in_order()) {
        if (is_toggle_input(doc, n) && doc.has_attr(n, "checked") && doc.has_attr(n, "id"))
            s.checked.insert(std::string(id_of(doc, n)));
    }
    return s;
}

StateAssignment toggle(const DomTree& doc, StateAssignment state, std::string_view control_id)
{
    NodeId control;
    for (auto n : doc.elements_in_order()) {
        if (is_toggle_input(doc, n) && id_of(doc, n) == control_id) {
            control = n;
            break;
        }
    }
    if (!control)
        throw UnknownControl("no checkbox or radio with id \"" + std::string(control_id) + "\"");
    std::string id(control_id);
    if (detail::to_lower(doc.attr(control, "type").value_or("")) == "checkbox") {
        if (!state.checked.erase(id))
            state.checked.insert(id);
        return state;
    }
    auto name = doc.attr(control, "name");
    if (name) {
        for (auto n : doc.elements_in_order()) {
            if (n != control && is_toggle_input(doc, n) && doc.attr(n, "name") == name &&
                detail::to_lower(doc.attr(n, "type").value_or("")) == "radio")
                state.checked.erase(std::string(id_of(doc, n)));
        }
    }
    state.checked.insert(id);
    return state;
}

StateAssignment hover(const DomTree& doc, StateAssignment state, NodeId node)
{
    state.hovered.clear();
    for (NodeId n = node; n && doc.is_element(n); n = doc.parent(n))
        state.hovered.insert(n);
    return state;
}

StateAssignment focus(StateAssignment state, NodeId node)
{
    state.focused = node;
    return state;
}

StateAssignment navigate(StateAssignment state, std::optional<std::string> fragment)
{
    state.fragment = std::move(fragment);
    return state;
}

std::string ComputedStyle::display() const
{
    auto it = properties.find("display");
    return it == properties.end() ? std::string() : it->second;
}

std::string ComputedStyle::visibility() const
{
    auto it = properties.find("visibility");
    return it == properties.end() ? std::string() : it->second;
}

bool ComputedStyle::has_after_content() const
{
    auto it = after.find("content");
    if (it == after.end() || it->second == "none" || it->second == "normal")
        return false;
    auto d = after.find("display");
    return d == after.end() || d->second != "none";
}

VisibilityMap evaluate(const DomTree& doc, const std::vector<CssRule>& rules, const StateAssignment& state)
{
    SimulatedState sim(state);
    auto elements = doc.elements_in_order();
    std::unordered_map<NodeId, std::map<std::string, Slot>> main, after;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const auto& rule = rules[r];
        for (const auto& complex : rule.selector.complexes()) {
            if (complex.pseudo_element == PseudoElement::Before)
                continue;
            Specificity spec = complex.specificity();
            auto& target = complex.pseudo_element == PseudoElement::After ? after : main;
            for (auto el : elements) {
                if (!matches(doc, el, complex, sim))
                    continue;
                auto& slots = target[el];
                for (const auto& d : rule.declarations)
                    offer(slots, d, spec, r);
            }
        }
    }
    VisibilityMap out;
    for (auto el : elements) {
        auto& cs = out[el];
        if (auto it = main.find(el); it != main.end()) {
            for (auto& [k, v] : it->second)
                cs.properties[k] = v.value;
        }
        if (auto it = after.find(el); it != after.end()) {
            for (auto& [k, v] : it->second)
                cs.after[k] = v.value;
        }
    }
    return out;
}

bool rendered(const DomTree& doc, const VisibilityMap& map, NodeId node)
{
    for (NodeId n = node; n && doc.is_element(n); n = doc.parent(n)) {
        auto it = map.find(n);
        if (it != map.end() && it->second.hidden())
            return false;
    }
    return true;
}

std::vector<CssRule> injected_rules(const DomTree& doc)
{
    NodeId style = find_injected_style(doc);
    if (!style)
        return {};
    return parse_stylesheet(doc.text_content(style));
}

namespace {

class Checker {
public:
    Checker(const DomTree& doc, const std::vector<CssRule>& rules) : doc_(doc), rules_(rules), elements_(doc.elements_in_order())
    {
        for (auto n : elements_) {
            if (auto id = doc.attr(n, "id"))
                ids_[std::string(*id)].push_back(n);
        }
    }

    CheckReport run()
    {
        init_ = initial_state(doc_);
        base_ = eval(init_);
        lints();
        checkboxes();
        radio_groups();
        fragment_groups();
        tooltips();
        return std::move(report_);
    }

private:
    VisibilityMap eval(const StateAssignment& s)
    {
        ++report_.states_evaluated;
        return evaluate(doc_, rules_, s);
    }

    void fail(std::string assertion, std::string detail, NodeId where)
    {
        report_.failures.push_back({std::move(assertion), std::move(detail), where ? node_path(doc_, where) : ""});
    }

    bool own_hidden(const VisibilityMap& m, NodeId n) const
    {
        auto it = m.find(n);
        return it != m.end() && it->second.hidden();
    }

    static bool labelable(const DomTree& doc, NodeId n)
    {
        const auto& tag = doc.tag(n);
        if (tag == "input")
            return detail::to_lower(doc.attr(n, "type").value_or("")) != "hidden";
        return tag == "button" || tag == "select" || tag == "textarea" || tag == "meter" || tag == "output" || tag == "progress";
    }

    void lints()
    {
        std::map<std::string, std::size_t> label_count;
        for (auto n : elements_) {
            if (!doc_.is_element(n, "label"))
                continue;
            auto f = doc_.attr(n, "for");
            if (!f)
                continue;
            std::string id(*f);
            auto it = ids_.find(id);
            if (it == ids_.end()) {
                fail("label-target", "label for=\"" + id + "\" names no element", n);
                continue;
            }
            if (it->second.size() != 1) {
                fail("label-target", "label for=\"" + id + "\" matches " + std::to_string(it->second.size()) + " elements", n);
                continue;
            }
            NodeId input = it->second.front();
            if (!labelable(doc_, input)) {
                fail("label-target", "label for=\"" + id + "\" names a <" + doc_.tag(input) + ">", n);
                continue;
            }
            ++label_count[id];
            if (is_generated_input(doc_, input)) {
                if (!has_accessible_text(doc_, n))
                    fail("label-text", "label for=\"" + id + "\" has no accessible text", n);
                aria_state(n);
            }
        }
        for (auto n : elements_) {
            if (doc_.has_attr(n, "data-jsrehab"))
                aria_state(n);
            if (!is_generated_input(doc_, n))
                continue;
            aria_state(n);
            std::string id(id_of(doc_, n));
            auto cs = base_.find(n);
            if (cs != base_.end() && cs->second.display() == "none")
                fail("focusable", "generated input #" + id + " is display:none", n);
            else if (cs != base_.end() && cs->second.visibility() == "hidden")
                fail("focusable", "generated input #" + id + " is visibility:hidden", n);
            if (doc_.has_attr(n, "disabled"))
                fail("focusable", "generated input #" + id + " is disabled", n);
            if (auto ti = doc_.attr(n, "tabindex"); ti && detail::trim(*ti).starts_with("-"))
                fail("focusable", "generated input #" + id + " has a negative tabindex", n);
            if (id.empty())
                fail("label-target", "generated input has no id", n);
            else if (!label_count.count(id))
                fail("label-target", "generated input #" + id + " has no label", n);
        }
    }

    void aria_state(NodeId n)
    {
        for (std::string_view a : {"aria-checked", "aria-expanded"}) {
            if (doc_.has_attr(n, a))
                fail("aria-state", std::string(a) + " on generated control", n);
        }
    }

    std::vector<NodeId> changed(const VisibilityMap& a, const VisibilityMap& b) const
    {
        std::vector<NodeId> out;
        for (auto n : elements_) {
            if (own_hidden(a, n) != own_hidden(b, n))
                out.push_back(n);
        }
        return out;
    }

    void checkboxes()
    {
        for (auto n : elements_) {
            if (!is_generated_input(doc_, n) || detail::to_lower(doc_.attr(n, "type").value_or("")) != "checkbox")
                continue;
            ++report_.checkboxes;
            std::string id(id_of(doc_, n));
            auto on = toggle(doc_, init_, id);
            auto flipped = eval(on);
            if (changed(base_, flipped).empty())
                fail("interactive", "toggling #" + id + " changes no element's visibility", n);
            auto back = toggle(doc_, on, id);
            if (back.checked != init_.checked)
                fail("interactive", "toggling #" + id + " twice does not restore the state", n);
        }
    }

    // Topmost non-label elements whose own visibility differs between any two states.
    std::vector<NodeId> panes(const std::vector<VisibilityMap>& maps) const
    {
        std::set<NodeId> varying;
        for (std::size_t i = 1; i < maps.size(); ++i) {
            for (auto n : changed(maps[0], maps[i]))
                varying.insert(n);
        }
        std::vector<NodeId> out;
        for (auto n : elements_) {
            if (!varying.count(n) || doc_.is_element(n, "label"))
                continue;
            bool nested = false;
            for (NodeId p = doc_.parent(n); p && doc_.is_element(p); p = doc_.parent(p)) {
                if (varying.count(p) && !doc_.is_element(p, "label")) {
                    nested = true;
                    break;
                }
            }
            if (!nested)
                out.push_back(n);
        }
        return out;
    }

    void exactly_one(const std::vector<VisibilityMap>& maps, const std::vector<std::string>& names, NodeId where,
                     const std::string& group)
    {
        auto ps = panes(maps);
        if (ps.empty()) {
            fail("interactive", group + ": no pane changes visibility across states", where);
            return;
        }
        for (std::size_t i = 0; i < maps.size(); ++i) {
            std::size_t shown = 0;
            for (auto p : ps)
                shown += own_hidden(maps[i], p) ? 0 : 1;
            if (shown != 1)
                fail("one-pane", group + ": state " + names[i] + " shows " + std::to_string(shown) + " of " +
                                     std::to_string(ps.size()) + " panes", where);
        }
    }

    void radio_groups()
    {
        std::map<std::string, std::vector<NodeId>> groups;
        std::vector<std::string> order;
        for (auto n : elements_) {
            if (!is_generated_input(doc_, n) || detail::to_lower(doc_.attr(n, "type").value_or("")) != "radio")
                continue;
            std::string name(doc_.attr(n, "name").value_or(""));
            if (!groups.count(name))
                order.push_back(name);
            groups[name].push_back(n);
        }
        for (const auto& name : order) {
            const auto& radios = groups[name];
            ++report_.radio_groups;
            std::size_t checked = 0;
            for (auto r : radios)
                checked += init_.checked.count(std::string(id_of(doc_, r)));
            if (checked != 1)
                fail("one-pane", "radio group " + name + " starts with " + std::to_string(checked) + " checked", radios.front());
            if (radios.size() < 2)
                continue;
            std::vector<VisibilityMap> maps;
            std::vector<std::string> names;
            for (auto r : radios) {
                std::string id(id_of(doc_, r));
                auto s = toggle(doc_, init_, id);
                std::size_t in_group = 0;
                for (auto q : radios)
                    in_group += s.checked.count(std::string(id_of(doc_, q)));
                if (in_group != 1)
                    fail("one-pane", "radio group " + name + " has " + std::to_string(in_group) + " checked after #" + id, r);
                maps.push_back(eval(s));
                names.push_back("#" + id);
            }
            exactly_one(maps, names, radios.front(), "radio group " + name);
        }
    }

    void fragment_groups()
    {
        std::set<std::string> linked;
        for (auto n : elements_) {
            if (auto h = doc_.attr(n, "href"); h && h->size() > 1 && h->front() == '#')
                linked.insert(std::string(h->substr(1)));
        }
        std::string css;
        for (const auto& r : rules_)
            css += r.selector.to_string() + "\n";
        for (auto n : elements_) {
            if (!doc_.has_attr(n, "data-jsrehab"))
                continue;
            std::vector<std::string> frags;
            for (auto c : doc_.element_children(n)) {
                std::string id(id_of(doc_, c));
                if (!id.empty() && linked.count(id))
                    frags.push_back(id);
            }
            bool targeted = std::any_of(frags.begin(), frags.end(), [&](const std::string& id) {
                return css.find("#" + id + ":target") != std::string::npos ||
                       css.find("[id=\"" + id + "\"]:target") != std::string::npos;
            });
            if (!targeted)
                continue;
            ++report_.fragment_groups;
            std::vector<VisibilityMap> maps{base_};
            std::vector<std::string> names{"(no fragment)"};
            for (const auto& f : frags) {
                maps.push_back(eval(navigate(init_, f)));
                names.push_back("#" + f);
            }
            exactly_one(maps, names, n, "fragment group");
        }
    }

    void tooltips()
    {
        for (auto n : elements_) {
            if (!doc_.has_attr(n, "data-jsrehab-tooltip"))
                continue;
            ++report_.tooltips;
            auto shows = [&](const VisibilityMap& m) {
                auto it = m.find(n);
                return it != m.end() && it->second.has_after_content();
            };
            if (shows(base_))
                fail("tooltip", "tooltip visible without interaction", n);
            if (!shows(eval(hover(doc_, init_, n))))
                fail("tooltip", "tooltip does not appear on hover", n);
            if (!shows(eval(focus(init_, n))))
                fail("tooltip", "tooltip does not appear on keyboard focus", n);
        }
    }

    const DomTree& doc_;
    const std::vector<CssRule>& rules_;
    std::vector<NodeId> elements_;
    std::unordered_map<std::string, std::vector<NodeId>> ids_;
    StateAssignment init_;
    VisibilityMap base_;
    CheckReport report_;
};

}  // namespace

CheckReport check(const DomTree& doc, const std::vector<CssRule>& rules)
{
    return Checker(doc, rules).run();
}

CheckReport check(const DomTree& doc)
{
    return check(doc, injected_rules(doc));
}

}  // namespace jsrehab
