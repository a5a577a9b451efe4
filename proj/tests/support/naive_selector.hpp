#pragma once

// Brute-force selector evaluation used as a test oracle. Candidate sets are
// expanded left to right over all element pairs; nothing here calls into the
// library matcher.

#include <algorithm>
#include <array>
#include <functional>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jsrehab/dom.hpp"
#include "jsrehab/selector.hpp"

namespace naive {

using namespace jsrehab;

struct State {
    std::set<std::string> checked;  // ids of checked inputs
    std::set<std::uint32_t> hovered;
    std::optional<std::uint32_t> focused;
    std::string fragment;
    bool dynamic = false;  // false: no pseudo-class state is allowed
};

inline bool has_attr_value(const DomTree& t, NodeId e, std::string_view name, std::string_view v)
{
    for (const auto& a : t.attributes(e)) {
        if (a.name == name)
            return a.value == v;
    }
    return false;
}

inline bool simple(const DomTree& t, NodeId e, const SimpleSelector& s, const State& st)
{
    using T = SimpleSelector::Type;
    switch (s.type) {
    case T::Universal:
        return true;
    case T::Tag:
        return t.tag(e) == s.name;
    case T::Id:
        return has_attr_value(t, e, "id", s.name);
    case T::Class: {
        std::string padded = " " + std::string(t.attr(e, "class").value_or("")) + " ";
        for (auto& c : padded)
            if (c == '\t' || c == '\n' || c == '\r' || c == '\f')
                c = ' ';
        return padded.find(" " + s.name + " ") != std::string::npos;
    }
    case T::AttrExists:
        return std::any_of(t.attributes(e).begin(), t.attributes(e).end(), [&](const Attribute& a) { return a.name == s.name; });
    case T::AttrEquals:
        return has_attr_value(t, e, s.name, s.value);
    case T::Pseudo:
        switch (s.pseudo) {
        case PseudoClass::NthChild: {
            auto sibs = t.element_children(t.parent(e));
            return static_cast<int>(std::find(sibs.begin(), sibs.end(), e) - sibs.begin()) + 1 == s.nth;
        }
        case PseudoClass::Not:
            return !std::all_of(s.negated.begin(), s.negated.end(), [&](const auto& n) { return simple(t, e, n, st); });
        case PseudoClass::Checked: {
            if (!st.dynamic)
                return t.tag(e) == "input" && t.has_attr(e, "checked");
            auto id = t.attr(e, "id");
            return t.tag(e) == "input" && id && st.checked.count(std::string(*id));
        }
        case PseudoClass::Hover:
            return st.hovered.count(e.value) > 0;
        case PseudoClass::Focus:
        case PseudoClass::FocusVisible:
            return st.focused && *st.focused == e.value;
        case PseudoClass::FocusWithin: {
            if (!st.focused)
                return false;
            for (NodeId n{*st.focused}; n && t.is_element(n); n = t.parent(n))
                if (n == e)
                    return true;
            return false;
        }
        case PseudoClass::Target: {
            auto id = t.attr(e, "id");
            return !st.fragment.empty() && id && *id == st.fragment;
        }
        }
        return false;
    }
    return false;
}

inline bool related(const DomTree& t, NodeId left, NodeId right, Combinator c)
{
    switch (c) {
    case Combinator::Child:
        return t.parent(right) == left;
    case Combinator::Descendant:
        return left != right && t.is_ancestor_of(left, right);
    case Combinator::NextSibling:
    case Combinator::SubsequentSibling: {
        if (t.parent(left) != t.parent(right))
            return false;
        auto sibs = t.element_children(t.parent(right));
        auto li = std::find(sibs.begin(), sibs.end(), left) - sibs.begin();
        auto ri = std::find(sibs.begin(), sibs.end(), right) - sibs.begin();
        return c == Combinator::NextSibling ? ri == li + 1 : li < ri;
    }
    case Combinator::None:
        break;
    }
    return false;
}

inline std::vector<NodeId> select_complex(const DomTree& t, const ComplexSelector& cx, const State& st = {})
{
    auto all = t.elements_in_order();
    std::vector<NodeId> current;
    for (std::size_t k = 0; k < cx.compounds.size(); ++k) {
        const auto& comp = cx.compounds[k];
        std::vector<NodeId> next;
        for (auto e : all) {
            bool ok = std::all_of(comp.simples.begin(), comp.simples.end(), [&](const auto& s) { return simple(t, e, s, st); });
            if (!ok)
                continue;
            if (k == 0 || std::any_of(current.begin(), current.end(), [&](NodeId l) { return related(t, l, e, comp.combinator); }))
                next.push_back(e);
        }
        current = std::move(next);
    }
    return current;
}

inline std::vector<NodeId> select(const DomTree& t, const Selector& sel, const State& st = {})
{
    std::set<std::uint32_t> hit;
    for (const auto& cx : sel.complexes())
        for (auto e : select_complex(t, cx, st))
            hit.insert(e.value);
    std::vector<NodeId> out;
    for (auto e : t.elements_in_order())
        if (hit.count(e.value))
            out.push_back(e);
    return out;
}

// (ids, classes/attributes/pseudo-classes, types) counted directly from the parse.
inline std::array<int, 3> specificity(const ComplexSelector& cx)
{
    std::array<int, 3> s{0, 0, 0};
    std::function<void(const SimpleSelector&)> count = [&](const SimpleSelector& x) {
        using T = SimpleSelector::Type;
        if (x.type == T::Id)
            ++s[0];
        else if (x.type == T::Class || x.type == T::AttrExists || x.type == T::AttrEquals)
            ++s[1];
        else if (x.type == T::Tag)
            ++s[2];
        else if (x.type == T::Pseudo && x.pseudo == PseudoClass::Not)
            for (const auto& n : x.negated)
                count(n);
        else if (x.type == T::Pseudo)
            ++s[1];
    };
    for (const auto& c : cx.compounds)
        for (const auto& x : c.simples)
            count(x);
    if (cx.pseudo_element != PseudoElement::None)
        ++s[2];
    return s;
}

}  // namespace naive
