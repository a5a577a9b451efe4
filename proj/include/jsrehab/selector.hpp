#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jsrehab/dom.hpp"

namespace jsrehab {

/// Raised for selector syntax outside the supported subset.
class SelectorUnsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PseudoClass { Checked, Hover, Focus, FocusWithin, FocusVisible, Target, NthChild, Not };
enum class PseudoElement { None, Before, After };
enum class Combinator { None, Descendant, Child, NextSibling, SubsequentSibling };

struct SimpleSelector {
    enum class Type { Universal, Tag, Id, Class, AttrExists, AttrEquals, Pseudo };
    Type type = Type::Universal;
    std::string name;
    std::string value;
    PseudoClass pseudo = PseudoClass::Checked;
    int nth = 0;
    std::vector<SimpleSelector> negated;  // argument of :not()

    bool operator==(const SimpleSelector&) const = default;
};

struct CompoundSelector {
    // How this compound relates to the one on its left; None for the first.
    Combinator combinator = Combinator::None;
    std::vector<SimpleSelector> simples;

    bool operator==(const CompoundSelector&) const = default;
};

struct Specificity {
    int ids = 0;
    int classes = 0;
    int types = 0;

    auto operator<=>(const Specificity&) const = default;
};

struct ComplexSelector {
    std::vector<CompoundSelector> compounds;
    PseudoElement pseudo_element = PseudoElement::None;

    Specificity specificity() const;
    bool operator==(const ComplexSelector&) const = default;
};

/// Comma-separated selector list over the closed grammar: type, `*`, `.class`,
/// `#id`, `[attr]`, `[attr=value]`, `:checked`, `:hover`, `:focus`,
/// `:focus-within`, `:focus-visible`, `:target`, `:nth-child(n)`, `:not(compound)`,
/// a trailing `::before`/`::after`, and the four combinators.
class Selector {
public:
    Selector() = default;
    static Selector parse(std::string_view text);

    const std::vector<ComplexSelector>& complexes() const { return list_; }
    std::vector<ComplexSelector>& complexes() { return list_; }
    std::string to_string() const;
    bool operator==(const Selector&) const = default;

private:
    std::vector<ComplexSelector> list_;
};

std::string to_string(const ComplexSelector& sel);

/// Supplies dynamic pseudo-class state. The base implementation is the static
/// document view: `:checked` reads the attribute, nothing is hovered or focused.
class ElementState {
public:
    virtual ~ElementState() = default;
    virtual bool checked(const DomTree& tree, NodeId el) const;
    virtual bool hovered(const DomTree&, NodeId) const { return false; }
    virtual bool focused(const DomTree&, NodeId) const { return false; }
    virtual bool focus_within(const DomTree& tree, NodeId el) const;
    virtual bool targeted(const DomTree&, NodeId) const { return false; }
};

/// Static view plus an optional URL fragment for `:target`.
class StaticState : public ElementState {
public:
    explicit StaticState(std::optional<std::string> fragment = std::nullopt) : fragment_(std::move(fragment)) {}
    bool targeted(const DomTree& tree, NodeId el) const override;

private:
    std::optional<std::string> fragment_;
};

bool matches(const DomTree& tree, NodeId element, const ComplexSelector& sel, const ElementState& state);
bool matches(const DomTree& tree, NodeId element, const Selector& sel, const ElementState& state);

/// Document-order, duplicate-free list of elements matching `sel`, restricted
/// to descendants of `scope` when given.
std::vector<NodeId> select(const DomTree& tree, const Selector& sel, std::optional<NodeId> scope = std::nullopt,
                           const ElementState& state = StaticState{});
std::vector<NodeId> select(const DomTree& tree, std::string_view sel, std::optional<NodeId> scope = std::nullopt);

bool is_css_identifier(std::string_view s);

}  // namespace jsrehab
