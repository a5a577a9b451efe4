#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jsrehab/cssgen.hpp"
#include "jsrehab/dom.hpp"
#include "jsrehab/selector.hpp"

namespace jsrehab {

class UnknownControl : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StateAssignment {
    std::set<std::string> checked;
    std::set<NodeId> hovered;  // closed under ancestors
    std::optional<NodeId> focused;
    std::optional<std::string> fragment;
};

/// Checkboxes and radios carrying a `checked` attribute, nothing hovered or focused.
StateAssignment initial_state(const DomTree& doc);

/// Checkbox: flip. Radio: check and clear the rest of its name group.
StateAssignment toggle(const DomTree& doc, StateAssignment state, std::string_view control_id);
/// Points at `node`; the hovered set becomes the node and its ancestors.
StateAssignment hover(const DomTree& doc, StateAssignment state, NodeId node);
StateAssignment focus(StateAssignment state, NodeId node);
StateAssignment navigate(StateAssignment state, std::optional<std::string> fragment);

/// ElementState view of an assignment, usable with `matches`/`select`.
class SimulatedState : public ElementState {
public:
    explicit SimulatedState(const StateAssignment& s) : s_(s) {}
    bool checked(const DomTree& tree, NodeId el) const override;
    bool hovered(const DomTree&, NodeId el) const override { return s_.hovered.count(el) > 0; }
    bool focused(const DomTree&, NodeId el) const override { return s_.focused && *s_.focused == el; }
    bool targeted(const DomTree& tree, NodeId el) const override;

private:
    const StateAssignment& s_;
};

struct ComputedStyle {
    std::map<std::string, std::string> properties;
    // Declarations that won on the element's ::after box.
    std::map<std::string, std::string> after;

    std::string display() const;     // "" when no rule set it
    std::string visibility() const;  // "" when no rule set it
    bool hidden() const { return display() == "none" || visibility() == "hidden"; }
    bool has_after_content() const;
};

using VisibilityMap = std::unordered_map<NodeId, ComputedStyle>;

/// Cascades `rules` over every element: higher specificity wins, later rule wins ties.
VisibilityMap evaluate(const DomTree& doc, const std::vector<CssRule>& rules, const StateAssignment& state);

/// True when the element and all its ancestors are neither display:none nor visibility:hidden.
bool rendered(const DomTree& doc, const VisibilityMap& map, NodeId node);

/// Rules from the injected `style[data-jsrehab]` element; empty when absent.
std::vector<CssRule> injected_rules(const DomTree& doc);

struct CheckFailure {
    std::string assertion;  // "interactive", "one-pane", "tooltip", "focusable", "label-target", "aria-state", "label-text"
    std::string detail;
    std::string path;
};

struct CheckReport {
    std::size_t checkboxes = 0;
    std::size_t radio_groups = 0;
    std::size_t fragment_groups = 0;
    std::size_t tooltips = 0;
    std::size_t states_evaluated = 0;
    std::vector<CheckFailure> failures;

    bool ok() const { return failures.empty(); }
};

/// Interactivity assertions and accessibility lints over a rewritten document.
CheckReport check(const DomTree& doc, const std::vector<CssRule>& rules);
CheckReport check(const DomTree& doc);

}  // namespace jsrehab
