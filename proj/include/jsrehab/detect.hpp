#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsrehab/dom.hpp"

namespace jsrehab {

enum class ComponentKind {
    Accordion,
    Affix,
    Alert,
    Carousel,
    Collapse,
    Dropdown,
    Modal,
    NavsTabs,
    Offcanvas,
    Popover,
    Scrollspy,
    Toast,
    Tooltip,
    Typeahead,
};

inline constexpr std::array<ComponentKind, 14> kAllComponentKinds = {
    ComponentKind::Accordion, ComponentKind::Affix,     ComponentKind::Alert,   ComponentKind::Carousel,
    ComponentKind::Collapse,  ComponentKind::Dropdown,  ComponentKind::Modal,   ComponentKind::NavsTabs,
    ComponentKind::Offcanvas, ComponentKind::Popover,   ComponentKind::Scrollspy, ComponentKind::Toast,
    ComponentKind::Tooltip,   ComponentKind::Typeahead,
};

/// Stable lowercase name used in markup markers, stats and JSON ("navs-tabs", ...).
std::string_view kind_name(ComponentKind kind);
std::optional<ComponentKind> kind_from_name(std::string_view name);

enum class EvidenceMethod { ScriptUrl, BannerComment, MarkupHeuristic };
std::string_view method_name(EvidenceMethod m);

struct Evidence {
    EvidenceMethod method;
    std::string detail;
};

struct BootstrapProfile {
    bool detected = false;
    std::optional<int> major;
    std::optional<std::string> full_version;
    std::string attr_prefix = "data-";
    std::vector<Evidence> evidence;
};

/// Script bodies keyed by URL, as fetched by the caller.
using ScriptBodies = std::map<std::string, std::string>;

BootstrapProfile detect_bootstrap(const DomTree& doc, const ScriptBodies* script_bodies = nullptr);

enum class TriggerRole {
    Toggle,   // opens/closes or selects the target
    Dismiss,  // closes the target (modal close button, alert close)
    Prev,     // carousel controls
    Next,
};

struct Trigger {
    NodeId node;
    TriggerRole role = TriggerRole::Toggle;
    // Index into ComponentInstance::targets this trigger selects; -1 when it
    // applies to the instance as a whole.
    int target = -1;
};

struct ComponentInstance {
    ComponentKind kind;
    std::vector<Trigger> triggers;
    std::vector<NodeId> targets;
    // Carousel element, tab list, accordion root; unset otherwise.
    NodeId container;
    std::optional<std::string> group_key;
    bool initially_active = false;
    // Index of the initially shown pane for grouped kinds.
    std::optional<std::size_t> active_index;
    std::vector<std::string> warnings;

    std::vector<NodeId> trigger_nodes() const;
};

/// Enumerates component occurrences in document order of their first trigger.
std::vector<ComponentInstance> scan_components(const DomTree& doc, const BootstrapProfile& profile);

using KindHistogram = std::map<ComponentKind, std::size_t>;

/// Number of pages containing at least one instance of each kind (every kind present, zero if absent).
KindHistogram component_stats(const std::vector<std::vector<ComponentInstance>>& pages);
KindHistogram component_stats(const std::vector<std::vector<ComponentKind>>& pages);
std::map<ComponentKind, double> component_fractions(const KindHistogram& hist, std::size_t total_pages);

}  // namespace jsrehab
