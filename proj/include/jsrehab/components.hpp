#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "jsrehab/config.hpp"
#include "jsrehab/cssgen.hpp"
#include "jsrehab/detect.hpp"
#include "jsrehab/dom.hpp"

namespace jsrehab {

enum class MechanismType { CheckboxToggle, RadioGroup, UrlFragmentTarget, HoverFocus, StickyPosition, Unsupported };

struct StateMechanism {
    MechanismType type = MechanismType::Unsupported;
    std::string group;   // radio group name
    std::string reason;  // why a kind is unsupported
};

StateMechanism mechanism_for(ComponentKind kind, const RewriteConfig& config);
std::string_view mechanism_name(MechanismType type);

class TargetUnreachable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Warning {
    std::string kind;
    std::string reason;
    std::string path;  // CSS-like path of the node concerned
};

/// Hands out `jsrehab-<n>` ids, skipping values already used as ids in the document.
class IdAllocator {
public:
    explicit IdAllocator(const DomTree& doc);
    std::string next();
    int counter() const { return counter_; }

private:
    std::vector<std::string> taken_;
    int counter_ = 0;
};

struct PlanEntry {
    ComponentInstance instance;
    StateMechanism mechanism;
    // Ids of generated inputs: one checkbox, or one radio per pane/slide.
    std::vector<std::string> ids;
    // Id per target used in selectors (pre-existing or allocated); empty when
    // the target is referenced by class.
    std::vector<std::string> target_ids;
    // True where target_ids[i] was allocated and must be set on the target.
    std::vector<bool> assign_target_id;
};

struct RewritePlan {
    std::vector<PlanEntry> entries;
    int next_id = 0;
    std::vector<CssRule> rules;  // filled as entries are applied
    std::vector<Warning> warnings;
};

RewritePlan plan(const DomTree& doc, std::vector<ComponentInstance> instances, const RewriteConfig& config);

struct ApplyResult {
    std::size_t mutations = 0;
    std::vector<CssRule> rules;
};

/// Mutates `doc` for one plan entry. Throws TargetUnreachable before touching
/// the document when no sibling path from a generated input to the target exists.
ApplyResult apply_instance(const PlanEntry& entry, DomTree& doc, std::string_view attr_prefix);

/// Applies every entry, collecting rules into `p.rules` and demoting failures to warnings.
std::size_t apply_plan(RewritePlan& p, DomTree& doc, std::string_view attr_prefix);

std::string node_path(const DomTree& doc, NodeId node);

/// Accessible name of an element as seen by the lints: aria-label, text, or image alt.
bool has_accessible_text(const DomTree& doc, NodeId node);

}  // namespace jsrehab
