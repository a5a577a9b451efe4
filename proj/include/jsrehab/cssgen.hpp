#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jsrehab/dom.hpp"
#include "jsrehab/selector.hpp"

namespace jsrehab {

class CssParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Declaration {
    std::string property;
    std::string value;
    bool operator==(const Declaration&) const = default;
};

struct CssRule {
    Selector selector;
    std::vector<Declaration> declarations;
    // "base", "highlight", or the kind/id the rule was generated for. Not printed.
    std::string origin;

    /// Minified `sel{prop:val;prop:val}`.
    std::string to_string() const;
    bool operator==(const CssRule& o) const { return selector == o.selector && declarations == o.declarations; }
};

CssRule make_rule(std::string_view selector, std::vector<Declaration> decls, std::string origin = {});

/// Utility rules shared by every rewritten page.
std::vector<CssRule> base_stylesheet();
CssRule highlight_rule();

std::string print_stylesheet(const std::vector<CssRule>& rules);
std::vector<CssRule> parse_stylesheet(std::string_view css);

/// Marker value of the generated `<style data-jsrehab="styles">` element.
inline constexpr std::string_view kStyleMarker = "styles";

NodeId find_injected_style(const DomTree& doc);

/// Replaces (or creates) the generated style element at the end of <head>
/// with base rules, then `rules` in order, then the highlight rule if asked.
/// Duplicate rules are emitted once.
void inject_styles(DomTree& doc, const std::vector<CssRule>& rules, bool highlight = false);

}  // namespace jsrehab
