#include "jsrehab/cssgen.hpp"

#include <unordered_set>

#include "strings.hpp"

namespace jsrehab {

namespace {

// Index of the next unquoted, unnested occurrence of any of `stops`.
std::size_t scan_to(std::string_view s, std::size_t i, std::string_view stops)
{
    char quote = 0;
    int depth = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (quote) {
            if (c == '\\')
                ++i;
            else if (c == quote)
                quote = 0;
            continue;
        }
        if (c == '"' || c == '\'')
            quote = c;
        else if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (depth <= 0 && stops.find(c) != std::string_view::npos)
            return i;
    }
    return std::string_view::npos;
}

}  // namespace

std::string CssRule::to_string() const
{
    std::string out = selector.to_string();
    out += '{';
    for (std::size_t i = 0; i < declarations.size(); ++i) {
        if (i)
            out += ';';
        out += declarations[i].property;
        out += ':';
        out += declarations[i].value;
    }
    out += '}';
    return out;
}

CssRule make_rule(std::string_view selector, std::vector<Declaration> decls, std::string origin)
{
    return CssRule{Selector::parse(selector), std::move(decls), std::move(origin)};
}

std::vector<CssRule> base_stylesheet()
{
    return {
        make_rule(".jsrehab-visually-hidden",
                  {{"position", "absolute"},
                   {"width", "1px"},
                   {"height", "1px"},
                   {"margin", "-1px"},
                   {"padding", "0"},
                   {"border", "0"},
                   {"overflow", "hidden"},
                   {"clip", "rect(0,0,0,0)"},
                   {"white-space", "nowrap"}},
                  "base"),
        make_rule(".jsrehab-backdrop",
                  {{"position", "fixed"},
                   {"top", "0"},
                   {"right", "0"},
                   {"bottom", "0"},
                   {"left", "0"},
                   {"background", "rgba(0,0,0,.5)"},
                   {"cursor", "pointer"}},
                  "base"),
        make_rule(".jsrehab-visually-hidden:focus-visible+label",
                  {{"outline", "2px solid #0d6efd"}, {"outline-offset", "2px"}}, "base"),
    };
}

CssRule highlight_rule()
{
    return make_rule("[data-jsrehab]", {{"outline", "2px dashed #e83e8c"}, {"outline-offset", "-2px"}}, "highlight");
}

std::string print_stylesheet(const std::vector<CssRule>& rules)
{
    std::string out;
    for (const auto& r : rules)
        out += r.to_string();
    return out;
}

std::vector<CssRule> parse_stylesheet(std::string_view css)
{
    std::vector<CssRule> out;
    std::size_t i = 0;
    while (true) {
        while (i < css.size() && detail::is_ascii_whitespace(css[i]))
            ++i;
        if (i >= css.size())
            break;
        auto open = scan_to(css, i, "{}");
        if (open == std::string_view::npos || css[open] != '{')
            throw CssParseError("expected '{' after selector at offset " + std::to_string(i));
        CssRule rule;
        rule.selector = Selector::parse(detail::trim(css.substr(i, open - i)));
        auto close = scan_to(css, open + 1, "{}");
        if (close == std::string_view::npos || css[close] != '}')
            throw CssParseError("unterminated declaration block at offset " + std::to_string(open));
        std::size_t j = open + 1;
        while (j < close) {
            auto end = scan_to(css, j, ";}");
            if (end == std::string_view::npos || end > close)
                end = close;
            auto decl = detail::trim(css.substr(j, end - j));
            if (!decl.empty()) {
                auto colon = decl.find(':');
                if (colon == std::string_view::npos)
                    throw CssParseError("declaration without ':' near '" + std::string(decl) + "'");
                rule.declarations.push_back({detail::to_lower(detail::trim(decl.substr(0, colon))),
                                             std::string(detail::trim(decl.substr(colon + 1)))});
            }
            j = end + 1;
        }
        out.push_back(std::move(rule));
        i = close + 1;
    }
    return out;
}

NodeId find_injected_style(const DomTree& doc)
{
    NodeId found;
    doc.walk(doc.root(), [&](NodeId n) {
        if (found)
            return false;
        if (doc.is_element(n, "style") && doc.attr(n, "data-jsrehab") == kStyleMarker)
            found = n;
        return !found;
    });
    return found;
}

void inject_styles(DomTree& doc, const std::vector<CssRule>& rules, bool highlight)
{
    std::vector<CssRule> all = base_stylesheet();
    all.insert(all.end(), rules.begin(), rules.end());
    if (highlight)
        all.push_back(highlight_rule());

    std::string text;
    std::unordered_set<std::string> seen;
    for (const auto& r : all) {
        auto s = r.to_string();
        if (seen.insert(s).second)
            text += s;
    }

    NodeId head = doc.head();
    if (!head) {
        NodeId html = doc.document_element();
        if (!html) {
            html = doc.create_element("html");
            doc.append_child(doc.root(), html);
        }
        head = doc.create_element("head");
        doc.insert_first_child(head, html);
    }
    if (NodeId old = find_injected_style(doc))
        doc.destroy(old);
    NodeId style = doc.create_element("style", {{"data-jsrehab", std::string(kStyleMarker)}});
    doc.append_child(style, doc.create_text(std::move(text)));
    doc.append_child(head, style);
}

}  // namespace jsrehab
