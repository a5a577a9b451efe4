#include "jsrehab/selector.hpp"

#include <charconv>

#include "strings.hpp"

namespace jsrehab {

namespace {

bool is_ident_start(char c)
{
    return detail::is_ascii_alpha(c) || c == '_' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_char(char c) { return is_ident_start(c) || detail::is_ascii_digit(c); }

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    std::vector<ComplexSelector> list()
    {
        std::vector<ComplexSelector> out;
        skip_ws();
        if (eof())
            fail("empty selector");
        for (;;) {
            out.push_back(complex());
            skip_ws();
            if (eof())
                break;
            if (peek() != ',')
                fail("unexpected character");
            ++i_;
            skip_ws();
        }
        return out;
    }

private:
    [[noreturn]] void fail(std::string_view what) const
    {
        throw SelectorUnsupported(std::string(what) + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
    }

    bool eof() const { return i_ >= s_.size(); }
    char peek(std::size_t ahead = 0) const { return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0'; }

    bool skip_ws()
    {
        std::size_t start = i_;
        while (!eof() && detail::is_ascii_whitespace(peek()))
            ++i_;
        return i_ > start;
    }

    std::string ident()
    {
        if (eof() || !is_ident_start(peek()) || (peek() == '-' && detail::is_ascii_digit(peek(1))))
            fail("expected identifier");
        std::size_t start = i_;
        while (!eof() && is_ident_char(peek()))
            ++i_;
        if (peek() == '\\')
            fail("escapes are not supported");
        return std::string(s_.substr(start, i_ - start));
    }

    std::string quoted()
    {
        char q = peek();
        ++i_;
        std::string out;
        while (!eof() && peek() != q) {
            if (peek() == '\\') {
                ++i_;
                if (eof())
                    break;
            } else if (peek() == '\n') {
                fail("newline in string");
            }
            out += peek();
            ++i_;
        }
        if (eof())
            fail("unterminated string");
        ++i_;
        return out;
    }

    ComplexSelector complex()
    {
        ComplexSelector sel;
        sel.compounds.push_back(compound(false, &sel.pseudo_element));
        for (;;) {
            bool ws = skip_ws();
            if (eof() || peek() == ',' || peek() == ')')
                break;
            Combinator comb = Combinator::Descendant;
            if (peek() == '>' || peek() == '~' || peek() == '+') {
                comb = peek() == '>' ? Combinator::Child : peek() == '~' ? Combinator::SubsequentSibling : Combinator::NextSibling;
                ++i_;
                skip_ws();
            } else if (!ws) {
                fail("unexpected character");
            }
            if (sel.pseudo_element != PseudoElement::None)
                fail("pseudo-element must be last");
            auto c = compound(false, &sel.pseudo_element);
            c.combinator = comb;
            sel.compounds.push_back(std::move(c));
        }
        return sel;
    }

    CompoundSelector compound(bool in_not, PseudoElement* pe)
    {
        CompoundSelector c;
        if (peek() == '*') {
            ++i_;
            c.simples.push_back({});
        } else if (!eof() && is_ident_start(peek())) {
            SimpleSelector t;
            t.type = SimpleSelector::Type::Tag;
            t.name = detail::to_lower(ident());
            c.simples.push_back(std::move(t));
        }
        for (;;) {
            if (eof())
                break;
            char ch = peek();
            if (ch == '#') {
                ++i_;
                SimpleSelector s;
                s.type = SimpleSelector::Type::Id;
                s.name = ident();
                c.simples.push_back(std::move(s));
            } else if (ch == '.') {
                ++i_;
                SimpleSelector s;
                s.type = SimpleSelector::Type::Class;
                s.name = ident();
                c.simples.push_back(std::move(s));
            } else if (ch == '[') {
                c.simples.push_back(attribute());
            } else if (ch == ':' && peek(1) == ':') {
                if (in_not || pe == nullptr)
                    fail("pseudo-element not allowed here");
                i_ += 2;
                auto name = detail::to_lower(ident());
                if (name == "after")
                    *pe = PseudoElement::After;
                else if (name == "before")
                    *pe = PseudoElement::Before;
                else
                    fail("unsupported pseudo-element");
                if (!eof() && !detail::is_ascii_whitespace(peek()) && peek() != ',' && peek() != ')')
                    fail("pseudo-element must be last");
                break;
            } else if (ch == ':') {
                ++i_;
                c.simples.push_back(pseudo_class(in_not));
            } else {
                break;
            }
        }
        if (c.simples.empty() && (pe == nullptr || *pe == PseudoElement::None))
            fail("expected selector");
        return c;
    }

    SimpleSelector attribute()
    {
        ++i_;
        skip_ws();
        SimpleSelector s;
        s.name = detail::to_lower(ident());
        skip_ws();
        if (peek() == ']') {
            ++i_;
            s.type = SimpleSelector::Type::AttrExists;
            return s;
        }
        if (peek() != '=')
            fail("unsupported attribute operator");
        ++i_;
        skip_ws();
        s.type = SimpleSelector::Type::AttrEquals;
        if (peek() == '"' || peek() == '\'')
            s.value = quoted();
        else
            s.value = ident();
        skip_ws();
        if (peek() == 'i' || peek() == 's' || peek() == 'I' || peek() == 'S')
            fail("attribute flags are not supported");
        if (peek() != ']')
            fail("expected ']'");
        ++i_;
        return s;
    }

    SimpleSelector pseudo_class(bool in_not)
    {
        SimpleSelector s;
        s.type = SimpleSelector::Type::Pseudo;
        auto name = detail::to_lower(ident());
        if (name == "checked")
            s.pseudo = PseudoClass::Checked;
        else if (name == "hover")
            s.pseudo = PseudoClass::Hover;
        else if (name == "focus")
            s.pseudo = PseudoClass::Focus;
        else if (name == "focus-within")
            s.pseudo = PseudoClass::FocusWithin;
        else if (name == "focus-visible")
            s.pseudo = PseudoClass::FocusVisible;
        else if (name == "target")
            s.pseudo = PseudoClass::Target;
        else if (name == "nth-child" && peek() == '(') {
            ++i_;
            skip_ws();
            std::size_t start = i_;
            while (!eof() && detail::is_ascii_digit(peek()))
                ++i_;
            int n = 0;
            auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + i_, n);
            if (i_ == start || ec != std::errc{} || n < 1)
                fail("only positive integer :nth-child() arguments are supported");
            skip_ws();
            if (peek() != ')')
                fail("expected ')'");
            ++i_;
            s.pseudo = PseudoClass::NthChild;
            s.nth = n;
        } else if (name == "not" && peek() == '(') {
            if (in_not)
                fail("nested :not() is not supported");
            ++i_;
            skip_ws();
            auto inner = compound(true, nullptr);
            skip_ws();
            if (peek() != ')')
                fail("expected ')'");
            ++i_;
            s.pseudo = PseudoClass::Not;
            s.negated = std::move(inner.simples);
        } else {
            fail("unsupported pseudo-class");
        }
        return s;
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

void print_simple(std::string& out, const SimpleSelector& s)
{
    using T = SimpleSelector::Type;
    switch (s.type) {
    case T::Universal:
        out += '*';
        break;
    case T::Tag:
        out += s.name;
        break;
    case T::Id:
        out += '#';
        out += s.name;
        break;
    case T::Class:
        out += '.';
        out += s.name;
        break;
    case T::AttrExists:
        out += '[';
        out += s.name;
        out += ']';
        break;
    case T::AttrEquals:
        out += '[';
        out += s.name;
        out += '=';
        if (is_css_identifier(s.value)) {
            out += s.value;
        } else {
            out += '"';
            for (char c : s.value) {
                if (c == '"' || c == '\\')
                    out += '\\';
                out += c;
            }
            out += '"';
        }
        out += ']';
        break;
    case T::Pseudo:
        switch (s.pseudo) {
        case PseudoClass::Checked:
            out += ":checked";
            break;
        case PseudoClass::Hover:
            out += ":hover";
            break;
        case PseudoClass::Focus:
            out += ":focus";
            break;
        case PseudoClass::FocusWithin:
            out += ":focus-within";
            break;
        case PseudoClass::FocusVisible:
            out += ":focus-visible";
            break;
        case PseudoClass::Target:
            out += ":target";
            break;
        case PseudoClass::NthChild:
            out += ":nth-child(" + std::to_string(s.nth) + ")";
            break;
        case PseudoClass::Not:
            out += ":not(";
            for (const auto& n : s.negated)
                print_simple(out, n);
            out += ')';
            break;
        }
        break;
    }
}

void add_specificity(Specificity& sp, const SimpleSelector& s)
{
    using T = SimpleSelector::Type;
    switch (s.type) {
    case T::Universal:
        break;
    case T::Tag:
        ++sp.types;
        break;
    case T::Id:
        ++sp.ids;
        break;
    case T::Class:
    case T::AttrExists:
    case T::AttrEquals:
        ++sp.classes;
        break;
    case T::Pseudo:
        if (s.pseudo == PseudoClass::Not) {
            for (const auto& n : s.negated)
                add_specificity(sp, n);
        } else {
            ++sp.classes;
        }
        break;
    }
}

NodeId parent_element(const DomTree& t, NodeId n)
{
    NodeId p = t.parent(n);
    return p && t.kind(p) == NodeKind::Element ? p : NodeId{};
}

bool match_simple(const DomTree& t, NodeId el, const SimpleSelector& s, const ElementState& st)
{
    using T = SimpleSelector::Type;
    switch (s.type) {
    case T::Universal:
        return true;
    case T::Tag:
        return t.tag(el) == s.name;
    case T::Id: {
        auto v = t.attr(el, "id");
        return v && *v == s.name;
    }
    case T::Class:
        return t.has_class(el, s.name);
    case T::AttrExists:
        return t.has_attr(el, s.name);
    case T::AttrEquals: {
        auto v = t.attr(el, s.name);
        return v && *v == s.value;
    }
    case T::Pseudo:
        switch (s.pseudo) {
        case PseudoClass::Checked:
            return st.checked(t, el);
        case PseudoClass::Hover:
            return st.hovered(t, el);
        case PseudoClass::Focus:
        case PseudoClass::FocusVisible:
            return st.focused(t, el);
        case PseudoClass::FocusWithin:
            return st.focus_within(t, el);
        case PseudoClass::Target:
            return st.targeted(t, el);
        case PseudoClass::NthChild: {
            int idx = 1;
            for (NodeId p = t.previous_element_sibling(el); p; p = t.previous_element_sibling(p))
                ++idx;
            return idx == s.nth;
        }
        case PseudoClass::Not:
            for (const auto& n : s.negated) {
                if (!match_simple(t, el, n, st))
                    return true;
            }
            return false;
        }
    }
    return false;
}

bool match_compound(const DomTree& t, NodeId el, const CompoundSelector& c, const ElementState& st)
{
    for (const auto& s : c.simples) {
        if (!match_simple(t, el, s, st))
            return false;
    }
    return true;
}

bool match_from(const DomTree& t, NodeId el, const ComplexSelector& sel, std::size_t idx, const ElementState& st)
{
    const auto& c = sel.compounds[idx];
    if (!match_compound(t, el, c, st))
        return false;
    if (idx == 0)
        return true;
    switch (c.combinator) {
    case Combinator::Child: {
        NodeId p = parent_element(t, el);
        return p && match_from(t, p, sel, idx - 1, st);
    }
    case Combinator::Descendant:
        for (NodeId p = parent_element(t, el); p; p = parent_element(t, p)) {
            if (match_from(t, p, sel, idx - 1, st))
                return true;
        }
        return false;
    case Combinator::NextSibling: {
        NodeId p = t.previous_element_sibling(el);
        return p && match_from(t, p, sel, idx - 1, st);
    }
    case Combinator::SubsequentSibling:
        for (NodeId p = t.previous_element_sibling(el); p; p = t.previous_element_sibling(p)) {
            if (match_from(t, p, sel, idx - 1, st))
                return true;
        }
        return false;
    case Combinator::None:
        break;
    }
    return false;
}

}  // namespace

bool is_css_identifier(std::string_view s)
{
    if (s.empty() || !is_ident_start(s[0]))
        return false;
    if (s[0] == '-' && (s.size() == 1 || detail::is_ascii_digit(s[1])))
        return false;
    for (char c : s) {
        if (!is_ident_char(c))
            return false;
    }
    return true;
}

Selector Selector::parse(std::string_view text)
{
    Selector sel;
    sel.list_ = Parser(text).list();
    return sel;
}

std::string to_string(const ComplexSelector& sel)
{
    std::string out;
    for (const auto& c : sel.compounds) {
        switch (c.combinator) {
        case Combinator::None:
            break;
        case Combinator::Descendant:
            out += ' ';
            break;
        case Combinator::Child:
            out += '>';
            break;
        case Combinator::NextSibling:
            out += '+';
            break;
        case Combinator::SubsequentSibling:
            out += '~';
            break;
        }
        for (const auto& s : c.simples)
            print_simple(out, s);
    }
    if (sel.pseudo_element == PseudoElement::After)
        out += "::after";
    else if (sel.pseudo_element == PseudoElement::Before)
        out += "::before";
    return out;
}

std::string Selector::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < list_.size(); ++i) {
        if (i)
            out += ',';
        out += jsrehab::to_string(list_[i]);
    }
    return out;
}

Specificity ComplexSelector::specificity() const
{
    Specificity sp;
    for (const auto& c : compounds) {
        for (const auto& s : c.simples)
            add_specificity(sp, s);
    }
    if (pseudo_element != PseudoElement::None)
        ++sp.types;
    return sp;
}

bool ElementState::checked(const DomTree& tree, NodeId el) const
{
    if (!tree.is_element(el, "input"))
        return tree.is_element(el, "option") && tree.has_attr(el, "selected");
    auto type = detail::to_lower(tree.attr(el, "type").value_or(""));
    return (type == "checkbox" || type == "radio") && tree.has_attr(el, "checked");
}

bool ElementState::focus_within(const DomTree& tree, NodeId el) const
{
    bool found = false;
    tree.walk(el, [&](NodeId n) {
        if (tree.kind(n) == NodeKind::Element && focused(tree, n))
            found = true;
        return !found;
    });
    return found;
}

bool StaticState::targeted(const DomTree& tree, NodeId el) const
{
    if (!fragment_ || fragment_->empty())
        return false;
    auto id = tree.attr(el, "id");
    return id && *id == *fragment_;
}

bool matches(const DomTree& tree, NodeId element, const ComplexSelector& sel, const ElementState& state)
{
    if (!tree.is_element(element) || sel.compounds.empty())
        return false;
    return match_from(tree, element, sel, sel.compounds.size() - 1, state);
}

bool matches(const DomTree& tree, NodeId element, const Selector& sel, const ElementState& state)
{
    for (const auto& c : sel.complexes()) {
        if (matches(tree, element, c, state))
            return true;
    }
    return false;
}

std::vector<NodeId> select(const DomTree& tree, const Selector& sel, std::optional<NodeId> scope, const ElementState& state)
{
    std::vector<NodeId> out;
    NodeId from = scope.value_or(tree.root());
    tree.walk(from, [&](NodeId n) {
        if (n != from && tree.kind(n) == NodeKind::Element && matches(tree, n, sel, state))
            out.push_back(n);
        return true;
    });
    return out;
}

std::vector<NodeId> select(const DomTree& tree, std::string_view sel, std::optional<NodeId> scope)
{
    return select(tree, Selector::parse(sel), scope, StaticState{});
}

}  // namespace jsrehab
