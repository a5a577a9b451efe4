#include <array>
#include <initializer_list>

#include "jsrehab/dom.hpp"
#include "strings.hpp"

namespace jsrehab {

namespace {

using detail::is_ascii_alpha;
using detail::is_ascii_whitespace;

bool one_of(std::string_view tag, std::initializer_list<std::string_view> set)
{
    for (auto s : set) {
        if (tag == s)
            return true;
    }
    return false;
}

bool is_heading(std::string_view tag)
{
    return tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6';
}

// Start tags that close an open <p> in button scope.
bool closes_paragraph(std::string_view tag)
{
    return is_heading(tag) ||
           one_of(tag, {"address", "article", "aside", "blockquote", "center", "details", "dialog", "dir", "div", "dl",
                        "fieldset", "figcaption", "figure", "footer", "form", "header", "hgroup", "main", "menu", "nav",
                        "ol", "p", "search", "section", "summary", "ul", "pre", "listing", "table", "hr", "xmp",
                        "plaintext", "li", "dd", "dt"});
}

bool is_head_content(std::string_view tag)
{
    return one_of(tag, {"base", "basefont", "bgsound", "link", "meta", "noframes", "script", "style", "template",
                        "title", "noscript"});
}

bool is_scope_boundary(const DomTree& t, NodeId n)
{
    const auto& tag = t.tag(n);
    if (t.is_foreign(n))
        return one_of(tag, {"foreignobject", "desc", "title", "mi", "mo", "mn", "ms", "mtext", "annotation-xml"});
    return one_of(tag, {"applet", "caption", "html", "table", "td", "th", "marquee", "object", "template"});
}

// End tags handled by "pop to element if in scope".
bool is_block_end(std::string_view tag)
{
    return one_of(tag, {"address", "article", "aside", "blockquote", "button", "center", "details", "dialog", "dir",
                        "div", "dl", "fieldset", "figcaption", "figure", "footer", "header", "hgroup", "listing",
                        "main", "menu", "nav", "ol", "pre", "search", "section", "summary", "ul", "form", "select",
                        "option", "optgroup", "label", "noscript", "template", "object", "applet", "marquee"});
}

bool is_formatting(std::string_view tag)
{
    return one_of(tag, {"a", "b", "big", "code", "em", "font", "i", "nobr", "s", "small", "strike", "strong", "tt", "u"});
}

bool is_special(std::string_view tag)
{
    return is_heading(tag) ||
           one_of(tag, {"address", "applet", "area", "article", "aside", "base", "basefont", "bgsound", "blockquote",
                        "body", "br", "button", "caption", "center", "col", "colgroup", "dd", "details", "dir", "div",
                        "dl", "dt", "embed", "fieldset", "figcaption", "figure", "footer", "form", "frame", "frameset",
                        "head", "header", "hgroup", "hr", "html", "iframe", "img", "input", "keygen", "li", "link",
                        "listing", "main", "marquee", "menu", "meta", "nav", "noembed", "noframes", "noscript", "object",
                        "ol", "p", "param", "plaintext", "pre", "script", "search", "section", "select", "source",
                        "style", "summary", "table", "tbody", "td", "template", "textarea", "tfoot", "th", "thead",
                        "title", "tr", "track", "ul", "wbr", "xmp"});
}

// HTML start tags that break out of svg/math content.
bool breaks_foreign(std::string_view tag)
{
    return is_heading(tag) ||
           one_of(tag, {"b", "big", "blockquote", "body", "br", "center", "code", "dd", "div", "dl", "dt", "em",
                        "embed", "head", "hr", "i", "img", "li", "listing", "menu", "meta", "nobr", "ol", "p", "pre",
                        "ruby", "s", "small", "span", "strong", "strike", "sub", "sup", "table", "tt", "u", "ul",
                        "var"});
}

enum class TextMode { Data, RawText, RcData };

struct Token {
    enum class Type { StartTag, EndTag, Text, Comment, Doctype } type;
    std::string name;
    std::vector<Attribute> attrs;
    bool self_closing = false;
    std::string data;
};

class TreeBuilder {
public:
    TreeBuilder(DomTree& tree, NodeId fragment_root) : t_(tree), fragment_root_(fragment_root)
    {
        if (fragment_root_) {
            stack_.push_back(fragment_root_);
            phase_ = Phase::InBody;
        }
    }

    TextMode text_mode() const { return text_mode_; }
    const std::string& raw_end_tag() const { return raw_tag_; }
    bool in_foreign() const
    {
        if (stack_.empty() || !t_.is_foreign(current()))
            return false;
        return !one_of(t_.tag(current()), {"foreignobject", "desc", "title"});
    }

    void process(Token&& tok)
    {
        switch (tok.type) {
        case Token::Type::Doctype:
            on_doctype(std::move(tok));
            break;
        case Token::Type::Comment:
            on_comment(std::move(tok));
            break;
        case Token::Type::Text:
            on_text(std::move(tok.data));
            break;
        case Token::Type::StartTag:
            on_start(std::move(tok));
            break;
        case Token::Type::EndTag:
            on_end(tok.name);
            break;
        }
    }

    void finish()
    {
        if (!fragment_root_) {
            ensure_html();
            ensure_head();
            ensure_body();
        }
    }

private:
    enum class Phase { BeforeHtml, BeforeHead, InHead, AfterHead, InBody, AfterBody, AfterAfterBody };

    NodeId current() const { return stack_.back(); }

    void on_doctype(Token&& tok)
    {
        if (fragment_root_ || phase_ != Phase::BeforeHtml || html_)
            return;
        t_.append_child(t_.root(), t_.create_doctype(std::move(tok.data)));
    }

    void on_comment(Token&& tok)
    {
        NodeId target;
        if (fragment_root_)
            target = current();
        else if (phase_ == Phase::BeforeHtml || phase_ == Phase::AfterAfterBody)
            target = t_.root();
        else if (phase_ == Phase::AfterBody)
            target = html_;
        else
            target = current();
        t_.append_child(target, t_.create_comment(std::move(tok.data)));
    }

    void append_text(NodeId parent, std::string text)
    {
        if (text.empty())
            return;
        auto kids = t_.children(parent);
        if (!kids.empty() && t_.kind(kids.back()) == NodeKind::Text) {
            std::string merged = t_.data(kids.back()) + text;
            t_.set_data(kids.back(), std::move(merged));
            return;
        }
        t_.append_child(parent, t_.create_text(std::move(text)));
    }

    void on_text(std::string text)
    {
        if (drop_leading_newline_) {
            drop_leading_newline_ = false;
            if (!text.empty() && text.front() == '\n')
                text.erase(0, 1);
        }
        if (text.empty())
            return;
        if (fragment_root_ || (phase_ == Phase::InHead && current() != head_)) {
            append_text(current(), std::move(text));
            return;
        }
        if (phase_ < Phase::InBody) {
            std::size_t ws = 0;
            while (ws < text.size() && is_ascii_whitespace(text[ws]))
                ++ws;
            std::string lead = text.substr(0, ws);
            std::string rest = text.substr(ws);
            if (!lead.empty()) {
                if (phase_ == Phase::InHead)
                    append_text(current(), std::move(lead));
                else if (phase_ == Phase::AfterHead)
                    append_text(html_, std::move(lead));
                // whitespace before <head> is dropped
            }
            if (rest.empty())
                return;
            start_body_implicitly();
            append_text(current(), std::move(rest));
            return;
        }
        if (phase_ == Phase::AfterBody || phase_ == Phase::AfterAfterBody)
            phase_ = Phase::InBody;
        append_text(current(), std::move(text));
    }

    void ensure_html()
    {
        if (html_)
            return;
        html_ = t_.create_element("html");
        t_.append_child(t_.root(), html_);
        stack_.push_back(html_);
        if (phase_ == Phase::BeforeHtml)
            phase_ = Phase::BeforeHead;
    }

    void ensure_head()
    {
        ensure_html();
        if (head_)
            return;
        head_ = t_.create_element("head");
        NodeId first_body = body_;
        if (first_body)
            t_.insert_before(head_, first_body);
        else
            t_.append_child(html_, head_);
    }

    void ensure_body()
    {
        ensure_html();
        if (body_)
            return;
        body_ = t_.create_element("body");
        t_.append_child(html_, body_);
    }

    void close_head_if_open()
    {
        if (phase_ == Phase::InHead) {
            pop_until(head_);
            phase_ = Phase::AfterHead;
        }
    }

    void start_body_implicitly()
    {
        ensure_head();
        close_head_if_open();
        ensure_body();
        if (std::find(stack_.begin(), stack_.end(), body_) == stack_.end())
            stack_.push_back(body_);
        phase_ = Phase::InBody;
    }

    void merge_attributes(NodeId el, const std::vector<Attribute>& attrs)
    {
        for (const auto& a : attrs) {
            if (!t_.has_attr(el, a.name))
                t_.set_attr(el, a.name, a.value);
        }
    }

    void pop_until(NodeId node)
    {
        while (!stack_.empty()) {
            NodeId top = stack_.back();
            stack_.pop_back();
            if (top == node)
                break;
        }
        if (stack_.empty() && fragment_root_)
            stack_.push_back(fragment_root_);
    }

    // Nearest open element with this tag, stopping at scope boundaries.
    NodeId in_scope(std::string_view tag, std::initializer_list<std::string_view> extra_boundaries = {}) const
    {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            NodeId n = *it;
            if (n == fragment_root_)
                return {};
            if (t_.tag(n) == tag && !t_.is_foreign(n))
                return n;
            if (is_scope_boundary(t_, n) || (!t_.is_foreign(n) && one_of(t_.tag(n), extra_boundaries)))
                return {};
        }
        return {};
    }

    NodeId in_table_scope(std::string_view tag) const
    {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            NodeId n = *it;
            if (n == fragment_root_)
                return {};
            if (t_.tag(n) == tag)
                return n;
            if (one_of(t_.tag(n), {"html", "table", "template"}))
                return {};
        }
        return {};
    }

    void close_p_in_button_scope()
    {
        if (NodeId p = in_scope("p", {"button"}))
            pop_until(p);
    }

    void insert_element(Token& tok, bool foreign)
    {
        NodeId el = t_.create_element(std::move(tok.name), std::move(tok.attrs));
        t_.set_foreign(el, foreign);
        t_.append_child(current(), el);
        const auto& tag = t_.tag(el);
        bool is_void = foreign ? tok.self_closing : is_void_element(tag);
        if (is_void)
            return;
        stack_.push_back(el);
        if (!foreign) {
            if (one_of(tag, {"script", "style", "xmp", "iframe", "noembed", "noframes"})) {
                text_mode_ = TextMode::RawText;
                raw_tag_ = tag;
            } else if (tag == "textarea" || tag == "title") {
                text_mode_ = TextMode::RcData;
                raw_tag_ = tag;
            }
            if (one_of(tag, {"pre", "listing", "textarea"}))
                drop_leading_newline_ = true;
        }
    }

    void on_start(Token&& tok)
    {
        drop_leading_newline_ = false;
        const std::string& name = tok.name;
        if (fragment_root_) {
            if (one_of(name, {"html", "head", "body"}))
                return;
            in_body_start(tok);
            return;
        }
        if (name == "html") {
            if (html_) {
                merge_attributes(html_, tok.attrs);
                return;
            }
            html_ = t_.create_element("html", std::move(tok.attrs));
            t_.append_child(t_.root(), html_);
            stack_.push_back(html_);
            phase_ = Phase::BeforeHead;
            return;
        }
        if (phase_ < Phase::InBody) {
            if (name == "head") {
                if (head_)
                    return;
                ensure_html();
                head_ = t_.create_element("head", std::move(tok.attrs));
                t_.append_child(html_, head_);
                stack_.push_back(head_);
                phase_ = Phase::InHead;
                return;
            }
            if (is_head_content(name)) {
                if (phase_ <= Phase::BeforeHead) {
                    ensure_head();
                    stack_.push_back(head_);
                    phase_ = Phase::InHead;
                }
                if (phase_ == Phase::AfterHead) {
                    // Late head content goes back into <head>.
                    stack_.push_back(head_);
                    phase_ = Phase::InHead;
                }
                insert_element(tok, false);
                return;
            }
            if (name == "body") {
                ensure_head();
                close_head_if_open();
                if (!body_) {
                    body_ = t_.create_element("body", std::move(tok.attrs));
                    t_.append_child(html_, body_);
                } else {
                    merge_attributes(body_, tok.attrs);
                }
                stack_.push_back(body_);
                phase_ = Phase::InBody;
                return;
            }
            if (phase_ == Phase::InHead && current() != head_) {
                // Inside <noscript>/<template> in head: keep nesting.
                insert_element(tok, false);
                return;
            }
            start_body_implicitly();
        }
        if (phase_ == Phase::AfterBody || phase_ == Phase::AfterAfterBody)
            phase_ = Phase::InBody;
        if (name == "body") {
            if (body_)
                merge_attributes(body_, tok.attrs);
            return;
        }
        if (name == "head")
            return;
        in_body_start(tok);
    }

    void in_body_start(Token& tok)
    {
        std::string name = tok.name;
        if (in_foreign()) {
            if (breaks_foreign(name) || (name == "font" && std::any_of(tok.attrs.begin(), tok.attrs.end(), [](const Attribute& a) {
                                            return a.name == "color" || a.name == "face" || a.name == "size";
                                        }))) {
                while (stack_.size() > 1 && t_.is_foreign(current()))
                    stack_.pop_back();
            } else {
                insert_element(tok, true);
                return;
            }
        }
        if (name == "svg" || name == "math") {
            insert_element(tok, true);
            return;
        }
        if (name == "image")
            tok.name = name = "img";

        if (name == "li") {
            for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
                NodeId n = *it;
                if (n == fragment_root_)
                    break;
                const auto& tag = t_.tag(n);
                if (tag == "li") {
                    pop_until(n);
                    break;
                }
                if (is_special(tag) && !one_of(tag, {"address", "div", "p"}))
                    break;
            }
        } else if (name == "dd" || name == "dt") {
            for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
                NodeId n = *it;
                if (n == fragment_root_)
                    break;
                const auto& tag = t_.tag(n);
                if (tag == "dd" || tag == "dt") {
                    pop_until(n);
                    break;
                }
                if (is_special(tag) && !one_of(tag, {"address", "div", "p"}))
                    break;
            }
        }
        if (closes_paragraph(name))
            close_p_in_button_scope();
        if (is_heading(name) && is_heading(t_.tag(current())))
            stack_.pop_back();
        if (name == "a") {
            if (NodeId a = in_scope("a"))
                pop_until(a);
        } else if (name == "button") {
            if (NodeId b = in_scope("button"))
                pop_until(b);
        } else if (name == "nobr") {
            if (NodeId b = in_scope("nobr"))
                pop_until(b);
        } else if (name == "option") {
            if (t_.tag(current()) == "option")
                stack_.pop_back();
        } else if (name == "optgroup") {
            if (t_.tag(current()) == "option")
                stack_.pop_back();
            if (t_.tag(current()) == "optgroup")
                stack_.pop_back();
        } else if (name == "tr") {
            close_table_cells();
            if (NodeId tr = in_table_scope("tr"))
                pop_until(tr);
        } else if (name == "td" || name == "th") {
            close_table_cells();
        } else if (one_of(name, {"thead", "tbody", "tfoot", "caption", "colgroup"})) {
            close_table_cells();
            for (auto sec : {"tr", "thead", "tbody", "tfoot", "caption", "colgroup"}) {
                if (NodeId s = in_table_scope(sec))
                    pop_until(s);
            }
        } else if (name == "table") {
            // <table> directly inside a table cell context starts a nested table
        }
        insert_element(tok, false);
    }

    void close_table_cells()
    {
        for (auto cell : {"td", "th"}) {
            if (NodeId c = in_table_scope(cell)) {
                pop_until(c);
                return;
            }
        }
    }

    void on_end(const std::string& name)
    {
        drop_leading_newline_ = false;
        if (!fragment_root_) {
            if (phase_ < Phase::InBody) {
                if (name == "head") {
                    if (phase_ == Phase::InHead && current() == head_) {
                        close_head_if_open();
                    } else if (phase_ == Phase::InHead) {
                        pop_until(head_);
                        phase_ = Phase::AfterHead;
                    }
                    return;
                }
                if (phase_ == Phase::InHead && current() != head_) {
                    in_body_end(name);
                    return;
                }
                if (name == "body" || name == "html" || name == "br")
                    start_body_implicitly();
                else
                    return;
            }
            if (name == "body") {
                if (body_)
                    phase_ = Phase::AfterBody;
                return;
            }
            if (name == "html") {
                phase_ = Phase::AfterAfterBody;
                return;
            }
        } else if (one_of(name, {"html", "head", "body"})) {
            return;
        }
        in_body_end(name);
    }

    void in_body_end(const std::string& name)
    {
        if (in_foreign()) {
            for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
                NodeId n = *it;
                if (n == fragment_root_)
                    return;
                if (!t_.is_foreign(n))
                    break;
                if (t_.tag(n) == name) {
                    pop_until(n);
                    return;
                }
            }
        }
        if (name == "p") {
            if (NodeId p = in_scope("p", {"button"}))
                pop_until(p);
            return;
        }
        if (name == "li") {
            if (NodeId li = in_scope("li", {"ol", "ul"}))
                pop_until(li);
            return;
        }
        if (name == "dd" || name == "dt") {
            if (NodeId d = in_scope(name))
                pop_until(d);
            return;
        }
        if (is_heading(name)) {
            for (auto h : {"h1", "h2", "h3", "h4", "h5", "h6"}) {
                if (NodeId n = in_scope(h)) {
                    pop_until(n);
                    return;
                }
            }
            return;
        }
        if (one_of(name, {"table", "tbody", "thead", "tfoot", "tr", "td", "th", "caption", "colgroup"})) {
            if (NodeId n = in_table_scope(name))
                pop_until(n);
            return;
        }
        if (is_block_end(name)) {
            if (NodeId n = in_scope(name))
                pop_until(n);
            return;
        }
        if (is_formatting(name)) {
            if (NodeId n = in_scope(name))
                pop_until(n);
            return;
        }
        // Any other end tag: match the current node or a non-special ancestor.
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            NodeId n = *it;
            if (n == fragment_root_)
                return;
            if (t_.tag(n) == name) {
                pop_until(n);
                return;
            }
            if (is_special(t_.tag(n)))
                return;
        }
    }

public:
    void end_raw_text()
    {
        text_mode_ = TextMode::Data;
        raw_tag_.clear();
    }

private:
    DomTree& t_;
    NodeId fragment_root_;
    std::vector<NodeId> stack_;
    NodeId html_, head_, body_;
    Phase phase_ = Phase::BeforeHtml;
    TextMode text_mode_ = TextMode::Data;
    std::string raw_tag_;
    bool drop_leading_newline_ = false;
};

class Tokenizer {
public:
    Tokenizer(std::string_view input, TreeBuilder& builder) : in_(input), b_(builder) {}

    void run()
    {
        while (pos_ < in_.size()) {
            if (b_.text_mode() != TextMode::Data) {
                raw_text();
                continue;
            }
            char c = in_[pos_];
            if (c == '<') {
                markup();
            } else {
                std::size_t end = in_.find('<', pos_);
                if (end == std::string_view::npos)
                    end = in_.size();
                emit_text(decode_entities(in_.substr(pos_, end - pos_), false));
                pos_ = end;
            }
        }
        flush_text();
    }

private:
    void emit_text(std::string text)
    {
        if (pending_text_.empty())
            pending_text_ = std::move(text);
        else
            pending_text_ += text;
    }

    void flush_text()
    {
        if (pending_text_.empty())
            return;
        b_.process(Token{Token::Type::Text, {}, {}, false, std::move(pending_text_)});
        pending_text_.clear();
    }

    void emit(Token&& tok)
    {
        flush_text();
        b_.process(std::move(tok));
    }

    bool matches_ci(std::size_t at, std::string_view word) const
    {
        return at + word.size() <= in_.size() && detail::iequals(in_.substr(at, word.size()), word);
    }

    void raw_text()
    {
        const std::string tag = b_.raw_end_tag();
        std::size_t search = pos_;
        std::size_t end = in_.size();
        while (true) {
            std::size_t lt = in_.find("</", search);
            if (lt == std::string_view::npos)
                break;
            std::size_t after = lt + 2 + tag.size();
            if (matches_ci(lt + 2, tag) && (after >= in_.size() || is_ascii_whitespace(in_[after]) || in_[after] == '/' || in_[after] == '>')) {
                end = lt;
                break;
            }
            search = lt + 2;
        }
        auto body = in_.substr(pos_, end - pos_);
        if (b_.text_mode() == TextMode::RcData)
            emit_text(decode_entities(body, false));
        else
            emit_text(std::string(body));
        pos_ = end;
        b_.end_raw_text();
        if (pos_ < in_.size())
            markup();
    }

    void markup()
    {
        std::size_t start = pos_;
        std::size_t n = in_.size();
        if (pos_ + 1 >= n) {
            emit_text("<");
            ++pos_;
            return;
        }
        char c = in_[pos_ + 1];
        if (c == '!') {
            if (in_.substr(pos_, 4) == "<!--") {
                comment();
            } else if (matches_ci(pos_ + 2, "doctype")) {
                std::size_t gt = in_.find('>', pos_);
                if (gt == std::string_view::npos)
                    gt = n;
                emit(Token{Token::Type::Doctype, {}, {}, false, std::string(in_.substr(pos_ + 2, gt - pos_ - 2))});
                pos_ = std::min(gt + 1, n);
            } else if (in_.substr(pos_, 9) == "<![CDATA[" && b_.in_foreign()) {
                std::size_t close = in_.find("]]>", pos_ + 9);
                if (close == std::string_view::npos)
                    close = n;
                emit_text(std::string(in_.substr(pos_ + 9, close - pos_ - 9)));
                pos_ = std::min(close + 3, n);
            } else {
                bogus_comment(pos_ + 2);
            }
            return;
        }
        if (c == '?') {
            bogus_comment(pos_ + 1);
            return;
        }
        if (c == '/') {
            if (pos_ + 2 < n && is_ascii_alpha(in_[pos_ + 2])) {
                Token tok{Token::Type::EndTag, {}, {}, false, {}};
                pos_ += 2;
                if (!tag(tok))
                    return;
                emit(std::move(tok));
            } else if (pos_ + 2 < n && in_[pos_ + 2] == '>') {
                pos_ += 3;
            } else if (pos_ + 2 >= n) {
                emit_text("</");
                pos_ = n;
            } else {
                bogus_comment(pos_ + 2);
            }
            return;
        }
        if (is_ascii_alpha(c)) {
            Token tok{Token::Type::StartTag, {}, {}, false, {}};
            pos_ += 1;
            if (!tag(tok))
                return;
            emit(std::move(tok));
            return;
        }
        emit_text("<");
        pos_ = start + 1;
    }

    void comment()
    {
        std::size_t n = in_.size();
        std::size_t body = pos_ + 4;
        if (in_.substr(body, 1) == ">") {
            emit(Token{Token::Type::Comment, {}, {}, false, {}});
            pos_ = body + 1;
            return;
        }
        if (in_.substr(body, 2) == "->") {
            emit(Token{Token::Type::Comment, {}, {}, false, {}});
            pos_ = body + 2;
            return;
        }
        std::size_t end = body;
        std::size_t close = n;
        std::size_t close_len = 0;
        while (true) {
            std::size_t dd = in_.find("--", end);
            if (dd == std::string_view::npos)
                break;
            if (in_.substr(dd, 3) == "-->") {
                close = dd;
                close_len = 3;
                break;
            }
            if (in_.substr(dd, 4) == "--!>") {
                close = dd;
                close_len = 4;
                break;
            }
            end = dd + 1;
        }
        emit(Token{Token::Type::Comment, {}, {}, false, std::string(in_.substr(body, close - body))});
        pos_ = std::min(close + close_len, n);
    }

    void bogus_comment(std::size_t data_start)
    {
        std::size_t gt = in_.find('>', data_start);
        if (gt == std::string_view::npos)
            gt = in_.size();
        std::string data(in_.substr(data_start, gt - data_start));
        emit(Token{Token::Type::Comment, {}, {}, false, std::move(data)});
        pos_ = std::min(gt + 1, in_.size());
    }

    // Parses tag name and attributes from pos_ (just past '<' or '</').
    // Returns false on EOF inside the tag (the token is dropped).
    bool tag(Token& tok)
    {
        const std::size_t n = in_.size();
        std::size_t i = pos_;
        while (i < n && !is_ascii_whitespace(in_[i]) && in_[i] != '/' && in_[i] != '>')
            ++i;
        tok.name = detail::to_lower(in_.substr(pos_, i - pos_));
        for (auto& ch : tok.name) {
            if (ch == '\0')
                ch = '?';
        }
        while (true) {
            while (i < n && (is_ascii_whitespace(in_[i]) || (in_[i] == '/' && !(i + 1 < n && in_[i + 1] == '>'))))
                ++i;
            if (i >= n) {
                pos_ = n;
                return false;
            }
            if (in_[i] == '>') {
                pos_ = i + 1;
                return true;
            }
            if (in_[i] == '/' && i + 1 < n && in_[i + 1] == '>') {
                tok.self_closing = true;
                pos_ = i + 2;
                return true;
            }
            std::size_t name_start = i;
            ++i;  // first char may be '='
            while (i < n && !is_ascii_whitespace(in_[i]) && in_[i] != '/' && in_[i] != '>' && in_[i] != '=')
                ++i;
            std::string attr_name = detail::to_lower(in_.substr(name_start, i - name_start));
            std::size_t j = i;
            while (j < n && is_ascii_whitespace(in_[j]))
                ++j;
            std::string value;
            if (j < n && in_[j] == '=') {
                ++j;
                while (j < n && is_ascii_whitespace(in_[j]))
                    ++j;
                if (j < n && (in_[j] == '"' || in_[j] == '\'')) {
                    char q = in_[j];
                    std::size_t close = in_.find(q, j + 1);
                    if (close == std::string_view::npos) {
                        pos_ = n;
                        return false;
                    }
                    value = decode_entities(in_.substr(j + 1, close - j - 1), true);
                    i = close + 1;
                } else {
                    std::size_t v = j;
                    while (v < n && !is_ascii_whitespace(in_[v]) && in_[v] != '>')
                        ++v;
                    value = decode_entities(in_.substr(j, v - j), true);
                    i = v;
                }
            }
            if (tok.type == Token::Type::StartTag) {
                auto existing = std::find_if(tok.attrs.begin(), tok.attrs.end(), [&](const Attribute& a) { return a.name == attr_name; });
                if (existing != tok.attrs.end())
                    existing->value = std::move(value);  // last occurrence wins
                else
                    tok.attrs.push_back({std::move(attr_name), std::move(value)});
            }
        }
    }

    std::string_view in_;
    TreeBuilder& b_;
    std::size_t pos_ = 0;
    std::string pending_text_;
};

// CRLF/CR -> LF and NUL -> U+FFFD, as the HTML input stream preprocessor does.
std::string preprocess(std::string text)
{
    if (text.find('\r') == std::string::npos && text.find('\0') == std::string::npos)
        return text;
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\r') {
            out += '\n';
            if (i + 1 < text.size() && text[i + 1] == '\n')
                ++i;
        } else if (c == '\0') {
            out += "\xEF\xBF\xBD";
        } else {
            out += c;
        }
    }
    return out;
}

}  // namespace

bool is_void_element(std::string_view tag)
{
    return one_of(tag, {"area", "base", "basefont", "bgsound", "br", "col", "embed", "frame", "hr", "img", "input",
                        "keygen", "link", "meta", "param", "source", "track", "wbr"});
}

bool is_raw_text_element(std::string_view tag)
{
    return one_of(tag, {"script", "style", "xmp", "iframe", "noembed", "noframes", "plaintext"});
}

DomTree parse_html(std::string_view bytes, std::optional<std::string_view> encoding_hint)
{
    std::string charset = encoding_hint ? std::string(*encoding_hint) : sniff_charset(bytes).value_or("utf-8");
    std::string text = preprocess(to_utf8(bytes, charset));
    DomTree tree;
    TreeBuilder builder(tree, NodeId{});
    Tokenizer tokenizer(text, builder);
    tokenizer.run();
    builder.finish();
    return tree;
}

std::vector<NodeId> parse_fragment(DomTree& tree, std::string_view html)
{
    std::string text = preprocess(to_utf8(html, "utf-8"));
    NodeId holder = tree.create_element("body");
    TreeBuilder builder(tree, holder);
    Tokenizer tokenizer(text, builder);
    tokenizer.run();
    std::vector<NodeId> out(tree.children(holder).begin(), tree.children(holder).end());
    for (auto n : out)
        tree.remove(n);
    tree.destroy(holder);
    return out;
}

}  // namespace jsrehab
