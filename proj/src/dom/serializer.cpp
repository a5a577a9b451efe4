#include "jsrehab/dom.hpp"

namespace jsrehab {

namespace {

void escape_text(std::string& out, std::string_view text)
{
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        default:
            out += c;
        }
    }
}

void escape_attr(std::string& out, std::string_view text)
{
    for (char c : text) {
        if (c == '&')
            out += "&amp;";
        else if (c == '"')
            out += "&quot;";
        else
            out += c;
    }
}

class Serializer {
public:
    explicit Serializer(const DomTree& tree) : t_(tree) {}

    std::string run(NodeId from)
    {
        out_.reserve(64 * 1024);
        node(from);
        return std::move(out_);
    }

private:
    void node(NodeId n)
    {
        switch (t_.kind(n)) {
        case NodeKind::Document:
            for (auto c : t_.children(n))
                node(c);
            break;
        case NodeKind::Doctype:
            out_ += "<!";
            out_ += t_.data(n);
            out_ += '>';
            break;
        case NodeKind::Comment:
            out_ += "<!--";
            out_ += t_.data(n);
            out_ += "-->";
            break;
        case NodeKind::Text: {
            NodeId p = t_.parent(n);
            if (p && t_.kind(p) == NodeKind::Element && !t_.is_foreign(p) && is_raw_text_element(t_.tag(p)))
                out_ += t_.data(n);
            else
                escape_text(out_, t_.data(n));
            break;
        }
        case NodeKind::Element:
            element(n);
            break;
        }
    }

    void element(NodeId n)
    {
        const auto& tag = t_.tag(n);
        out_ += '<';
        out_ += tag;
        for (const auto& a : t_.attributes(n)) {
            out_ += ' ';
            out_ += a.name;
            if (!a.value.empty()) {
                out_ += "=\"";
                escape_attr(out_, a.value);
                out_ += '"';
            }
        }
        auto kids = t_.children(n);
        if (t_.is_foreign(n)) {
            if (kids.empty()) {
                out_ += "/>";
                return;
            }
        } else if (is_void_element(tag)) {
            out_ += '>';
            return;
        }
        out_ += '>';
        if ((tag == "pre" || tag == "textarea" || tag == "listing") && !t_.is_foreign(n) && !kids.empty() &&
            t_.kind(kids.front()) == NodeKind::Text && t_.data(kids.front()).starts_with('\n')) {
            out_ += '\n';
        }
        for (auto c : kids)
            node(c);
        out_ += "</";
        out_ += tag;
        out_ += '>';
    }

    const DomTree& t_;
    std::string out_;
};

}  // namespace

std::string serialize(const DomTree& tree) { return Serializer(tree).run(tree.root()); }

std::string serialize(const DomTree& tree, NodeId node) { return Serializer(tree).run(node); }

}  // namespace jsrehab
