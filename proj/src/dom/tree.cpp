#include "jsrehab/dom.hpp"

#include <algorithm>
#include <unordered_set>

#include "strings.hpp"

namespace jsrehab {

namespace {

const std::string kEmpty;

}  // namespace

DomTree::DomTree()
{
    Node doc;
    doc.kind = NodeKind::Document;
    nodes_.push_back(std::move(doc));
}

bool DomTree::is_valid(NodeId id) const
{
    return id.valid() && id.value < nodes_.size() && nodes_[id.value].alive;
}

DomTree::Node& DomTree::at(NodeId id)
{
    if (!is_valid(id))
        throw InvalidHandle("stale or out-of-range node handle " + std::to_string(id.value));
    return nodes_[id.value];
}

const DomTree::Node& DomTree::at(NodeId id) const
{
    if (!is_valid(id))
        throw InvalidHandle("stale or out-of-range node handle " + std::to_string(id.value));
    return nodes_[id.value];
}

NodeId DomTree::push(Node node)
{
    NodeId id{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(std::move(node));
    return id;
}

NodeKind DomTree::kind(NodeId id) const { return at(id).kind; }

bool DomTree::is_element(NodeId id, std::string_view tag_name) const
{
    return is_element(id) && nodes_[id.value].name == tag_name;
}

const std::string& DomTree::tag(NodeId id) const
{
    const auto& n = at(id);
    return n.kind == NodeKind::Element ? n.name : kEmpty;
}

const std::string& DomTree::data(NodeId id) const { return at(id).data; }

void DomTree::set_data(NodeId id, std::string data) { at(id).data = std::move(data); }

bool DomTree::is_foreign(NodeId id) const { return at(id).foreign; }

void DomTree::set_foreign(NodeId id, bool foreign) { at(id).foreign = foreign; }

NodeId DomTree::parent(NodeId id) const { return at(id).parent; }

std::span<const NodeId> DomTree::children(NodeId id) const { return at(id).children; }

std::size_t DomTree::index_in_parent(NodeId id) const
{
    const auto& n = at(id);
    if (!n.parent)
        return 0;
    const auto& siblings = nodes_[n.parent.value].children;
    return static_cast<std::size_t>(std::find(siblings.begin(), siblings.end(), id) - siblings.begin());
}

NodeId DomTree::next_sibling(NodeId id) const
{
    const auto& n = at(id);
    if (!n.parent)
        return {};
    const auto& siblings = nodes_[n.parent.value].children;
    auto idx = index_in_parent(id);
    return idx + 1 < siblings.size() ? siblings[idx + 1] : NodeId{};
}

NodeId DomTree::previous_sibling(NodeId id) const
{
    const auto& n = at(id);
    if (!n.parent)
        return {};
    const auto& siblings = nodes_[n.parent.value].children;
    auto idx = index_in_parent(id);
    return idx > 0 ? siblings[idx - 1] : NodeId{};
}

NodeId DomTree::next_element_sibling(NodeId id) const
{
    const auto& n = at(id);
    if (!n.parent)
        return {};
    const auto& siblings = nodes_[n.parent.value].children;
    for (auto i = index_in_parent(id) + 1; i < siblings.size(); ++i) {
        if (nodes_[siblings[i].value].kind == NodeKind::Element)
            return siblings[i];
    }
    return {};
}

NodeId DomTree::previous_element_sibling(NodeId id) const
{
    const auto& n = at(id);
    if (!n.parent)
        return {};
    const auto& siblings = nodes_[n.parent.value].children;
    for (auto i = index_in_parent(id); i-- > 0;) {
        if (nodes_[siblings[i].value].kind == NodeKind::Element)
            return siblings[i];
    }
    return {};
}

NodeId DomTree::first_element_child(NodeId id) const
{
    for (auto c : at(id).children) {
        if (nodes_[c.value].kind == NodeKind::Element)
            return c;
    }
    return {};
}

std::vector<NodeId> DomTree::element_children(NodeId id) const
{
    std::vector<NodeId> out;
    for (auto c : at(id).children) {
        if (nodes_[c.value].kind == NodeKind::Element)
            out.push_back(c);
    }
    return out;
}

const std::vector<Attribute>& DomTree::attributes(NodeId id) const { return at(id).attrs; }

std::optional<std::string_view> DomTree::attr(NodeId id, std::string_view name) const
{
    for (const auto& a : at(id).attrs) {
        if (a.name == name)
            return std::string_view(a.value);
    }
    return std::nullopt;
}

bool DomTree::has_class(NodeId id, std::string_view cls) const
{
    auto value = attr(id, "class");
    if (!value)
        return false;
    bool found = false;
    detail::for_each_token(*value, [&](std::string_view token) {
        if (token == cls)
            found = true;
    });
    return found;
}

std::vector<std::string_view> DomTree::classes(NodeId id) const
{
    std::vector<std::string_view> out;
    if (auto value = attr(id, "class"))
        detail::for_each_token(*value, [&](std::string_view token) { out.push_back(token); });
    return out;
}

NodeId DomTree::create_element(std::string tag, std::vector<Attribute> attrs)
{
    Node n;
    n.kind = NodeKind::Element;
    n.name = std::move(tag);
    n.attrs = std::move(attrs);
    return push(std::move(n));
}

NodeId DomTree::create_text(std::string text)
{
    Node n;
    n.kind = NodeKind::Text;
    n.data = std::move(text);
    return push(std::move(n));
}

NodeId DomTree::create_comment(std::string text)
{
    Node n;
    n.kind = NodeKind::Comment;
    n.data = std::move(text);
    return push(std::move(n));
}

NodeId DomTree::create_doctype(std::string text)
{
    Node n;
    n.kind = NodeKind::Doctype;
    n.data = std::move(text);
    return push(std::move(n));
}

NodeId DomTree::clone(NodeId id, bool deep)
{
    Node copy = at(id);
    if (copy.kind == NodeKind::Document)
        throw InvalidHandle("cannot clone the document node");
    copy.parent = {};
    auto kids = std::move(copy.children);
    copy.children.clear();
    NodeId out = push(std::move(copy));
    if (deep) {
        for (auto c : kids) {
            NodeId cc = clone(c, true);
            nodes_[cc.value].parent = out;
            nodes_[out.value].children.push_back(cc);
        }
    }
    return out;
}

void DomTree::check_insertable(NodeId node, NodeId new_parent) const
{
    const auto& n = at(node);
    const auto& p = at(new_parent);
    if (n.kind == NodeKind::Document)
        throw InvalidHandle("the document node cannot be inserted");
    if (p.kind != NodeKind::Element && p.kind != NodeKind::Document)
        throw InvalidHandle("only elements and the document can have children");
    if (node == new_parent || is_ancestor_of(node, new_parent))
        throw InvalidHandle("insertion would create a cycle");
}

void DomTree::detach(NodeId node)
{
    auto& n = nodes_[node.value];
    if (!n.parent)
        return;
    auto& siblings = nodes_[n.parent.value].children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), node));
    n.parent = {};
}

void DomTree::append_child(NodeId parent, NodeId node)
{
    check_insertable(node, parent);
    detach(node);
    nodes_[parent.value].children.push_back(node);
    nodes_[node.value].parent = parent;
}

void DomTree::insert_before(NodeId node, NodeId ref)
{
    NodeId p = parent(ref);
    if (!p)
        throw InvalidHandle("reference node has no parent");
    check_insertable(node, p);
    detach(node);
    auto& siblings = nodes_[p.value].children;
    siblings.insert(std::find(siblings.begin(), siblings.end(), ref), node);
    nodes_[node.value].parent = p;
}

void DomTree::insert_after(NodeId node, NodeId ref)
{
    NodeId p = parent(ref);
    if (!p)
        throw InvalidHandle("reference node has no parent");
    check_insertable(node, p);
    detach(node);
    auto& siblings = nodes_[p.value].children;
    siblings.insert(std::find(siblings.begin(), siblings.end(), ref) + 1, node);
    nodes_[node.value].parent = p;
}

void DomTree::insert_first_child(NodeId node, NodeId parent)
{
    check_insertable(node, parent);
    detach(node);
    auto& siblings = nodes_[parent.value].children;
    siblings.insert(siblings.begin(), node);
    nodes_[node.value].parent = parent;
}

NodeId DomTree::remove(NodeId node)
{
    if (at(node).kind == NodeKind::Document)
        throw InvalidHandle("the document node cannot be removed");
    detach(node);
    return node;
}

void DomTree::rename(NodeId node, std::string tag)
{
    auto& n = at(node);
    if (n.kind != NodeKind::Element)
        throw InvalidHandle("rename on a non-element node");
    n.name = std::move(tag);
}

void DomTree::set_attr(NodeId node, std::string_view name, std::string value)
{
    auto& n = at(node);
    if (n.kind != NodeKind::Element)
        throw InvalidHandle("set_attr on a non-element node");
    for (auto& a : n.attrs) {
        if (a.name == name) {
            a.value = std::move(value);
            return;
        }
    }
    n.attrs.push_back({std::string(name), std::move(value)});
}

bool DomTree::remove_attr(NodeId node, std::string_view name)
{
    auto& attrs = at(node).attrs;
    auto it = std::find_if(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == name; });
    if (it == attrs.end())
        return false;
    attrs.erase(it);
    return true;
}

void DomTree::set_attributes(NodeId node, std::vector<Attribute> attrs)
{
    auto& n = at(node);
    if (n.kind != NodeKind::Element)
        throw InvalidHandle("set_attributes on a non-element node");
    n.attrs = std::move(attrs);
}

void DomTree::wrap(NodeId node, NodeId wrapper)
{
    if (at(wrapper).kind != NodeKind::Element)
        throw InvalidHandle("wrapper must be an element");
    if (nodes_[wrapper.value].parent)
        throw InvalidHandle("wrapper must be detached");
    if (!parent(node))
        throw InvalidHandle("cannot wrap a detached node");
    insert_before(wrapper, node);
    append_child(wrapper, node);
}

void DomTree::destroy(NodeId node)
{
    remove(node);
    std::vector<NodeId> stack{node};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        auto& n = nodes_[cur.value];
        n.alive = false;
        for (auto c : n.children)
            stack.push_back(c);
        n.children.clear();
        n.attrs.clear();
        n.data.clear();
    }
}

bool DomTree::is_ancestor_of(NodeId ancestor, NodeId node) const
{
    for (NodeId cur = at(node).parent; cur; cur = nodes_[cur.value].parent) {
        if (cur == ancestor)
            return true;
    }
    return false;
}

bool DomTree::is_attached(NodeId node) const
{
    return node == root() || is_ancestor_of(root(), node);
}

bool DomTree::precedes(NodeId a, NodeId b) const
{
    if (a == b)
        return false;
    auto chain = [&](NodeId n) {
        std::vector<NodeId> path;
        for (NodeId cur = n; cur; cur = nodes_[cur.value].parent)
            path.push_back(cur);
        std::reverse(path.begin(), path.end());
        return path;
    };
    auto pa = chain(a);
    auto pb = chain(b);
    std::size_t i = 0;
    while (i < pa.size() && i < pb.size() && pa[i] == pb[i])
        ++i;
    if (i == pa.size())
        return true;  // a is an ancestor of b
    if (i == pb.size())
        return false;
    return index_in_parent(pa[i]) < index_in_parent(pb[i]);
}

void DomTree::walk(NodeId from, const std::function<bool(NodeId)>& visit) const
{
    at(from);
    std::vector<NodeId> stack{from};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        if (!visit(cur))
            continue;
        const auto& kids = nodes_[cur.value].children;
        for (auto it = kids.rbegin(); it != kids.rend(); ++it)
            stack.push_back(*it);
    }
}

std::vector<NodeId> DomTree::elements_in_order(NodeId from) const
{
    std::vector<NodeId> out;
    walk(from, [&](NodeId n) {
        if (nodes_[n.value].kind == NodeKind::Element)
            out.push_back(n);
        return true;
    });
    return out;
}

NodeId DomTree::document_element() const { return first_element_child(root()); }

NodeId DomTree::head() const
{
    NodeId html = document_element();
    if (!html)
        return {};
    for (auto c : nodes_[html.value].children) {
        if (is_element(c, "head"))
            return c;
    }
    return {};
}

NodeId DomTree::body() const
{
    NodeId html = document_element();
    if (!html)
        return {};
    for (auto c : nodes_[html.value].children) {
        if (is_element(c, "body"))
            return c;
    }
    return {};
}

NodeId DomTree::find_by_id(std::string_view id) const
{
    NodeId found;
    walk(root(), [&](NodeId n) {
        if (found)
            return false;
        if (nodes_[n.value].kind == NodeKind::Element) {
            auto v = attr(n, "id");
            if (v && *v == id) {
                found = n;
                return false;
            }
        }
        return true;
    });
    return found;
}

std::string DomTree::text_content(NodeId id) const
{
    std::string out;
    walk(id, [&](NodeId n) {
        if (nodes_[n.value].kind == NodeKind::Text)
            out += nodes_[n.value].data;
        return true;
    });
    return out;
}

std::size_t DomTree::node_count() const
{
    std::size_t count = 0;
    walk(root(), [&](NodeId n) {
        if (n != root())
            ++count;
        return true;
    });
    return count;
}

bool DomTree::check_consistency(std::string* why) const
{
    auto fail = [&](std::string msg) {
        if (why)
            *why = std::move(msg);
        return false;
    };
    std::vector<int> parent_refs(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (!n.alive)
            continue;
        for (auto c : n.children) {
            if (!is_valid(c))
                return fail("node " + std::to_string(i) + " has a dead child");
            if (nodes_[c.value].parent != NodeId{static_cast<std::uint32_t>(i)})
                return fail("child " + std::to_string(c.value) + " does not point back to " + std::to_string(i));
            if (++parent_refs[c.value] > 1)
                return fail("node " + std::to_string(c.value) + " listed under several parents");
        }
        if (n.parent) {
            if (!is_valid(n.parent))
                return fail("node " + std::to_string(i) + " has a dead parent");
            const auto& sib = nodes_[n.parent.value].children;
            if (std::find(sib.begin(), sib.end(), NodeId{static_cast<std::uint32_t>(i)}) == sib.end())
                return fail("node " + std::to_string(i) + " missing from its parent's children");
        }
    }
    // Acyclic: every parent chain terminates within arena size steps.
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!nodes_[i].alive)
            continue;
        std::size_t steps = 0;
        for (NodeId cur = nodes_[i].parent; cur; cur = nodes_[cur.value].parent) {
            if (++steps > nodes_.size())
                return fail("cycle through node " + std::to_string(i));
        }
    }
    if (nodes_[0].parent)
        return fail("document node has a parent");
    return true;
}

}  // namespace jsrehab
