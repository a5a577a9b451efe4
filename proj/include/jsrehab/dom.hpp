#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jsrehab {

/// Handle to a node stored in a DomTree arena. Handles stay valid across
/// mutations; only destroy() invalidates them.
struct NodeId {
    static constexpr std::uint32_t kInvalid = UINT32_MAX;
    std::uint32_t value = kInvalid;

    constexpr bool valid() const { return value != kInvalid; }
    explicit constexpr operator bool() const { return valid(); }
    auto operator<=>(const NodeId&) const = default;
};

enum class NodeKind : std::uint8_t { Document, Doctype, Element, Text, Comment };

struct Attribute {
    std::string name;
    std::string value;
    bool operator==(const Attribute&) const = default;
};

class InvalidHandle : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class DomTree {
public:
    DomTree();

    NodeId root() const { return NodeId{0}; }

    bool is_valid(NodeId id) const;
    NodeKind kind(NodeId id) const;
    bool is_element(NodeId id) const { return is_valid(id) && kind(id) == NodeKind::Element; }
    bool is_element(NodeId id, std::string_view tag_name) const;

    // Lowercase tag name; empty for non-elements.
    const std::string& tag(NodeId id) const;
    // Character data of text, comment and doctype nodes.
    const std::string& data(NodeId id) const;
    void set_data(NodeId id, std::string data);

    // True for elements inside <svg> or <math>.
    bool is_foreign(NodeId id) const;
    void set_foreign(NodeId id, bool foreign);

    NodeId parent(NodeId id) const;
    std::span<const NodeId> children(NodeId id) const;
    std::size_t index_in_parent(NodeId id) const;
    NodeId next_sibling(NodeId id) const;
    NodeId previous_sibling(NodeId id) const;
    NodeId next_element_sibling(NodeId id) const;
    NodeId previous_element_sibling(NodeId id) const;
    NodeId first_element_child(NodeId id) const;
    std::vector<NodeId> element_children(NodeId id) const;

    const std::vector<Attribute>& attributes(NodeId id) const;
    std::optional<std::string_view> attr(NodeId id, std::string_view name) const;
    bool has_attr(NodeId id, std::string_view name) const { return attr(id, name).has_value(); }
    bool has_class(NodeId id, std::string_view cls) const;
    std::vector<std::string_view> classes(NodeId id) const;

    NodeId create_element(std::string tag, std::vector<Attribute> attrs = {});
    NodeId create_text(std::string text);
    NodeId create_comment(std::string text);
    NodeId create_doctype(std::string text);
    // Detached copy of `id` (and its subtree when deep).
    NodeId clone(NodeId id, bool deep = true);

    void append_child(NodeId parent, NodeId node);
    void insert_before(NodeId node, NodeId ref);
    void insert_after(NodeId node, NodeId ref);
    void insert_first_child(NodeId node, NodeId parent);
    // Detaches `node` from its parent and hands the subtree back.
    NodeId remove(NodeId node);
    void rename(NodeId node, std::string tag);
    void set_attr(NodeId node, std::string_view name, std::string value);
    bool remove_attr(NodeId node, std::string_view name);
    void set_attributes(NodeId node, std::vector<Attribute> attrs);
    // Puts `wrapper` (a detached element) where `node` was, with `node` as its last child.
    void wrap(NodeId node, NodeId wrapper);
    // Detaches and invalidates the whole subtree; later use of the handles throws.
    void destroy(NodeId node);

    bool is_ancestor_of(NodeId ancestor, NodeId node) const;
    bool is_attached(NodeId node) const;
    bool precedes(NodeId a, NodeId b) const;  // document order, both attached

    // Pre-order walk of `from`'s subtree (inclusive). Returning false from the
    // callback skips the node's children.
    void walk(NodeId from, const std::function<bool(NodeId)>& visit) const;
    std::vector<NodeId> elements_in_order(NodeId from) const;
    std::vector<NodeId> elements_in_order() const { return elements_in_order(root()); }

    NodeId document_element() const;
    NodeId head() const;
    NodeId body() const;
    NodeId find_by_id(std::string_view id) const;

    std::string text_content(NodeId id) const;
    // Nodes reachable from the root (elements, text, comments, doctype).
    std::size_t node_count() const;
    // Arena slots, including detached and destroyed nodes.
    std::size_t capacity() const { return nodes_.size(); }

    // Verifies parent/child link consistency and acyclicity over the arena.
    bool check_consistency(std::string* why = nullptr) const;

private:
    struct Node {
        NodeKind kind = NodeKind::Element;
        bool alive = true;
        bool foreign = false;
        NodeId parent;
        std::vector<NodeId> children;
        std::string name;
        std::string data;
        std::vector<Attribute> attrs;
    };

    Node& at(NodeId id);
    const Node& at(NodeId id) const;
    NodeId push(Node node);
    void check_insertable(NodeId node, NodeId new_parent) const;
    void detach(NodeId node);

    std::vector<Node> nodes_;
};

bool is_void_element(std::string_view tag);
bool is_raw_text_element(std::string_view tag);

/// Forgiving HTML parse. Never fails; synthesizes html/head/body.
/// `encoding_hint` takes a charset label (utf-8, windows-1252, ...); without it
/// a BOM or <meta charset> in the first 1024 bytes is honoured, then UTF-8.
DomTree parse_html(std::string_view bytes, std::optional<std::string_view> encoding_hint = std::nullopt);

/// Parses `html` as body content and returns the detached top-level nodes
/// created inside `tree`.
std::vector<NodeId> parse_fragment(DomTree& tree, std::string_view html);

std::string serialize(const DomTree& tree);
std::string serialize(const DomTree& tree, NodeId node);

/// Decodes character references the way the HTML tokenizer does in text
/// (`in_attribute` false) or attribute values.
std::string decode_entities(std::string_view text, bool in_attribute);

/// Converts bytes in the given charset to UTF-8, replacing invalid sequences
/// with U+FFFD. Unknown labels decode as UTF-8.
std::string to_utf8(std::string_view bytes, std::string_view charset);
std::optional<std::string> sniff_charset(std::string_view bytes);

}  // namespace jsrehab

template <>
struct std::hash<jsrehab::NodeId> {
    std::size_t operator()(jsrehab::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
