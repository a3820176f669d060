#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xrec/xml.hpp"

namespace xrec {

using NodeId = std::uint64_t;

enum class ValueKind : char { Attribute = 'A', Element = 'E' };

/// One tag_structure row: a document name, element, or attribute.
struct StructRow {
    std::string tag_name;
    NodeId id = 0;
    NodeId pid = 0;

    bool operator==(const StructRow&) const = default;
};

/// One tag_value row: an attribute's value or an element's text.
struct ValueRow {
    NodeId tag_id = 0;
    std::string value;
    ValueKind kind = ValueKind::Element;

    bool operator==(const ValueRow&) const = default;
};

struct ShredResult {
    std::vector<StructRow> structure;
    std::vector<ValueRow> values;
    NodeId next_id = 0;

    bool operator==(const ShredResult&) const = default;
};

/// Labels the tree in pre-order starting from a document row
/// (id == pid == start_id): each element first, then its attributes in
/// document order, then its children. Attribute values and element text
/// land in `values` keyed by the owning row's id.
ShredResult shred_tree(const XmlTree& tree, const std::string& doc_name, NodeId start_id);

/// Single-pass variant over a pull parser; emits rows identical to
/// shred_tree on the folded document. Raises MixedContent when text and
/// child elements meet under one element.
ShredResult shred_stream(EventReader& events, const std::string& doc_name, NodeId start_id);

ShredResult shred_stream(const std::vector<ParseEvent>& events, const std::string& doc_name,
                         NodeId start_id);

}  // namespace xrec
