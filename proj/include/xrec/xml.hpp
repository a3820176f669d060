#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "xrec/errors.hpp"

namespace xrec {

/// One element of the document tree. `text` is empty when the element has
/// no (non-whitespace) character content; stored text is always trimmed.
struct XmlNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;
    std::vector<XmlNode> children;
};

struct XmlTree {
    XmlNode root;
};

struct StartElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
};

struct Text {
    std::string content;  // trimmed, never whitespace-only
};

struct EndElement {
    std::string name;
};

using ParseEvent = std::variant<StartElement, Text, EndElement>;

/// Pull parser: one pass over the input, memory bounded by nesting depth.
/// next() yields events in document order and std::nullopt at end of input.
class EventReader {
public:
    explicit EventReader(std::string_view input);

    std::optional<ParseEvent> next();

private:
    std::string_view input_;
    std::size_t pos_ = 0;
    std::vector<std::string> open_;  // names of unclosed elements
    bool saw_root_ = false;
    bool done_ = false;
    bool pending_close_ = false;  // a self-closing tag owes an EndElement

    [[noreturn]] void fail(ErrorKind kind, const std::string& what) const;
};

XmlTree parse_tree(std::string_view input);
std::vector<ParseEvent> parse_events(std::string_view input);

/// Fold a balanced event sequence back into a tree (mixed content rejected).
XmlTree fold_events(const std::vector<ParseEvent>& events);

std::string serialize(const XmlTree& tree);

bool nodes_equal(const XmlNode& a, const XmlNode& b);
bool trees_equal(const XmlTree& a, const XmlTree& b);

namespace detail {
std::string_view trim(std::string_view s);
bool is_name_char(char c);
}  // namespace detail

}  // namespace xrec
