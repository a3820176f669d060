#include "xrec/xml.hpp"

#include <algorithm>
#include <cctype>

namespace xrec {

namespace detail {

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_name_char(char c) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    switch (c) {
        case '<':
        case '>':
        case '&':
        case '/':
        case '=':
        case '"':
        case '\'':
        case '?':
        case '!':
            return false;
        default:
            return true;
    }
}

}  // namespace detail

namespace {

using detail::is_name_char;
using detail::trim;

// Shared lexical cursor for both parse modes.
struct Cursor {
    std::string_view in;
    std::size_t pos = 0;

    bool eof() const { return pos >= in.size(); }
    char peek() const { return in[pos]; }

    bool starts_with(std::string_view lit) const { return in.compare(pos, lit.size(), lit) == 0; }

    [[noreturn]] void fail(ErrorKind kind, const std::string& what) const {
        throw Error(kind, what + " (offset " + std::to_string(pos) + ")");
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
    }

    void expect(char c, const char* what) {
        if (eof() || peek() != c) fail(ErrorKind::MalformedXml, std::string("expected ") + what);
        ++pos;
    }

    std::string lex_name() {
        std::size_t start = pos;
        while (!eof() && is_name_char(peek())) ++pos;
        if (pos == start) fail(ErrorKind::MalformedXml, "expected a name");
        return std::string(in.substr(start, pos - start));
    }

    // Decodes the five built-in entity references starting at '&'.
    char lex_entity() {
        struct Ent {
            std::string_view ref;
            char ch;
        };
        static constexpr Ent kEntities[] = {
            {"&lt;", '<'}, {"&gt;", '>'}, {"&amp;", '&'}, {"&quot;", '"'}, {"&apos;", '\''},
        };
        for (const auto& e : kEntities) {
            if (starts_with(e.ref)) {
                pos += e.ref.size();
                return e.ch;
            }
        }
        fail(ErrorKind::MalformedXml, "unknown entity reference");
    }

    std::string lex_attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) {
            fail(ErrorKind::MalformedXml, "expected quoted attribute value");
        }
        char quote = peek();
        ++pos;
        std::string out;
        while (!eof() && peek() != quote) {
            char c = peek();
            if (c == '<') fail(ErrorKind::MalformedXml, "'<' in attribute value");
            if (c == '&') {
                out.push_back(lex_entity());
            } else {
                out.push_back(c);
                ++pos;
            }
        }
        expect(quote, "closing quote");
        return out;
    }

    // Attributes up to (but not consuming) '>' or '/>'.
    std::vector<std::pair<std::string, std::string>> lex_attributes() {
        std::vector<std::pair<std::string, std::string>> attrs;
        for (;;) {
            skip_ws();
            if (eof()) fail(ErrorKind::MalformedXml, "unterminated start tag");
            if (peek() == '>' || peek() == '/') return attrs;
            std::string name = lex_name();
            for (const auto& [existing, _] : attrs) {
                if (existing == name) {
                    fail(ErrorKind::MalformedXml, "duplicate attribute '" + name + "'");
                }
            }
            skip_ws();
            expect('=', "'=' after attribute name");
            skip_ws();
            attrs.emplace_back(std::move(name), lex_attr_value());
        }
    }

    // Skips one comment, processing instruction, or XML prolog; DOCTYPE is a
    // hard error. Returns false when the cursor is not at such a construct.
    bool skip_misc() {
        if (starts_with("<!--")) {
            std::size_t end = in.find("-->", pos + 4);
            if (end == std::string_view::npos) {
                fail(ErrorKind::MalformedXml, "unterminated comment");
            }
            pos = end + 3;
            return true;
        }
        if (starts_with("<?")) {
            std::size_t end = in.find("?>", pos + 2);
            if (end == std::string_view::npos) {
                fail(ErrorKind::MalformedXml, "unterminated processing instruction");
            }
            pos = end + 2;
            return true;
        }
        if (starts_with("<!DOCTYPE") || starts_with("<!doctype")) {
            fail(ErrorKind::UnsupportedConstruct, "DOCTYPE declarations are not supported");
        }
        return false;
    }

    // Character data (including CDATA, across comments/PIs) up to the next
    // start or end tag. Entity references decoded, result untrimmed.
    std::string gather_text() {
        std::string out;
        for (;;) {
            while (!eof() && peek() != '<') {
                if (peek() == '&') {
                    out.push_back(lex_entity());
                } else {
                    out.push_back(peek());
                    ++pos;
                }
            }
            if (eof()) return out;
            if (starts_with("<![CDATA[")) {
                std::size_t end = in.find("]]>", pos + 9);
                if (end == std::string_view::npos) {
                    fail(ErrorKind::MalformedXml, "unterminated CDATA section");
                }
                out.append(in.substr(pos + 9, end - pos - 9));
                pos = end + 3;
                continue;
            }
            if (skip_misc()) continue;
            return out;
        }
    }
};

// Recursive-descent tree builder (the tree-building parse mode).
XmlNode parse_element(Cursor& c) {
    c.expect('<', "'<'");
    XmlNode node;
    node.name = c.lex_name();
    node.attributes = c.lex_attributes();
    if (c.peek() == '/') {
        ++c.pos;
        c.expect('>', "'>' after '/'");
        return node;
    }
    c.expect('>', "'>'");

    std::string raw_text;
    for (;;) {
        raw_text += c.gather_text();
        if (c.eof()) c.fail(ErrorKind::MalformedXml, "unterminated element '" + node.name + "'");
        if (c.starts_with("</")) {
            c.pos += 2;
            std::string closing = c.lex_name();
            if (closing != node.name) {
                c.fail(ErrorKind::MalformedXml,
                       "mismatched end tag '" + closing + "', expected '" + node.name + "'");
            }
            c.skip_ws();
            c.expect('>', "'>' in end tag");
            break;
        }
        node.children.push_back(parse_element(c));
    }

    std::string_view trimmed = trim(raw_text);
    if (!trimmed.empty()) {
        if (!node.children.empty()) {
            c.fail(ErrorKind::MixedContent,
                   "element '" + node.name + "' mixes text with child elements");
        }
        node.text = std::string(trimmed);
    }
    return node;
}

}  // namespace

XmlTree parse_tree(std::string_view input) {
    Cursor c{input};
    for (;;) {
        c.skip_ws();
        if (c.eof()) c.fail(ErrorKind::MalformedXml, "no root element");
        if (c.peek() != '<') c.fail(ErrorKind::MalformedXml, "text outside the root element");
        if (!c.skip_misc()) break;
    }
    XmlTree tree{parse_element(c)};
    for (;;) {
        c.skip_ws();
        if (c.eof()) return tree;
        if (c.peek() != '<') c.fail(ErrorKind::MalformedXml, "text after the root element");
        if (!c.skip_misc()) c.fail(ErrorKind::MalformedXml, "multiple root elements");
    }
}

EventReader::EventReader(std::string_view input) : input_(input) {}

void EventReader::fail(ErrorKind kind, const std::string& what) const {
    throw Error(kind, what + " (offset " + std::to_string(pos_) + ")");
}

std::optional<ParseEvent> EventReader::next() {
    Cursor c{input_, pos_};
    struct Sync {
        Cursor& c;
        std::size_t& pos;
        ~Sync() { pos = c.pos; }
    } sync{c, pos_};

    if (done_) return std::nullopt;

    // A self-closing tag produced a StartElement last call; close it now.
    if (pending_close_) {
        pending_close_ = false;
        EndElement end{open_.back()};
        open_.pop_back();
        return end;
    }

    for (;;) {
        if (open_.empty()) {
            // Prolog/epilog: only whitespace, comments, and PIs allowed.
            c.skip_ws();
            if (c.eof()) {
                if (!saw_root_) c.fail(ErrorKind::MalformedXml, "no root element");
                done_ = true;
                return std::nullopt;
            }
            if (c.peek() != '<') c.fail(ErrorKind::MalformedXml, "text outside the root element");
            if (c.skip_misc()) continue;
            if (saw_root_) c.fail(ErrorKind::MalformedXml, "multiple root elements");
        } else {
            std::string raw = c.gather_text();
            std::string_view trimmed = trim(raw);
            if (!trimmed.empty()) return Text{std::string(trimmed)};
            if (c.eof()) {
                c.fail(ErrorKind::MalformedXml, "unterminated element '" + open_.back() + "'");
            }
            if (c.starts_with("</")) {
                c.pos += 2;
                std::string closing = c.lex_name();
                if (closing != open_.back()) {
                    c.fail(ErrorKind::MalformedXml, "mismatched end tag '" + closing +
                                                        "', expected '" + open_.back() + "'");
                }
                c.skip_ws();
                c.expect('>', "'>' in end tag");
                open_.pop_back();
                return EndElement{closing};
            }
        }

        c.expect('<', "'<'");
        StartElement start;
        start.name = c.lex_name();
        start.attributes = c.lex_attributes();
        if (c.peek() == '/') {
            ++c.pos;
            c.expect('>', "'>' after '/'");
            pending_close_ = true;
        } else {
            c.expect('>', "'>'");
        }
        saw_root_ = true;
        open_.push_back(start.name);
        return start;
    }
}

std::vector<ParseEvent> parse_events(std::string_view input) {
    EventReader reader(input);
    std::vector<ParseEvent> events;
    while (auto ev = reader.next()) events.push_back(std::move(*ev));
    return events;
}

XmlTree fold_events(const std::vector<ParseEvent>& events) {
    std::vector<XmlNode> stack;
    std::optional<XmlNode> root;
    for (const auto& ev : events) {
        if (const auto* start = std::get_if<StartElement>(&ev)) {
            XmlNode node;
            node.name = start->name;
            node.attributes = start->attributes;
            stack.push_back(std::move(node));
        } else if (const auto* text = std::get_if<Text>(&ev)) {
            if (stack.empty()) throw Error(ErrorKind::MalformedXml, "text outside any element");
            XmlNode& top = stack.back();
            if (!top.children.empty()) {
                throw Error(ErrorKind::MixedContent,
                            "element '" + top.name + "' mixes text with child elements");
            }
            if (!top.text.empty()) top.text += " ";
            top.text += text->content;
        } else {
            const auto& end = std::get<EndElement>(ev);
            if (stack.empty() || stack.back().name != end.name) {
                throw Error(ErrorKind::MalformedXml, "unbalanced end tag '" + end.name + "'");
            }
            XmlNode finished = std::move(stack.back());
            stack.pop_back();
            if (!finished.text.empty() && !finished.children.empty()) {
                throw Error(ErrorKind::MixedContent,
                            "element '" + finished.name + "' mixes text with child elements");
            }
            if (stack.empty()) {
                if (root) throw Error(ErrorKind::MalformedXml, "multiple root elements");
                root = std::move(finished);
            } else {
                if (!stack.back().text.empty()) {
                    throw Error(ErrorKind::MixedContent, "element '" + stack.back().name +
                                                             "' mixes text with child elements");
                }
                stack.back().children.push_back(std::move(finished));
            }
        }
    }
    if (!stack.empty() || !root) throw Error(ErrorKind::MalformedXml, "unbalanced event sequence");
    return XmlTree{std::move(*root)};
}

namespace {

void append_escaped(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
}

void serialize_node(std::string& out, const XmlNode& node) {
    out.push_back('<');
    out += node.name;
    for (const auto& [name, value] : node.attributes) {
        out.push_back(' ');
        out += name;
        out += "=\"";
        append_escaped(out, value);
        out.push_back('"');
    }
    if (node.text.empty() && node.children.empty()) {
        out += "/>";
        return;
    }
    out.push_back('>');
    append_escaped(out, node.text);
    for (const XmlNode& child : node.children) serialize_node(out, child);
    out += "</";
    out += node.name;
    out.push_back('>');
}

}  // namespace

std::string serialize(const XmlTree& tree) {
    std::string out;
    serialize_node(out, tree.root);
    return out;
}

bool nodes_equal(const XmlNode& a, const XmlNode& b) {
    if (a.name != b.name || a.text != b.text) return false;
    if (a.attributes != b.attributes) return false;
    if (a.children.size() != b.children.size()) return false;
    return std::equal(a.children.begin(), a.children.end(), b.children.begin(), nodes_equal);
}

bool trees_equal(const XmlTree& a, const XmlTree& b) { return nodes_equal(a.root, b.root); }

}  // namespace xrec
