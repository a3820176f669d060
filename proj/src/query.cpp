#include "xrec/query.hpp"

#include <cctype>

namespace xrec {

namespace {

bool is_query_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
           c == ':';
}

struct QueryParser {
    const std::string& in;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::QuerySyntax, what + " at position " + std::to_string(pos));
    }

    bool eof() const { return pos >= in.size(); }
    char peek() const { return in[pos]; }

    bool consume(char c) {
        if (eof() || peek() != c) return false;
        ++pos;
        return true;
    }

    std::string name() {
        std::size_t start = pos;
        while (!eof() && is_query_name_char(peek())) ++pos;
        if (pos == start) fail("expected a name");
        return in.substr(start, pos - start);
    }

    // '...' with '' encoding a literal quote.
    std::string quoted_literal() {
        if (!consume('\'')) fail("expected quoted literal");
        std::string out;
        for (;;) {
            if (eof()) fail("unterminated literal");
            char c = in[pos++];
            if (c == '\'') {
                if (!eof() && peek() == '\'') {
                    out.push_back('\'');
                    ++pos;
                } else {
                    return out;
                }
            } else {
                out.push_back(c);
            }
        }
    }

    Axis axis() {
        if (!consume('/')) fail("expected '/'");
        return consume('/') ? Axis::DescendantOrSelf : Axis::Child;
    }

    Step step(Axis ax) {
        Step s;
        s.axis = ax;
        if (consume('@')) {
            s.test = {true, name()};
            if (!eof() && peek() == '[') fail("predicates are not allowed on '@' steps");
            return s;
        }
        s.test = {false, name()};
        if (consume('[')) {
            Predicate pred;
            pred.lhs_is_attribute = consume('@');
            pred.name = name();
            if (!consume('=')) fail("expected '=' in predicate");
            pred.value = quoted_literal();
            if (!consume(']')) fail("unclosed predicate");
            s.predicate = pred;
        }
        return s;
    }
};

}  // namespace

PathQuery parse_query(const std::string& expression) {
    QueryParser p{expression};
    if (p.eof()) p.fail("empty expression");
    PathQuery query;
    do {
        Axis ax = p.axis();
        if (!query.steps.empty() && query.steps.back().test.is_attribute) {
            p.fail("'@' step must be the last step");
        }
        query.steps.push_back(p.step(ax));
    } while (!p.eof() && p.peek() == '/');
    if (!p.eof()) p.fail("unexpected trailing input");
    return query;
}

namespace {

class Evaluator {
public:
    Evaluator(const Store& store, const PathQuery& query) : store_(store), query_(query) {
        if (query_.doc_scope) {
            auto root = store_.doc_root(*query_.doc_scope);
            if (!root) {
                throw Error(ErrorKind::UnknownDocument,
                            "document '" + *query_.doc_scope + "' not in store");
            }
            scope_root_ = *root;
        }
    }

    std::vector<Match> run() {
        std::vector<Match> out;
        const Step& last = query_.steps.back();
        for (NodeId id : store_.by_name(last.test.name)) {
            if (!matches_step(id, query_.steps.size() - 1)) continue;
            if (!chain_matches(id, query_.steps.size() - 1)) continue;
            const ValueRow* vr = store_.value(id);
            out.push_back({id, vr ? std::optional(vr->value) : std::nullopt});
        }
        return out;  // by_name is ascending, so matches are too
    }

private:
    const Store& store_;
    const PathQuery& query_;
    std::optional<NodeId> scope_root_;

    bool is_doc_row(const StructRow& row) const { return row.pid == row.id; }
    bool is_attribute(NodeId id) const {
        const ValueRow* vr = store_.value(id);
        return vr && vr->kind == ValueKind::Attribute;
    }

    bool matches_step(NodeId id, std::size_t index) const {
        const Step& step = query_.steps[index];
        const StructRow* row = store_.row(id);
        if (!row || row->tag_name != step.test.name) return false;
        if (step.test.is_attribute) {
            if (!is_attribute(id)) return false;
        } else {
            if (is_doc_row(*row) || is_attribute(id)) return false;
        }
        return !step.predicate || predicate_holds(id, *step.predicate);
    }

    bool predicate_holds(NodeId id, const Predicate& pred) const {
        for (NodeId child : store_.children(id)) {
            const StructRow* row = store_.row(child);
            if (row->tag_name != pred.name) continue;
            const ValueRow* vr = store_.value(child);
            if (pred.lhs_is_attribute) {
                if (vr && vr->kind == ValueKind::Attribute && vr->value == pred.value) return true;
            } else {
                if (vr && vr->kind == ValueKind::Element && vr->value == pred.value) return true;
            }
        }
        return false;
    }

    // The node at `id` matched steps[index]; can the pid chain above it
    // satisfy the earlier steps and end at the (scoped) document row?
    bool chain_matches(NodeId id, std::size_t index) const {
        const Step& step = query_.steps[index];
        NodeId parent = store_.row(id)->pid;
        if (index == 0) {
            if (step.axis == Axis::Child) {
                const StructRow* prow = store_.row(parent);
                if (!is_doc_row(*prow)) return false;
                return !scope_root_ || parent == *scope_root_;
            }
            return !scope_root_ || doc_root_of(id) == *scope_root_;
        }
        if (step.axis == Axis::Child) {
            if (is_doc_row(*store_.row(parent))) return false;
            return matches_step(parent, index - 1) && chain_matches(parent, index - 1);
        }
        // Descendant step: some proper ancestor below the document row
        // must carry the previous step.
        for (NodeId cur = parent; !is_doc_row(*store_.row(cur)); cur = store_.row(cur)->pid) {
            if (matches_step(cur, index - 1) && chain_matches(cur, index - 1)) return true;
        }
        return false;
    }

    NodeId doc_root_of(NodeId id) const {
        NodeId cur = id;
        while (!is_doc_row(*store_.row(cur))) cur = store_.row(cur)->pid;
        return cur;
    }
};

XmlNode rebuild_node(const Store& store, NodeId id) {
    XmlNode node;
    node.name = store.row(id)->tag_name;
    if (const ValueRow* vr = store.value(id); vr && vr->kind == ValueKind::Element) {
        node.text = vr->value;
    }
    for (NodeId child : store.children(id)) {
        const ValueRow* vr = store.value(child);
        if (vr && vr->kind == ValueKind::Attribute) {
            node.attributes.emplace_back(store.row(child)->tag_name, vr->value);
        } else {
            node.children.push_back(rebuild_node(store, child));
        }
    }
    return node;
}

}  // namespace

std::vector<Match> evaluate(const Store& store, const PathQuery& query) {
    return Evaluator(store, query).run();
}

XmlTree reconstruct_tree(const Store& store, NodeId node_id) {
    const StructRow* row = store.row(node_id);
    if (!row) throw Error(ErrorKind::UnknownNode, "no node with id " + std::to_string(node_id));
    if (const ValueRow* vr = store.value(node_id); vr && vr->kind == ValueKind::Attribute) {
        throw Error(ErrorKind::NotAnElement,
                    "id " + std::to_string(node_id) + " is an attribute");
    }
    if (row->pid == row->id) {
        auto roots = store.children(node_id);
        if (roots.size() != 1) {
            throw Error(ErrorKind::CorruptStore,
                        "document row " + std::to_string(node_id) + " has no single root");
        }
        return XmlTree{rebuild_node(store, roots.front())};
    }
    return XmlTree{rebuild_node(store, node_id)};
}

std::string reconstruct(const Store& store, NodeId node_id) {
    return serialize(reconstruct_tree(store, node_id));
}

}  // namespace xrec
