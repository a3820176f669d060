#include "xrec/shred.hpp"

namespace xrec {

namespace {

// Emits rows in labeling order; shared by both parse modes so the outputs
// stay row-for-row identical.
class Shredder {
public:
    Shredder(const std::string& doc_name, NodeId start_id) {
        result_.structure.push_back({doc_name, start_id, start_id});
        next_ = start_id + 1;
        parents_.push_back({start_id, false, false});
    }

    void on_start(const std::string& name,
                  const std::vector<std::pair<std::string, std::string>>& attributes) {
        Frame& parent = parents_.back();
        if (parent.has_text) {
            throw Error(ErrorKind::MixedContent,
                        "text and child elements under one element");
        }
        parent.has_children = true;

        NodeId id = next_++;
        result_.structure.push_back({name, id, parent.id});
        for (const auto& [attr_name, attr_value] : attributes) {
            NodeId attr_id = next_++;
            result_.structure.push_back({attr_name, attr_id, id});
            result_.values.push_back({attr_id, attr_value, ValueKind::Attribute});
        }
        parents_.push_back({id, false, false});
    }

    void on_text(const std::string& content) {
        Frame& self = parents_.back();
        if (self.has_children) {
            throw Error(ErrorKind::MixedContent,
                        "text and child elements under one element");
        }
        if (self.has_text) {
            result_.values.back().value += " " + content;
        } else {
            self.has_text = true;
            result_.values.push_back({self.id, content, ValueKind::Element});
        }
    }

    void on_end() { parents_.pop_back(); }

    ShredResult finish() {
        result_.next_id = next_;
        return std::move(result_);
    }

private:
    struct Frame {
        NodeId id;
        bool has_text;
        bool has_children;
    };

    ShredResult result_;
    std::vector<Frame> parents_;  // document row at the bottom
    NodeId next_ = 0;
};

void shred_node(Shredder& s, const XmlNode& node) {
    s.on_start(node.name, node.attributes);
    if (!node.text.empty()) s.on_text(node.text);
    for (const XmlNode& child : node.children) shred_node(s, child);
    s.on_end();
}

}  // namespace

ShredResult shred_tree(const XmlTree& tree, const std::string& doc_name, NodeId start_id) {
    Shredder s(doc_name, start_id);
    shred_node(s, tree.root);
    return s.finish();
}

ShredResult shred_stream(EventReader& events, const std::string& doc_name, NodeId start_id) {
    Shredder s(doc_name, start_id);
    while (auto ev = events.next()) {
        if (const auto* start = std::get_if<StartElement>(&*ev)) {
            s.on_start(start->name, start->attributes);
        } else if (const auto* text = std::get_if<Text>(&*ev)) {
            s.on_text(text->content);
        } else {
            s.on_end();
        }
    }
    return s.finish();
}

ShredResult shred_stream(const std::vector<ParseEvent>& events, const std::string& doc_name,
                         NodeId start_id) {
    Shredder s(doc_name, start_id);
    for (const ParseEvent& ev : events) {
        if (const auto* start = std::get_if<StartElement>(&ev)) {
            s.on_start(start->name, start->attributes);
        } else if (const auto* text = std::get_if<Text>(&ev)) {
            s.on_text(text->content);
        } else {
            s.on_end();
        }
    }
    return s.finish();
}

}  // namespace xrec
