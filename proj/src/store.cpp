#include "xrec/store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace xrec {

namespace {

std::string escape_field(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape_field(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out.push_back(s[i]);
            continue;
        }
        if (i + 1 >= s.size()) throw Error(ErrorKind::CorruptStore, "dangling escape");
        switch (s[++i]) {
            case '\\': out.push_back('\\'); break;
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            default: throw Error(ErrorKind::CorruptStore, "bad escape sequence");
        }
    }
    return out;
}

NodeId parse_id(const std::string& s) {
    NodeId value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) {
        throw Error(ErrorKind::CorruptStore, "bad id '" + s + "'");
    }
    return value;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string sql_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out.push_back(c);
        if (c == '\'') out.push_back('\'');
    }
    out.push_back('\'');
    return out;
}

constexpr std::string_view kHeader = "#XRECURSIVE v1";

}  // namespace

void Store::index_row(const StructRow& row) {
    if (row.pid != row.id) {
        auto& siblings = children_[row.pid];
        siblings.insert(std::upper_bound(siblings.begin(), siblings.end(), row.id), row.id);
    }
    auto& named = by_name_[row.tag_name];
    named.insert(std::upper_bound(named.begin(), named.end(), row.id), row.id);
}

void Store::unindex_row(const StructRow& row) {
    if (row.pid != row.id) {
        auto it = children_.find(row.pid);
        if (it != children_.end()) {
            std::erase(it->second, row.id);
            if (it->second.empty()) children_.erase(it);
        }
    }
    auto it = by_name_.find(row.tag_name);
    if (it != by_name_.end()) {
        std::erase(it->second, row.id);
        if (it->second.empty()) by_name_.erase(it);
    }
}

NodeId Store::insert_document(const ShredResult& shred, const std::string& doc_name) {
    if (docs_.contains(doc_name)) {
        throw Error(ErrorKind::DuplicateDocument, "document '" + doc_name + "' already stored");
    }
    if (shred.structure.empty()) throw Error(ErrorKind::IdCollision, "empty shred result");
    const StructRow& doc_row = shred.structure.front();
    if (doc_row.id != next_id_ || doc_row.pid != doc_row.id || doc_row.tag_name != doc_name) {
        throw Error(ErrorKind::IdCollision,
                    "shred result not aligned with store id sequence (expected start id " +
                        std::to_string(next_id_) + ")");
    }
    // Ids in a shred are consecutive from start, so alignment with next_id
    // guarantees no collision; commit is all-or-nothing from here.
    for (const StructRow& row : shred.structure) {
        rows_.emplace(row.id, row);
        index_row(row);
    }
    for (const ValueRow& vr : shred.values) values_.emplace(vr.tag_id, vr);
    docs_.emplace(doc_name, doc_row.id);
    next_id_ = shred.next_id;
    return doc_row.id;
}

std::uint64_t Store::drop_document(const std::string& doc_name) {
    auto doc = docs_.find(doc_name);
    if (doc == docs_.end()) {
        throw Error(ErrorKind::UnknownDocument, "document '" + doc_name + "' not in store");
    }
    std::vector<NodeId> pending{doc->second};
    std::vector<NodeId> subtree;
    while (!pending.empty()) {
        NodeId id = pending.back();
        pending.pop_back();
        subtree.push_back(id);
        auto kids = children_.find(id);
        if (kids != children_.end()) {
            pending.insert(pending.end(), kids->second.begin(), kids->second.end());
        }
    }
    for (NodeId id : subtree) {
        auto it = rows_.find(id);
        unindex_row(it->second);
        rows_.erase(it);
        values_.erase(id);
    }
    docs_.erase(doc);
    return subtree.size();
}

const StructRow* Store::row(NodeId id) const {
    auto it = rows_.find(id);
    return it == rows_.end() ? nullptr : &it->second;
}

std::vector<NodeId> Store::children(NodeId id) const {
    auto it = children_.find(id);
    return it == children_.end() ? std::vector<NodeId>{} : it->second;
}

const ValueRow* Store::value(NodeId id) const {
    auto it = values_.find(id);
    return it == values_.end() ? nullptr : &it->second;
}

std::vector<NodeId> Store::by_name(const std::string& tag_name) const {
    auto it = by_name_.find(tag_name);
    return it == by_name_.end() ? std::vector<NodeId>{} : it->second;
}

std::optional<NodeId> Store::doc_root(const std::string& doc_name) const {
    auto it = docs_.find(doc_name);
    if (it == docs_.end()) return std::nullopt;
    return it->second;
}

std::string Store::save_string() const {
    std::string out(kHeader);
    out += "\n[tag_structure]\n";
    for (const auto& [id, row] : rows_) {
        out += escape_field(row.tag_name);
        out += '\t';
        out += std::to_string(row.id);
        out += '\t';
        out += std::to_string(row.pid);
        out += '\n';
    }
    out += "[tag_value]\n";
    for (const auto& [id, vr] : values_) {
        out += std::to_string(vr.tag_id);
        out += '\t';
        out += escape_field(vr.value);
        out += '\t';
        out += static_cast<char>(vr.kind);
        out += '\n';
    }
    return out;
}

std::uint64_t Store::save(const std::filesystem::path& destination) const {
    std::string content = save_string();
    std::ofstream file(destination, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::IoFailure, "cannot write " + destination.string());
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.close();
    if (!file) throw Error(ErrorKind::IoFailure, "short write to " + destination.string());
    return content.size();
}

Store Store::open_string(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) {
            throw Error(ErrorKind::CorruptStore, std::string("missing ") + what);
        }
    };
    next_line("header");
    if (line != kHeader) throw Error(ErrorKind::CorruptStore, "bad header '" + line + "'");
    next_line("[tag_structure] section");
    if (line != "[tag_structure]") {
        throw Error(ErrorKind::CorruptStore, "expected [tag_structure]");
    }

    Store store;
    NodeId max_id = 0;
    while (std::getline(in, line)) {
        if (line == "[tag_value]") break;
        auto fields = split_tabs(line);
        if (fields.size() != 3) throw Error(ErrorKind::CorruptStore, "bad structure row: " + line);
        StructRow row{unescape_field(fields[0]), parse_id(fields[1]), parse_id(fields[2])};
        if (store.rows_.contains(row.id)) {
            throw Error(ErrorKind::CorruptStore, "duplicate id " + std::to_string(row.id));
        }
        store.rows_.emplace(row.id, row);
        store.index_row(row);
        if (row.pid == row.id) {
            if (store.docs_.contains(row.tag_name)) {
                throw Error(ErrorKind::CorruptStore, "duplicate document '" + row.tag_name + "'");
            }
            store.docs_.emplace(row.tag_name, row.id);
        }
        max_id = std::max(max_id, row.id);
    }
    if (line != "[tag_value]") throw Error(ErrorKind::CorruptStore, "missing [tag_value] section");
    while (std::getline(in, line)) {
        auto fields = split_tabs(line);
        if (fields.size() != 3) throw Error(ErrorKind::CorruptStore, "bad value row: " + line);
        if (fields[2] != "A" && fields[2] != "E") {
            throw Error(ErrorKind::CorruptStore, "invalid value kind '" + fields[2] + "'");
        }
        ValueRow vr{parse_id(fields[0]), unescape_field(fields[1]),
                    static_cast<ValueKind>(fields[2][0])};
        if (store.values_.contains(vr.tag_id)) {
            throw Error(ErrorKind::CorruptStore,
                        "duplicate value for id " + std::to_string(vr.tag_id));
        }
        store.values_.emplace(vr.tag_id, vr);
    }
    store.next_id_ = max_id + 1;
    store.check();
    return store;
}

Store Store::open(const std::filesystem::path& source) {
    std::ifstream file(source, std::ios::binary);
    if (!file) throw Error(ErrorKind::IoFailure, "cannot read " + source.string());
    std::ostringstream buf;
    buf << file.rdbuf();
    return open_string(buf.str());
}

std::string Store::export_sql() const {
    std::string out =
        "CREATE TABLE tag_structure(tagName VARCHAR, id INTEGER PRIMARY KEY, pId INTEGER);\n"
        "CREATE TABLE tag_value(tagId INTEGER, value VARCHAR, type CHAR(1));\n";
    for (const auto& [id, row] : rows_) {
        out += "INSERT INTO tag_structure VALUES (" + sql_quote(row.tag_name) + ", " +
               std::to_string(row.id) + ", " + std::to_string(row.pid) + ");\n";
    }
    for (const auto& [id, vr] : values_) {
        out += "INSERT INTO tag_value VALUES (" + std::to_string(vr.tag_id) + ", " +
               sql_quote(vr.value) + ", '" + static_cast<char>(vr.kind) + "');\n";
    }
    return out;
}

StoreStats Store::stats() const {
    StoreStats s;
    s.doc_count = docs_.size();
    s.structure_row_count = rows_.size();
    s.value_row_count = values_.size();
    s.file_bytes = save_string().size();
    return s;
}

void Store::check() const {
    auto corrupt = [](const std::string& what) -> void {
        throw Error(ErrorKind::CorruptStore, what);
    };
    std::map<NodeId, std::vector<NodeId>> children;
    std::map<std::string, std::vector<NodeId>> by_name;
    for (const auto& [id, row] : rows_) {
        if (row.id != id) corrupt("row keyed under wrong id");
        if (row.pid > row.id) corrupt("pid exceeds id at " + std::to_string(id));
        if (row.pid == row.id) {
            auto doc = docs_.find(row.tag_name);
            if (doc == docs_.end() || doc->second != id) {
                corrupt("self-referencing row " + std::to_string(id) + " not registered as a document");
            }
        } else {
            if (!rows_.contains(row.pid)) {
                corrupt("dangling pid " + std::to_string(row.pid));
            }
            children[row.pid].push_back(id);
        }
        by_name[row.tag_name].push_back(id);
        if (id >= next_id_) corrupt("next_id not past id " + std::to_string(id));
    }
    if (children != children_) corrupt("children index out of sync");
    if (by_name != by_name_) corrupt("by_name index out of sync");
    for (const auto& [tag_id, vr] : values_) {
        if (vr.tag_id != tag_id || !rows_.contains(tag_id)) {
            corrupt("value row with dangling tag_id " + std::to_string(tag_id));
        }
    }
    for (const auto& [name, root] : docs_) {
        const StructRow* row_ptr = row(root);
        if (!row_ptr || row_ptr->pid != root || row_ptr->tag_name != name) {
            corrupt("document registry entry '" + name + "' inconsistent");
        }
    }
}

}  // namespace xrec
