#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xrec/shred.hpp"

namespace xrec {

struct StoreStats {
    std::uint64_t doc_count = 0;
    std::uint64_t structure_row_count = 0;
    std::uint64_t value_row_count = 0;
    std::uint64_t file_bytes = 0;
};

/// The two tables plus the indexes that make parent-id recursion cheap:
/// children (pid -> ids), by_name (tagName -> ids), and the document
/// registry. Document rows are the self-referencing rows (id == pid).
///
/// Single writer, multiple readers: mutations need exclusive access.
class Store {
public:
    Store() = default;

    NodeId insert_document(const ShredResult& shred, const std::string& doc_name);
    std::uint64_t drop_document(const std::string& doc_name);

    const StructRow* row(NodeId id) const;
    std::vector<NodeId> children(NodeId id) const;
    const ValueRow* value(NodeId id) const;
    std::vector<NodeId> by_name(const std::string& tag_name) const;
    std::optional<NodeId> doc_root(const std::string& doc_name) const;

    const std::map<std::string, NodeId>& docs() const { return docs_; }
    NodeId next_id() const { return next_id_; }

    std::string save_string() const;
    std::uint64_t save(const std::filesystem::path& destination) const;
    static Store open_string(const std::string& content);
    static Store open(const std::filesystem::path& source);

    std::string export_sql() const;
    StoreStats stats() const;

    /// Full invariant sweep; throws CorruptStore on the first violation.
    void check() const;

private:
    std::map<NodeId, StructRow> rows_;
    std::map<NodeId, std::vector<NodeId>> children_;
    std::map<std::string, std::vector<NodeId>> by_name_;
    std::map<NodeId, ValueRow> values_;
    std::map<std::string, NodeId> docs_;
    NodeId next_id_ = 1;

    void index_row(const StructRow& row);
    void unindex_row(const StructRow& row);
};

}  // namespace xrec
