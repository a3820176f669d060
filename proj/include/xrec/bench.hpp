#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "xrec/shred.hpp"

namespace xrec {

/// Row of the Edge baseline mapping: one `ref` edge per element and per
/// attribute (virtual root has id 0), one `val` edge per text or
/// attribute value.
struct EdgeRow {
    NodeId source = 0;
    std::uint32_t ordinal = 0;  // 1-based position among the source's edges
    std::string name;
    bool is_ref = false;
    NodeId target = 0;   // valid when is_ref
    std::string value;   // valid when !is_ref

    bool operator==(const EdgeRow&) const = default;
};

std::vector<EdgeRow> shred_edge(const XmlTree& tree);

/// Tab-delimited dump used for the edge mapping's size figure.
std::string edge_dump(const std::vector<EdgeRow>& edges);

struct BenchRecord {
    std::string doc_name;
    std::uint64_t node_count = 0;  // elements + attributes
    std::string mapping;           // "xrecursive" | "edge"
    std::string parse_mode;        // "tree" | "stream"
    double shred_millis = 0.0;     // median over the requested repetitions
    std::uint64_t store_bytes = 0;
    std::uint64_t rows_emitted = 0;
};

/// Runs every *.xml file in corpus_dir through xrecursive (tree and
/// stream modes) and the edge baseline (tree only), timing each shred
/// `repetitions` times and writing a CSV to output_path. Malformed files
/// are skipped with a diagnostic on `diagnostics`.
std::vector<BenchRecord> run_bench(const std::filesystem::path& corpus_dir,
                                   std::uint32_t repetitions,
                                   const std::filesystem::path& output_path,
                                   std::ostream& diagnostics);

std::string bench_csv(const std::vector<BenchRecord>& records);

}  // namespace xrec
