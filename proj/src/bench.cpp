#include "xrec/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "xrec/shred.hpp"
#include "xrec/store.hpp"

namespace xrec {

namespace {

struct EdgeShredder {
    std::vector<EdgeRow> edges;
    NodeId next_id = 1;
    std::map<NodeId, std::uint32_t> ordinals;

    std::uint32_t next_ordinal(NodeId source) { return ++ordinals[source]; }

    void ref(NodeId source, const std::string& name, NodeId target) {
        edges.push_back({source, next_ordinal(source), name, true, target, {}});
    }

    void val(NodeId source, const std::string& name, const std::string& value) {
        edges.push_back({source, next_ordinal(source), name, false, 0, value});
    }

    void element(const XmlNode& node, NodeId parent) {
        NodeId id = next_id++;
        ref(parent, node.name, id);
        for (const auto& [attr_name, attr_value] : node.attributes) {
            NodeId attr_id = next_id++;
            ref(id, attr_name, attr_id);
            val(attr_id, attr_name, attr_value);
        }
        if (!node.text.empty()) val(id, node.name, node.text);
        for (const XmlNode& child : node.children) element(child, id);
    }
};

void count_nodes(const XmlNode& node, std::uint64_t& count) {
    count += 1 + node.attributes.size();
    for (const XmlNode& child : node.children) count_nodes(child, count);
}

double median(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    std::size_t n = samples.size();
    return n % 2 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2.0;
}

template <typename F>
double timed_median(std::uint32_t repetitions, F&& work) {
    std::vector<double> samples;
    samples.reserve(repetitions);
    for (std::uint32_t i = 0; i < repetitions; ++i) {
        auto begin = std::chrono::steady_clock::now();
        work();
        auto end = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(end - begin).count());
    }
    return median(std::move(samples));
}

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos) return s;
    return '"' + s + '"';
}

}  // namespace

std::vector<EdgeRow> shred_edge(const XmlTree& tree) {
    EdgeShredder s;
    s.element(tree.root, 0);
    return s.edges;
}

std::string edge_dump(const std::vector<EdgeRow>& edges) {
    std::string out;
    for (const EdgeRow& e : edges) {
        out += std::to_string(e.source);
        out += '\t';
        out += std::to_string(e.ordinal);
        out += '\t';
        out += e.name;
        out += '\t';
        if (e.is_ref) {
            out += "ref\t";
            out += std::to_string(e.target);
        } else {
            out += "val\t";
            out += e.value;
        }
        out += '\n';
    }
    return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::string out = "doc,nodes,mapping,mode,shred_ms,store_bytes,rows\n";
    for (const BenchRecord& r : records) {
        char ms[32];
        std::snprintf(ms, sizeof(ms), "%.3f", r.shred_millis);
        out += csv_field(r.doc_name) + ',' + std::to_string(r.node_count) + ',' + r.mapping + ',' +
               r.parse_mode + ',' + ms + ',' + std::to_string(r.store_bytes) + ',' +
               std::to_string(r.rows_emitted) + '\n';
    }
    return out;
}

std::vector<BenchRecord> run_bench(const std::filesystem::path& corpus_dir,
                                   std::uint32_t repetitions,
                                   const std::filesystem::path& output_path,
                                   std::ostream& diagnostics) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".xml") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) diagnostics << "warning: no .xml files in " << corpus_dir << "\n";

    std::vector<BenchRecord> records;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorKind::IoFailure, "cannot read " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        std::string doc_name = path.filename().string();

        XmlTree tree;
        try {
            tree = parse_tree(text);
        } catch (const Error& e) {
            diagnostics << "skipping " << doc_name << ": " << e.what() << "\n";
            continue;
        }
        std::uint64_t nodes = 0;
        count_nodes(tree.root, nodes);

        ShredResult shred = shred_tree(tree, doc_name, 1);
        Store store;
        store.insert_document(shred, doc_name);
        std::uint64_t xr_bytes = store.save_string().size();
        std::uint64_t xr_rows = shred.structure.size() + shred.values.size();

        double tree_ms = timed_median(repetitions, [&] {
            ShredResult r = shred_tree(parse_tree(text), doc_name, 1);
            (void)r;
        });
        records.push_back({doc_name, nodes, "xrecursive", "tree", tree_ms, xr_bytes, xr_rows});

        double stream_ms = timed_median(repetitions, [&] {
            EventReader reader(text);
            ShredResult r = shred_stream(reader, doc_name, 1);
            (void)r;
        });
        records.push_back({doc_name, nodes, "xrecursive", "stream", stream_ms, xr_bytes, xr_rows});

        std::vector<EdgeRow> edges = shred_edge(tree);
        std::uint64_t edge_bytes = edge_dump(edges).size();
        double edge_ms = timed_median(repetitions, [&] {
            std::vector<EdgeRow> r = shred_edge(parse_tree(text));
            (void)r;
        });
        records.push_back({doc_name, nodes, "edge", "tree", edge_ms, edge_bytes, edges.size()});

        // Reported, not asserted: 2009-era SAX-vs-DOM ratios need not hold here.
        diagnostics << doc_name << ": stream/tree time ratio "
                    << (tree_ms > 0 ? stream_ms / tree_ms : 0.0) << "\n";
    }

    std::string csv = bench_csv(records);
    std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot write " + output_path.string());
    out << csv;
    return records;
}

}  // namespace xrec
