#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "xrec/bench.hpp"
#include "xrec/query.hpp"
#include "xrec/shred.hpp"
#include "xrec/store.hpp"

namespace {

using namespace xrec;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedXml:
        case ErrorKind::UnsupportedConstruct:
        case ErrorKind::MixedContent:
            return 2;
        case ErrorKind::QuerySyntax:
            return 3;
        default:
            return 4;
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Store open_or_new(const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) return Store::open(path);
    return Store{};
}

int cmd_load(const std::string& xml_path, const std::string& store_path, std::string doc_name,
             const std::string& mode) {
    if (doc_name.empty()) doc_name = std::filesystem::path(xml_path).filename().string();
    std::string text = read_file(xml_path);
    Store store = open_or_new(store_path);

    ShredResult shred;
    if (mode == "tree") {
        shred = shred_tree(parse_tree(text), doc_name, store.next_id());
    } else {
        EventReader reader(text);
        shred = shred_stream(reader, doc_name, store.next_id());
    }
    NodeId root = store.insert_document(shred, doc_name);
    store.save(store_path);
    std::cout << "root=" << root << "\n"
              << "structure_rows=" << shred.structure.size() << "\n"
              << "value_rows=" << shred.values.size() << "\n";
    return 0;
}

int cmd_query(const std::string& store_path, const std::string& expression,
              const std::string& doc_scope, const std::string& output) {
    Store store = Store::open(store_path);
    PathQuery query = parse_query(expression);
    if (!doc_scope.empty()) query.doc_scope = doc_scope;
    for (const Match& m : evaluate(store, query)) {
        if (output == "ids") {
            std::cout << m.node_id << "\n";
        } else if (output == "values") {
            std::cout << m.node_id << "\t" << m.value.value_or("") << "\n";
        } else {
            const ValueRow* vr = store.value(m.node_id);
            if (vr && vr->kind == ValueKind::Attribute) {
                std::cout << store.row(m.node_id)->tag_name << "=\"" << vr->value << "\"\n";
            } else {
                std::cout << reconstruct(store, m.node_id) << "\n";
            }
        }
    }
    return 0;
}

int cmd_export(const std::string& store_path, const std::string& doc_name,
               const std::string& format) {
    Store store = Store::open(store_path);
    if (format == "sql") {
        std::cout << store.export_sql();
        return 0;
    }
    auto root = store.doc_root(doc_name);
    if (!root) throw Error(ErrorKind::UnknownDocument, "document '" + doc_name + "' not in store");
    std::cout << reconstruct(store, *root) << "\n";
    return 0;
}

int cmd_stats(const std::string& store_path) {
    StoreStats s = Store::open(store_path).stats();
    std::cout << "docs=" << s.doc_count << "\n"
              << "structure_rows=" << s.structure_row_count << "\n"
              << "value_rows=" << s.value_row_count << "\n"
              << "file_bytes=" << s.file_bytes << "\n";
    return 0;
}

int cmd_drop(const std::string& store_path, const std::string& doc_name) {
    Store store = Store::open(store_path);
    std::uint64_t removed = store.drop_document(doc_name);
    store.save(store_path);
    std::cout << "removed=" << removed << "\n";
    return 0;
}

int cmd_bench(const std::string& corpus_dir, std::uint32_t repetitions,
              const std::string& output_path) {
    run_bench(corpus_dir, repetitions, output_path, std::cerr);
    std::cout << "wrote " << output_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XML-to-relational store with recursive parent-id labeling"};
    app.require_subcommand(1);

    std::string xml_path, store_path, doc_name, mode = "stream";
    auto* load = app.add_subcommand("load", "shred an XML file into a store");
    load->add_option("xml", xml_path, "XML file to load")->required();
    load->add_option("--store", store_path, "store file")->required();
    load->add_option("--name", doc_name, "document name (default: file base name)");
    load->add_option("--mode", mode, "parse mode")->check(CLI::IsMember({"tree", "stream"}));

    std::string expression, doc_scope, output = "values";
    auto* query = app.add_subcommand("query", "evaluate a path expression");
    query->add_option("expression", expression, "path expression")->required();
    query->add_option("--store", store_path, "store file")->required();
    query->add_option("--doc", doc_scope, "restrict to one document");
    query->add_option("--output", output, "output form")
        ->check(CLI::IsMember({"ids", "values", "xml"}));

    std::string format = "xml";
    auto* exp = app.add_subcommand("export", "export a document or the SQL dump");
    exp->add_option("--store", store_path, "store file")->required();
    exp->add_option("--doc", doc_name, "document name (required for --format xml)");
    exp->add_option("--format", format, "export format")->check(CLI::IsMember({"xml", "sql"}));

    auto* stats = app.add_subcommand("stats", "print store statistics");
    stats->add_option("--store", store_path, "store file")->required();

    auto* drop = app.add_subcommand("drop", "remove a document from a store");
    drop->add_option("--store", store_path, "store file")->required();
    drop->add_option("--doc", doc_name, "document name")->required();

    std::string corpus_dir, bench_out = "bench.csv";
    std::uint32_t repetitions = 5;
    auto* bench = app.add_subcommand("bench", "run the shredding benchmark");
    bench->add_option("corpus", corpus_dir, "directory of XML files")->required();
    bench->add_option("--reps", repetitions, "timed repetitions per file")
        ->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (load->parsed()) return cmd_load(xml_path, store_path, doc_name, mode);
        if (query->parsed()) return cmd_query(store_path, expression, doc_scope, output);
        if (exp->parsed()) {
            if (format == "xml" && doc_name.empty()) {
                std::cerr << "export --format xml requires --doc\n";
                return 1;
            }
            return cmd_export(store_path, doc_name, format);
        }
        if (stats->parsed()) return cmd_stats(store_path);
        if (drop->parsed()) return cmd_drop(store_path, doc_name);
        if (bench->parsed()) return cmd_bench(corpus_dir, repetitions, bench_out);
    } catch (const xrec::Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 4;
    }
    return 1;
}
