// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits non-zero if any criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "xrec/bench.hpp"
#include "xrec/query.hpp"
#include "xrec/store.hpp"

using namespace xrec;
using namespace xrec::testing;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << number << " (" << name << "): " << (ok ? "PASS" : "FAIL");
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// open(save(s)) must pass the invariant sweep and re-save identically.
bool persistence_holds(const Store& store, std::string& detail) {
    std::string saved = store.save_string();
    try {
        Store reopened = Store::open_string(saved);
        reopened.check();
        if (reopened.save_string() != saved) {
            detail = "save(open(save(s))) differs from save(s)";
            return false;
        }
    } catch (const Error& e) {
        detail = e.what();
        return false;
    }
    return true;
}

Store load_golden() {
    Store store;
    store.insert_document(shred_tree(parse_tree(kGoldenXml), kGoldenDocName, 1), kGoldenDocName);
    return store;
}

void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    Store store = load_golden();
    bool ok = store.save_string() == golden_store_file();
    double elapsed = seconds_since(start);
    report(1, "golden fixture", ok && elapsed < 1.0,
           ok ? "too slow: " + std::to_string(elapsed) + "s" : "save bytes differ from fixture");
}

bool c5_ok = true;
std::string c5_detail;

void track_persistence(const Store& store) {
    if (!c5_ok) return;
    c5_ok = persistence_holds(store, c5_detail);
}

void criterion_2() {
    DocGen gen(1001);
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
        XmlTree original = parse_tree(serialize(gen.tree()));
        Store store;
        NodeId root = store.insert_document(shred_tree(original, "doc.xml", 1), "doc.xml");
        XmlTree rebuilt = parse_tree(reconstruct(store, root));
        if (!trees_equal(rebuilt, original)) ++bad;
        if (i % 50 == 0) track_persistence(store);
    }
    report(2, "round-trip over 500 random documents", bad == 0,
           std::to_string(bad) + " documents failed the round trip");
}

void criterion_3() {
    DocGen gen(2002);
    int pairs = 0;
    int bad = 0;
    for (int d = 0; d < 200; ++d) {
        XmlTree tree = gen.tree();
        Store store;
        store.insert_document(shred_tree(tree, "doc.xml", 1), "doc.xml");
        TreeOracle oracle(tree, 1);
        for (int q = 0; q < 5; ++q) {
            PathQuery query = gen.query(tree);
            ++pairs;
            if (evaluate(store, query) != oracle.evaluate(query)) ++bad;
        }
        if (d % 25 == 0) track_persistence(store);
    }
    report(3, "query oracle equivalence over " + std::to_string(pairs) + " pairs", bad == 0,
           std::to_string(bad) + " pairs disagreed with the oracle");
}

void criterion_4() {
    DocGen gen(3003);
    int bad = 0;
    auto modes_agree = [](const std::string& text) {
        EventReader reader(text);
        return shred_stream(reader, "doc.xml", 1) == shred_tree(parse_tree(text), "doc.xml", 1);
    };
    if (!modes_agree(kGoldenXml)) ++bad;
    for (int i = 0; i < 300; ++i) {
        if (!modes_agree(serialize(gen.tree()))) ++bad;
    }
    report(4, "tree/stream shred equivalence", bad == 0,
           std::to_string(bad) + " documents shredded differently per mode");
}

void criterion_5() {
    track_persistence(load_golden());
    report(5, "persistence fidelity", c5_ok, c5_detail);
}

void criterion_6() {
    Store store = load_golden();
    std::string sql = store.export_sql();
    std::istringstream in(sql);
    std::string line;
    int creates = 0;
    std::vector<StructRow> structure;
    std::vector<ValueRow> values;
    bool parse_ok = true;

    // Line-level re-parser for the emitted statements.
    auto unquote = [](const std::string& s) {
        std::string out;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == '\'') ++i;  // doubled quote
            out.push_back(s[i]);
        }
        return out;
    };
    auto fields_of = [](const std::string& stmt) {
        std::size_t open = stmt.find('(');
        std::size_t close = stmt.rfind(')');
        std::string body = stmt.substr(open + 1, close - open - 1);
        std::vector<std::string> fields;
        std::string cur;
        bool in_quote = false;
        for (char c : body) {
            if (c == '\'') in_quote = !in_quote;
            if (c == ',' && !in_quote) {
                fields.push_back(cur);
                cur.clear();
            } else if (!(c == ' ' && !in_quote && cur.empty())) {
                cur.push_back(c);
            }
        }
        fields.push_back(cur);
        return fields;
    };

    std::string first_structure_insert;
    while (std::getline(in, line)) {
        if (line.starts_with("CREATE TABLE")) {
            ++creates;
        } else if (line.starts_with("INSERT INTO tag_structure VALUES ")) {
            if (first_structure_insert.empty()) first_structure_insert = line;
            auto f = fields_of(line);
            if (f.size() != 3) { parse_ok = false; continue; }
            structure.push_back({unquote(f[0]), std::stoull(f[1]), std::stoull(f[2])});
        } else if (line.starts_with("INSERT INTO tag_value VALUES ")) {
            auto f = fields_of(line);
            if (f.size() != 3) { parse_ok = false; continue; }
            values.push_back({std::stoull(f[0]), unquote(f[1]),
                              static_cast<ValueKind>(unquote(f[2])[0])});
        } else if (!line.empty()) {
            parse_ok = false;
        }
    }

    bool ok = parse_ok && creates == 2 && structure.size() + values.size() == 29 &&
              first_structure_insert == "INSERT INTO tag_structure VALUES ('Personal.xml', 1, 1);" &&
              structure == golden_structure_rows() && values == golden_value_rows();
    report(6, "sql export", ok, "re-parsed dump does not match the store tables");
    track_persistence(store);
}

void criterion_7() {
    auto start = std::chrono::steady_clock::now();
    auto dir = std::filesystem::temp_directory_path() / "xrec_acceptance_corpus";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "golden.xml") << kGoldenXml;
    DocGen gen(4004);
    for (int i = 0; i < 5; ++i) {
        std::ofstream(dir / ("gen" + std::to_string(i) + ".xml")) << serialize(gen.tree());
    }

    std::ostringstream diag;
    auto records = run_bench(dir, 5, dir / "bench.csv", diag);

    int bad = 0;
    for (const BenchRecord& r : records) {
        std::ifstream in(dir / r.doc_name, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        XmlTree tree = parse_tree(buf.str());
        ShredResult shred = shred_tree(tree, r.doc_name, 1);
        std::uint64_t expected =
            r.mapping == "xrecursive"
                ? shred.structure.size() + shred.values.size()
                : shred_edge(tree).size();
        if (r.rows_emitted != expected) ++bad;
    }
    double elapsed = seconds_since(start);
    bool ok = records.size() == 6 * 3 && bad == 0 && elapsed < 60.0;
    report(7, "bench properties", ok,
           "records=" + std::to_string(records.size()) + " bad_rows=" + std::to_string(bad) +
               " elapsed=" + std::to_string(elapsed) + "s");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_6();
    criterion_7();
    criterion_5();  // aggregates persistence checks from the runs above
    return failures == 0 ? 0 : 1;
}
