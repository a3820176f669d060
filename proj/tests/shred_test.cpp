#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "xrec/shred.hpp"

using namespace xrec;
using namespace xrec::testing;

namespace {

// Independent row-count accounting straight off the tree.
struct Counts {
    std::uint64_t elements = 0;
    std::uint64_t attributes = 0;
    std::uint64_t with_text = 0;
};

void count(const XmlNode& node, Counts& c) {
    ++c.elements;
    c.attributes += node.attributes.size();
    if (!node.text.empty()) ++c.with_text;
    for (const XmlNode& child : node.children) count(child, c);
}

}  // namespace

TEST_CASE("golden document shreds to the golden tables") {
    ShredResult shred = shred_tree(parse_tree(kGoldenXml), kGoldenDocName, 1);
    CHECK(shred.structure == golden_structure_rows());
    CHECK(shred.values == golden_value_rows());
    CHECK(shred.next_id == 18);
}

TEST_CASE("empty element document") {
    ShredResult shred = shred_tree(parse_tree("<a/>"), "d.xml", 1);
    CHECK(shred.structure == std::vector<StructRow>{{"d.xml", 1, 1}, {"a", 2, 1}});
    CHECK(shred.values.empty());
    CHECK(shred.next_id == 3);
}

TEST_CASE("hand-traced pre-order labeling") {
    ShredResult shred = shred_tree(parse_tree("<a x=\"1\"><b>t</b></a>"), "d", 1);
    CHECK(shred.structure ==
          std::vector<StructRow>{{"d", 1, 1}, {"a", 2, 1}, {"x", 3, 2}, {"b", 4, 2}});
    CHECK(shred.values ==
          std::vector<ValueRow>{{3, "1", ValueKind::Attribute}, {4, "t", ValueKind::Element}});
}

TEST_CASE("stream shred matches tree shred on the samples") {
    for (const std::string& text : {kGoldenXml, kEmployeeXml, std::string("<a/>")}) {
        EventReader reader(text);
        CHECK(shred_stream(reader, "doc", 1) == shred_tree(parse_tree(text), "doc", 1));
    }
}

TEST_CASE("stream shred rejects mixed content") {
    std::vector<ParseEvent> events{StartElement{"a", {}}, Text{"x"}, StartElement{"b", {}},
                                   EndElement{"b"}, EndElement{"a"}};
    CHECK_THROWS_AS(shred_stream(events, "d", 1), Error);
    try {
        shred_stream(events, "d", 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MixedContent);
    }
}

TEST_CASE("row counts, parent ordering and mode equivalence on random documents") {
    DocGen gen(77);
    for (int i = 0; i < 150; ++i) {
        XmlTree tree = gen.tree();
        ShredResult shred = shred_tree(tree, "doc.xml", 1);

        Counts c;
        count(tree.root, c);
        CHECK(shred.structure.size() == 1 + c.elements + c.attributes);
        CHECK(shred.values.size() == c.attributes + c.with_text);
        CHECK(shred.next_id == 1 + shred.structure.size());

        // Pre-order: every pid (except the document row's) appears earlier.
        for (std::size_t j = 1; j < shred.structure.size(); ++j) {
            const StructRow& row = shred.structure[j];
            CHECK(row.pid < row.id);
            CHECK(row.pid >= 1);
        }

        std::string text = serialize(tree);
        EventReader reader(text);
        CHECK(shred_stream(reader, "doc.xml", 1) == shred);
        CHECK(shred_tree(tree, "doc.xml", 1) == shred);  // deterministic
    }
}

TEST_CASE("start_id offsets the whole block") {
    ShredResult shred = shred_tree(parse_tree("<a/>"), "second.xml", 18);
    CHECK(shred.structure.front() == StructRow{"second.xml", 18, 18});
    CHECK(shred.structure.back() == StructRow{"a", 19, 18});
    CHECK(shred.next_id == 20);
}
