#pragma once

#include <string>
#include <vector>

#include "xrec/shred.hpp"

namespace xrec::testing {

// The employee sample document as printed in the source XML (capitalized
// element names).
inline const std::string kEmployeeXml = R"(<?xml version="1.0" encoding="UTF-8"?>
<Personnel>
  <Employee type="permanent">
    <Name>Seagull</Name>
    <Id>3674</Id>
    <Age>34</Age>
  </Employee>
  <Employee type="contract">
    <Name>Robin</Name>
    <Id>3675</Id>
    <Age>25</Age>
  </Employee>
  <Employee type="permanent">
    <Name>Crow</Name>
    <Id>3676</Id>
    <Age>28</Age>
  </Employee>
</Personnel>
)";

// The same document with the tag names and attribute values used by the
// golden row tables ("Personal.xml"). This is the fixture the golden
// tag_structure / tag_value rows below are derived from.
inline const std::string kGoldenXml = R"(<?xml version="1.0" encoding="UTF-8"?>
<personal>
  <Employee type="Permanent">
    <name>Seagull</name>
    <id>3674</id>
    <age>34</age>
  </Employee>
  <Employee type="Contract">
    <name>Robin</name>
    <id>3675</id>
    <age>25</age>
  </Employee>
  <Employee type="Permanent">
    <name>Crow</name>
    <id>3676</id>
    <age>28</age>
  </Employee>
</personal>
)";

inline const std::string kGoldenDocName = "Personal.xml";

inline std::vector<StructRow> golden_structure_rows() {
    return {
        {"Personal.xml", 1, 1}, {"personal", 2, 1}, {"Employee", 3, 2}, {"type", 4, 3},
        {"name", 5, 3},         {"id", 6, 3},       {"age", 7, 3},      {"Employee", 8, 2},
        {"type", 9, 8},         {"name", 10, 8},    {"id", 11, 8},      {"age", 12, 8},
        {"Employee", 13, 2},    {"type", 14, 13},   {"name", 15, 13},   {"id", 16, 13},
        {"age", 17, 13},
    };
}

inline std::vector<ValueRow> golden_value_rows() {
    using enum ValueKind;
    return {
        {4, "Permanent", Attribute}, {5, "Seagull", Element},  {6, "3674", Element},
        {7, "34", Element},          {9, "Contract", Attribute}, {10, "Robin", Element},
        {11, "3675", Element},       {12, "25", Element},      {14, "Permanent", Attribute},
        {15, "Crow", Element},       {16, "3676", Element},    {17, "28", Element},
    };
}

// Byte-exact canonical save of a store holding only the golden document.
inline std::string golden_store_file() {
    std::string out = "#XRECURSIVE v1\n[tag_structure]\n";
    for (const StructRow& r : golden_structure_rows()) {
        out += r.tag_name + "\t" + std::to_string(r.id) + "\t" + std::to_string(r.pid) + "\n";
    }
    out += "[tag_value]\n";
    for (const ValueRow& v : golden_value_rows()) {
        out += std::to_string(v.tag_id) + "\t" + v.value + "\t" +
               static_cast<char>(v.kind) + "\n";
    }
    return out;
}

}  // namespace xrec::testing
