#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xrec/store.hpp"

namespace xrec {

enum class Axis { Child, DescendantOrSelf };

/// Step test: a plain name matches elements only, '@name' matches
/// attributes only (attributes are the rows carrying a kind-A value).
struct StepTest {
    bool is_attribute = false;
    std::string name;
};

struct Predicate {
    bool lhs_is_attribute = false;  // [@a='v'] vs [c='v']
    std::string name;
    std::string value;
};

struct Step {
    Axis axis = Axis::Child;
    StepTest test;
    std::optional<Predicate> predicate;
};

struct PathQuery {
    std::optional<std::string> doc_scope;
    std::vector<Step> steps;
};

struct Match {
    NodeId node_id = 0;
    std::optional<std::string> value;

    bool operator==(const Match&) const = default;
};

/// Grammar: Path := ('/' | '//') Step (('/' | '//') Step)*
///          Step := Name Pred? | '@' Name
///          Pred := '[' ('@'? Name) '=' '\'' chars '\'' ']'
/// '' inside the quoted literal encodes one quote. An '@' step must be
/// last and carries no predicate.
PathQuery parse_query(const std::string& expression);

/// Bottom-up evaluation: candidates from the final step's name index,
/// then each candidate's pid chain is matched against the earlier steps
/// in reverse until it reaches the document row. Results ascend by id.
std::vector<Match> evaluate(const Store& store, const PathQuery& query);

/// Rebuilds the subtree rooted at node_id and serializes it; a document
/// row yields its root element's XML.
std::string reconstruct(const Store& store, NodeId node_id);

/// Tree form of the reconstruction, for callers that want to re-process.
XmlTree reconstruct_tree(const Store& store, NodeId node_id);

}  // namespace xrec
