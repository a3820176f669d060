#include "xrec/errors.hpp"

namespace xrec {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedXml: return "MalformedXml";
        case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
        case ErrorKind::MixedContent: return "MixedContent";
        case ErrorKind::QuerySyntax: return "QuerySyntax";
        case ErrorKind::DuplicateDocument: return "DuplicateDocument";
        case ErrorKind::IdCollision: return "IdCollision";
        case ErrorKind::UnknownDocument: return "UnknownDocument";
        case ErrorKind::UnknownNode: return "UnknownNode";
        case ErrorKind::NotAnElement: return "NotAnElement";
        case ErrorKind::CorruptStore: return "CorruptStore";
        case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Error";
}

}  // namespace xrec
