#pragma once

#include <stdexcept>
#include <string>

namespace xrec {

enum class ErrorKind {
    MalformedXml,
    UnsupportedConstruct,
    MixedContent,
    QuerySyntax,
    DuplicateDocument,
    IdCollision,
    UnknownDocument,
    UnknownNode,
    NotAnElement,
    CorruptStore,
    IoFailure,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace xrec
