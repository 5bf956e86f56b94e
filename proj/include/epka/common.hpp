#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace epka {

enum class ErrorKind {
    NonComposable,
    DegreeOutOfRange,
    UnknownVertex,
    UnknownEdge,
    UnknownElement,
    MixedGroups,
    MixedSystems,
    NotHomogeneous,
    DegreeTooSmall,
    DepthTooSmall,
    NotPseudoFree,
    NotSingleVertex,
    NotInvariantSet,
    NonTerminating,
    Overflow,
    SchemaError,
    ParseError,
    ValidationError,
};

const char* to_string(ErrorKind kind);

// Single exception type; `kind` mirrors the error taxonomy of the public API.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Report-valued validation: a list of named violations; empty means valid.
struct ValidationIssue {
    std::string rule;     // e.g. "no-sources", "cocycle-law"
    std::string detail;
};

class ValidationReport {
public:
    bool ok() const { return issues_.empty(); }
    void add(std::string rule, std::string detail) {
        issues_.push_back({std::move(rule), std::move(detail)});
    }
    void merge(const ValidationReport& other) {
        issues_.insert(issues_.end(), other.issues_.begin(), other.issues_.end());
    }
    const std::vector<ValidationIssue>& issues() const { return issues_; }
    std::string summary() const;

private:
    std::vector<ValidationIssue> issues_;
};

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

}  // namespace epka
