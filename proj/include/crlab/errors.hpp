#pragma once

#include <stdexcept>
#include <string>

namespace crlab {

// Base class for all domain errors thrown by the library.  Each concrete
// error carries a stable `code()` string that the CLI maps into machine-
// readable error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Value outside its documented domain (non-positive where positivity is
// required, zero denominator, malformed input string, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("Domain", what) {}
};

// Grid bound too small to hold a single element, or otherwise unusable.
struct InvalidBound : Error {
    explicit InvalidBound(const std::string& what) : Error("InvalidBound", what) {}
};

// An operation needed to enumerate a set that has no finite enumeration
// (bare predicate with no declared enumeration window).
struct NotEnumerable : Error {
    explicit NotEnumerable(const std::string& what) : Error("NotEnumerable", what) {}
};

// An enumeration would exceed the configured budget.
struct SizeLimit : Error {
    explicit SizeLimit(const std::string& what) : Error("SizeLimit", what) {}
};

// A decay certificate is inconsistent with the sequence it claims to bound.
struct BadCertificate : Error {
    explicit BadCertificate(const std::string& what) : Error("BadCertificate", what) {}
};

// Structural contract violation in an input object (blocks out of order,
// empty block, word letters out of range, family larger than allowed, ...).
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

// Witness translation attempted with a shift or base offset at or beyond
// half the target radius.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error("BudgetExceeded", what) {}
};

// A composed or supplied witness failed revalidation against its set.
struct InvalidWitness : Error {
    explicit InvalidWitness(const std::string& what) : Error("InvalidWitness", what) {}
};

// Partition pipeline: no monochromatic variable word exists for the
// requested word length.
struct NoVariableWord : Error {
    explicit NoVariableWord(const std::string& what) : Error("NoVariableWord", what) {}
};

// Partition pipeline: the union set admits no base witness at half radius.
struct NoBaseWitness : Error {
    explicit NoBaseWitness(const std::string& what) : Error("NoBaseWitness", what) {}
};

// Partition pipeline: an assembled witness failed its final revalidation.
// This always indicates an internal defect, never bad user input.
struct ValidationFailed : Error {
    explicit ValidationFailed(const std::string& what) : Error("ValidationFailed", what) {}
};

// Product construction: no finite index set lands in both target sets
// within the scanned range.
struct NoCommonIndexSet : Error {
    explicit NoCommonIndexSet(const std::string& what) : Error("NoCommonIndexSet", what) {}
};

// Scenario file missing a required field, or field of the wrong shape.
struct BadScenario : Error {
    explicit BadScenario(const std::string& what) : Error("BadScenario", what) {}
};

// Scenario task does not match the invoked subcommand, or csv export was
// requested for a task that has no tabular form.
struct UnsupportedTask : Error {
    explicit UnsupportedTask(const std::string& what) : Error("UnsupportedTask", what) {}
};

} // namespace crlab
