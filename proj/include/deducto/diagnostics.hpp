#pragma once

#include <stdexcept>
#include <string>

namespace deducto {

/// Source position, 1-based. line == 0 means "unknown".
struct SourceLoc {
    int line = 0;
    int col = 0;
};

enum class ErrorCode {
    // parsing
    SyntaxError,
    UnsupportedPattern,
    UnknownTrait,
    // name resolution / typing
    UnknownIdentifier,
    Redeclaration,
    NotAType,
    NoSuchField,
    NotAPointer,
    NotAClass,
    NotArithmetic,
    NotCallable,
    InvalidOperand,
    PointerToReference,
    ArityMismatch,
    RecursiveType,
    // evaluation
    NonEvaluableExpr,
    DeclvalInEvaluatedContext,
    // deduction / overloads
    CannotBindNonConstRef,
    NotDeducible,
    SubstitutionFailure,
    NoViableOverload,
    AmbiguousOverload,
    // tooling
    IoError,
    CompilerUnavailable,
};

const char* error_code_name(ErrorCode code);

/// Engine error. `detail` carries the offending name where the contract
/// requires one (e.g. UnknownIdentifier names the identifier).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string detail = {}, SourceLoc loc = {})
        : std::runtime_error(std::move(message)), code_(code), detail_(std::move(detail)), loc_(loc) {}

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }
    SourceLoc loc() const { return loc_; }

private:
    ErrorCode code_;
    std::string detail_;
    SourceLoc loc_;
};

} // namespace deducto
