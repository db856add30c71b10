#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deducto/parser.hpp"

namespace deducto {

struct Assertion {
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct Diagnostic {
    enum class Severity { Error, Note };
    Severity severity = Severity::Error;
    ErrorCode code = ErrorCode::SyntaxError;
    std::string message;
    std::string detail;
    SourceLoc loc;
};

/// One entry per declaration, in file order.
struct ReportEntry {
    std::string name;
    std::string kind;  // var | struct | function | template_function | static_assert_type | assert_value
    std::string type;  // canonical spelling of the deduced type, when applicable
    std::optional<std::string> category;  // initializer's value category, for vars
    std::vector<Assertion> assertions;
    std::vector<Diagnostic> diagnostics;

    bool ok() const;
};

struct Report {
    std::string file;
    std::vector<ReportEntry> entries;

    /// True iff no assertion failed and no error diagnostic was emitted.
    bool ok() const;
};

/// Processes declarations top to bottom, building an environment and
/// evaluating every assertion. assert_value runs the expression evaluator
/// against the accumulated integer store.
Report check(const SourceFile& file);

std::string report_to_text(const Report& report);
std::string report_to_json(const Report& report);

struct CorpusFileResult {
    std::string path;
    bool pass = false;
    std::vector<std::string> expected_errors;    // from //! expect-error: headers
    std::vector<std::string> unmatched;          // expectations that never fired
    Report report;
};

struct CorpusResult {
    std::vector<CorpusFileResult> files;
    bool ok() const;
    size_t passed() const;
};

/// Checks every .tdl file in the directory (sorted by name). A file with
/// `//! expect-error:` headers passes iff each expectation matches an error
/// diagnostic and no unexpected error remains; otherwise it passes iff its
/// report is clean. Throws IoError when the directory is missing.
CorpusResult run_corpus(const std::string& dir);

std::string corpus_to_text(const CorpusResult& result);
std::string corpus_to_json(const CorpusResult& result);

/// Expectation matching used by run_corpus, exposed for the harness tests.
bool file_passes(const SourceFile& file, const Report& report,
                 std::vector<std::string>* unmatched = nullptr,
                 std::vector<std::string>* expected = nullptr);

} // namespace deducto
