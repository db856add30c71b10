#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deducto/ast.hpp"
#include "deducto/deduce.hpp"
#include "deducto/env.hpp"

namespace deducto {

struct VarDecl {
    std::optional<AutoPattern> auto_pattern;  // auto / const auto / auto&
    TypeExprPtr declared_type;                // set when auto_pattern is empty
    std::string name;
    ExprPtr init;                             // may be null
    SourceLoc loc;
};

struct StructDecl {
    ClassDef def;
    SourceLoc loc;
};

struct FuncDecl {
    std::string name;
    std::vector<std::string> template_params;
    FnDeclForm form;
    SourceLoc loc;

    bool is_template() const { return !template_params.empty(); }
};

struct TypeAssert {
    std::string name;
    TypeExprPtr expected;
    SourceLoc loc;
};

struct ValueAssert {
    ExprPtr expr;
    long long expected = 0;
    SourceLoc loc;
};

using Decl = std::variant<VarDecl, StructDecl, FuncDecl, TypeAssert, ValueAssert>;

struct SourceFile {
    std::string path;
    std::vector<std::string> directives;  // leading `//!` header lines, trimmed
    std::vector<Decl> decls;
};

/// Parses DSL text. Parenthesization is preserved exactly; `auto&&` and
/// `decltype(auto)` are rejected with UnsupportedPattern; unknown trait
/// names with ::type/::value are rejected with UnknownTrait. Function
/// bodies, when present, are skipped over.
SourceFile parse(std::string_view text, std::string path = "<input>");

/// Reads and parses a file; IoError if it cannot be read.
SourceFile parse_file(const std::string& path);

/// Prints a SourceFile back to DSL syntax. Reparsing the result yields a
/// structurally identical SourceFile.
std::string print_source(const SourceFile& file);

bool structurally_equal(const SourceFile& a, const SourceFile& b);
bool structurally_equal(const Decl& a, const Decl& b);

} // namespace deducto
