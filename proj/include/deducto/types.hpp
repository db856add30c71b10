#pragma once

#include <memory>
#include <string>
#include <vector>

#include "deducto/diagnostics.hpp"

namespace deducto {

/// Builtin scalar kinds. The relative conversion rank over the arithmetic
/// kinds is fixed by conversion_rank(); Void takes part in no conversion.
enum class ScalarKind {
    Bool,
    Char,
    SChar,
    UChar,
    Short,
    UShort,
    Int,
    UInt,
    Long,
    ULong,
    LongLong,
    ULongLong,
    Float,
    Double,
    LongDouble,
    Void,
};

const char* scalar_name(ScalarKind k);
bool is_integral_kind(ScalarKind k);
bool is_floating_kind(ScalarKind k);
/// Rank used by the usual-arithmetic-conversion ladder. Void has no rank.
int conversion_rank(ScalarKind k);

/// Classification every expression carries alongside its (non-reference) type.
enum class ValueCategory { Lvalue, Xvalue, Prvalue };

inline bool is_rvalue(ValueCategory c) { return c != ValueCategory::Lvalue; }
const char* category_name(ValueCategory c);

/// Immutable structural type value: scalars, class instances, pointers,
/// references and function types, with cv-qualifiers on the qualifiable
/// layers. Copies are cheap (shared immutable nodes); equality is structural.
///
/// Invariants enforced by the factories:
///  - reference nodes carry no cv and never have a reference referee
///    (reference-to-reference exists only transiently inside collapse_refs),
///  - function nodes carry no cv.
class Type {
public:
    enum class Kind { Scalar, Class, Pointer, LValueRef, RValueRef, Function };

    /// Default-constructs `void` (handy for containers).
    Type();

    static Type scalar(ScalarKind k, bool is_const = false, bool is_volatile = false);
    static Type class_type(std::string name, std::vector<Type> args = {}, bool is_const = false,
                           bool is_volatile = false);
    static Type pointer(Type pointee, bool is_const = false, bool is_volatile = false);
    static Type lvalue_ref(Type referee);
    static Type rvalue_ref(Type referee);
    static Type function(std::vector<Type> params, Type ret);

    Kind kind() const;
    bool is_scalar() const { return kind() == Kind::Scalar; }
    bool is_class() const { return kind() == Kind::Class; }
    bool is_pointer() const { return kind() == Kind::Pointer; }
    bool is_lvalue_ref() const { return kind() == Kind::LValueRef; }
    bool is_rvalue_ref() const { return kind() == Kind::RValueRef; }
    bool is_reference() const { return is_lvalue_ref() || is_rvalue_ref(); }
    bool is_function() const { return kind() == Kind::Function; }

    bool is_void() const;
    bool is_integral() const;
    bool is_floating_point() const;
    /// Integral or floating, not void; pointers and classes are not arithmetic.
    bool is_arithmetic() const;

    ScalarKind scalar_kind() const;           ///< requires Scalar
    const std::string& class_name() const;    ///< requires Class
    const std::vector<Type>& class_args() const;
    Type pointee() const;                     ///< requires Pointer
    Type referee() const;                     ///< requires reference
    const std::vector<Type>& params() const;  ///< requires Function
    Type return_type() const;                 ///< requires Function

    bool is_const() const;
    bool is_volatile() const;

    /// Copy with top-level const set/cleared. No-op on references and
    /// function types, which cannot carry cv.
    Type with_const(bool c) const;
    Type with_volatile(bool v) const;
    /// Copy with top-level cv removed (no-op on references/functions).
    Type without_cv() const;

    friend bool operator==(const Type& a, const Type& b);
    friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

    /// Canonical west-const spelling: "const int", "const double&",
    /// "vec<double>", "const int* const", "int(int, double)".
    std::string to_string() const;

private:
    struct Node;
    explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

enum class RefKind { Lvalue, Rvalue };

/// Applies `&` or `&&` to a type that may already be a reference:
/// `&` + anything yields an lvalue reference; `&&` + lvalue reference stays
/// an lvalue reference; `&&` + anything else yields an rvalue reference.
Type collapse_refs(RefKind outer, const Type& inner);

/// Removes one outer reference layer if present, then the top-level cv.
/// Nested qualifiers (e.g. pointee constness) are untouched.
Type strip_ref_and_top_cv(const Type& t);

/// Simplified usual arithmetic conversions: ranks below int promote to int,
/// then the higher conversion rank wins. Result carries no cv, no reference.
/// Throws NotArithmetic if either operand is not an arithmetic scalar.
Type common_arithmetic_type(const Type& a, const Type& b);

} // namespace deducto
