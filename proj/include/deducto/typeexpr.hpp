#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "deducto/types.hpp"

namespace deducto {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct TypeExpr;
using TypeExprPtr = std::shared_ptr<const TypeExpr>;

/// Boolean condition inside enable_if: a literal or an is_* trait
/// application queried through ::value, optionally negated.
struct BoolSpec {
    bool negated = false;
    std::optional<bool> literal;
    std::string trait;                // set when literal is empty
    std::vector<TypeExprPtr> args;
};

namespace te {

struct Concrete { Type type; };                       // fully resolved leaf
struct Named { std::string name; };                   // class / template parameter
struct TemplateId { std::string name; std::vector<TypeExprPtr> args; };
struct AddConst { TypeExprPtr inner; };
struct AddVolatile { TypeExprPtr inner; };
struct PointerTo { TypeExprPtr inner; };
struct LvalueRefTo { TypeExprPtr inner; };
struct RvalueRefTo { TypeExprPtr inner; };
struct DecltypeOf { ExprPtr operand; };
/// `ret(params...)` in type position; doubles as result_of's call shape,
/// where `ret` is the callee type.
struct FunctionOf { TypeExprPtr ret; std::vector<TypeExprPtr> params; };
/// Registered trait applied through ::type (transforms, enable_if, result_of).
struct TraitApply {
    std::string trait;
    std::vector<TypeExprPtr> args;
    std::vector<BoolSpec> conds;      // enable_if's condition
};

} // namespace te

struct TypeExpr {
    std::variant<te::Concrete, te::Named, te::TemplateId, te::AddConst, te::AddVolatile,
                 te::PointerTo, te::LvalueRefTo, te::RvalueRefTo, te::DecltypeOf,
                 te::FunctionOf, te::TraitApply>
        node;
    SourceLoc loc;
};

template <typename N>
TypeExprPtr make_type_expr(N node, SourceLoc loc = {}) {
    return std::make_shared<const TypeExpr>(TypeExpr{std::move(node), loc});
}

inline TypeExprPtr concrete_type_expr(Type t, SourceLoc loc = {}) {
    return make_type_expr(te::Concrete{std::move(t)}, loc);
}

/// DSL spelling of a type expression, used for diagnostics and round-trips.
std::string to_dsl(const TypeExpr& t);
std::string to_dsl(const BoolSpec& c);
bool structurally_equal(const TypeExpr& a, const TypeExpr& b);

} // namespace deducto
