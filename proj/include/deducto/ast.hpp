#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "deducto/env.hpp"
#include "deducto/typeexpr.hpp"

namespace deducto {

namespace ex {

struct IntLit { long long value; };
struct FloatLit { double value; };
struct Id { std::string name; };
struct Member { ExprPtr base; std::string field; bool arrow; };
struct Call { std::string callee; std::vector<ExprPtr> args; };
/// Kept as a node because parenthesization changes which rule applies
/// when the expression is the operand of decltype.
struct Paren { ExprPtr inner; };
struct PostInc { ExprPtr operand; };
struct Add { ExprPtr lhs; ExprPtr rhs; };
struct Declval { TypeExprPtr arg; };

} // namespace ex

struct Expr {
    std::variant<ex::IntLit, ex::FloatLit, ex::Id, ex::Member, ex::Call, ex::Paren, ex::PostInc,
                 ex::Add, ex::Declval>
        node;
    SourceLoc loc;
};

template <typename N>
ExprPtr make_expr(N node, SourceLoc loc = {}) {
    return std::make_shared<const Expr>(Expr{std::move(node), loc});
}

/// An expression's classification: a never-reference type plus a value
/// category. A declared reference contributes category, not type.
struct TypedExpr {
    ExprPtr expr;
    Type type;
    ValueCategory category = ValueCategory::Prvalue;
};

/// Whether the surrounding construct evaluates its operand. decltype
/// classifies under Unevaluated; variable initializers under Evaluated,
/// where declval is an error.
enum class EvalContext { Evaluated, Unevaluated };

/// Computes the expression's non-reference type and value category.
/// Pure: never touches any value store.
TypedExpr classify(const ExprPtr& e, const Env& env,
                   EvalContext ctx = EvalContext::Evaluated);

using Store = std::map<std::string, long long>;

/// Evaluates an integer expression over declared int variables, updating
/// the store (postfix ++ yields the old value and increments the variable).
/// Exists to make side-effect contracts observable; everything outside the
/// integer subset is NonEvaluableExpr, and reaching declval is
/// DeclvalInEvaluatedContext.
long long evaluate(const ExprPtr& e, const Env& env, Store& store);

std::string to_dsl(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

} // namespace deducto
