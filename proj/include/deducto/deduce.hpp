#pragma once

#include "deducto/ast.hpp"
#include "deducto/env.hpp"
#include "deducto/resolve.hpp"

namespace deducto {

/// The four supported placeholder forms: auto, const auto, auto&,
/// const auto&. auto&& is rejected at parse time.
struct AutoPattern {
    bool add_const = false;
    bool lvalue_ref = false;
};

/// Type of a variable declared with an auto pattern and an initializer.
/// Plain auto strips the initializer's top-level cv (references are already
/// absent from expression types); auto& requires an lvalue initializer;
/// const auto& binds any category.
Type deduce_auto(const AutoPattern& pattern, const ExprPtr& init, const Env& env);

/// decltype(e):
///  - an unparenthesized id or member access yields the declared type,
///    exactly as declared (no cv propagation from the object);
///  - a function call or overloaded-operator use yields the selected
///    function's declared return type;
///  - otherwise the classified type T, as T& for lvalues, T&& for xvalues,
///    T for prvalues.
/// The operand is never evaluated.
Type decltype_of(const ExprPtr& e, const Env& env);

/// declval<T>(): an rvalue (xvalue) of type T usable only in unevaluated
/// contexts; an lvalue when T is an lvalue reference. T may name an
/// abstract class.
TypedExpr declval_type(const TypeExprPtr& t, const Env& env,
                       EvalContext ctx = EvalContext::Unevaluated);

/// Resolves a declaration form to a Function type. Trailing style resolves
/// the return type expression in a scope extended with the parameters;
/// leading style resolves it in the outer scope only, so mentioning a
/// parameter there is UnknownIdentifier naming it.
Type resolve_function_decl(const FnDeclForm& form, const Env& env, const Binding& binding = {});

} // namespace deducto
