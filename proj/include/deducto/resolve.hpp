#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deducto/ast.hpp"
#include "deducto/env.hpp"
#include "deducto/traits.hpp"
#include "deducto/typeexpr.hpp"

namespace deducto {

/// Deduced template-parameter assignment.
using Binding = std::map<std::string, Type>;

struct DeductionResult {
    std::optional<Binding> binding;
    std::string failure;
    bool ok() const { return binding.has_value(); }
};

/// Structural unification of parameter patterns against argument types.
/// A bare parameter `T` binds the argument with top-level cv and reference
/// stripped; `const T*` requires a pointer and binds the pointee sans const;
/// a template-id requires an instance of the same template. Conflicting or
/// missing bindings fail.
DeductionResult deduce_template_args(const std::vector<TypeExprPtr>& patterns,
                                     const std::vector<Type>& args,
                                     const std::vector<std::string>& template_params,
                                     const Env& env);

/// Resolves a type expression to a Type: bound template parameters are
/// replaced, traits evaluated, decltype operands classified. Throws typed
/// errors (this is the declaration-context entry point).
Type eval_type_expr(const TypeExprPtr& te, const Binding& binding, const Env& env);

inline Type eval_type_expr(const TypeExprPtr& te, const Env& env) {
    return eval_type_expr(te, Binding{}, env);
}

bool eval_condition(const BoolSpec& cond, const Binding& binding, const Env& env);

/// SFINAE wrapper around eval_type_expr: every error becomes a SubstFailure
/// value; nothing escapes.
SubstOutcome substitute(const TypeExprPtr& te, const Binding& binding, const Env& env);

/// Rewrites type expressions embedded in an expression (declval arguments)
/// under the binding, so the result can be classified without it.
ExprPtr substitute_expr(const ExprPtr& e, const Binding& binding, const Env& env);

/// Whether any of the given template parameters occurs syntactically in the
/// type expression (including inside embedded declval arguments).
bool mentions_template_param(const TypeExprPtr& te, const std::vector<std::string>& params);

/// One overload-set member considered at a call site.
struct Candidate {
    std::size_t index = 0;            ///< declaration order within the set
    std::string description;
    Binding binding;
    std::optional<Type> signature;    ///< Function type; set iff outcome ok
    SubstOutcome outcome = SubstOutcome::failure("not considered");

    bool viable() const { return outcome.is_ok(); }
};

/// Whether a parameter of type `param` accepts an argument of type `arg`:
/// exact structural match, arithmetic scalar conversion, or one-level
/// pointer qualification conversion (T* to const T*).
bool param_accepts(const Type& param, const Type& arg);

/// All candidates for `name(args...)`, viable or not (failure reasons kept).
std::vector<Candidate> build_candidates(const std::string& name, const std::vector<Type>& args,
                                        const Env& env);

/// Deduction + substitution + survivor selection over the overload set.
/// Exactly one survivor is returned; zero raises NoViableOverload with
/// per-candidate reasons, two or more raise AmbiguousOverload.
Candidate resolve_overload(const std::string& name, const std::vector<Type>& args,
                           const Env& env);

} // namespace deducto
