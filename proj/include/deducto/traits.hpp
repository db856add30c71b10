#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deducto/env.hpp"
#include "deducto/types.hpp"

namespace deducto {

/// Result of a substitution: a type, or a failure that is an ordinary value
/// (the SFINAE carrier), never a hard error.
class SubstOutcome {
public:
    static SubstOutcome ok(Type t) {
        SubstOutcome o;
        o.type_ = std::move(t);
        return o;
    }
    static SubstOutcome failure(std::string reason) {
        SubstOutcome o;
        o.reason_ = std::move(reason);
        return o;
    }

    bool is_ok() const { return type_.has_value(); }
    const Type& type() const { return *type_; }
    const std::string& reason() const { return reason_; }

private:
    std::optional<Type> type_;
    std::string reason_;
};

/// Registered is_* predicates, computed structurally from the type shape;
/// is_abstract and is_trivially_copy_assignable consult ClassDef flags.
/// Throws UnknownTrait / ArityMismatch on misuse.
bool eval_predicate(const std::string& name, const std::vector<Type>& args, const Env& env);

/// Registered remove_* / add_* transformations.
Type eval_transform(const std::string& name, const Type& t);

/// enable_if: Ok(payload) when the condition holds, SubstFailure otherwise.
SubstOutcome eval_enable_if(bool cond, const Type& payload = Type::scalar(ScalarKind::Void));

/// result_of: return type of calling `callee` (a function type, or a class
/// with call operators) with the given argument types. No match ->
/// SubstFailure; non-callable callee -> NotCallable.
SubstOutcome eval_result_of(const Type& callee, const std::vector<Type>& args, const Env& env);

/// Trait registry queries (drive parse-time validation).
bool is_predicate_trait(const std::string& name);
bool is_transform_trait(const std::string& name);
/// Expected type-argument count, or -1 if the name is not registered.
int predicate_arity(const std::string& name);

} // namespace deducto
