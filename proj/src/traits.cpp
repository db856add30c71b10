#include "deducto/traits.hpp"

#include <array>

#include "deducto/resolve.hpp"

namespace deducto {

namespace {

constexpr std::array<const char*, 6> kTransforms = {
    "remove_const",        "remove_cv",
    "remove_reference",    "add_const",
    "add_lvalue_reference", "add_rvalue_reference",
};

struct PredicateEntry {
    const char* name;
    int arity;
};

constexpr std::array<PredicateEntry, 11> kPredicates = {{
    {"is_abstract", 1},
    {"is_trivially_copy_assignable", 1},
    {"is_const", 1},
    {"is_reference", 1},
    {"is_lvalue_reference", 1},
    {"is_rvalue_reference", 1},
    {"is_pointer", 1},
    {"is_integral", 1},
    {"is_floating_point", 1},
    {"is_class", 1},
    {"is_same", 2},
}};

const ClassInfo& class_info_for(const Type& t, const Env& env) {
    const ClassDef* def = env.lookup_class(t.class_name());
    if (!def)
        throw Error(ErrorCode::UnknownIdentifier, "unknown class '" + t.class_name() + "'",
                    t.class_name());
    return env.registry().instantiate(*def, t.class_args(), env);
}

bool trivially_copy_assignable(const Type& t, const Env& env) {
    // Assignment through a reference assigns the referee.
    if (t.is_reference()) {
        Type r = t.referee();
        return !r.is_const() && trivially_copy_assignable(r, env);
    }
    if (t.is_const() || t.is_void() || t.is_function()) return false;
    if (t.is_scalar() || t.is_pointer()) return true;
    return class_info_for(t, env).is_trivially_copy_assignable;
}

} // namespace

bool is_transform_trait(const std::string& name) {
    for (const char* t : kTransforms)
        if (name == t) return true;
    return false;
}

bool is_predicate_trait(const std::string& name) { return predicate_arity(name) > 0; }

int predicate_arity(const std::string& name) {
    for (const auto& p : kPredicates)
        if (name == p.name) return p.arity;
    return -1;
}

bool eval_predicate(const std::string& name, const std::vector<Type>& args, const Env& env) {
    int arity = predicate_arity(name);
    if (arity < 0)
        throw Error(ErrorCode::UnknownTrait, "unknown trait '" + name + "'", name);
    if (static_cast<int>(args.size()) != arity)
        throw Error(ErrorCode::ArityMismatch,
                    "'" + name + "' takes " + std::to_string(arity) + " type argument(s)", name);
    const Type& t = args[0];
    if (name == "is_const") return t.is_const();
    if (name == "is_reference") return t.is_reference();
    if (name == "is_lvalue_reference") return t.is_lvalue_ref();
    if (name == "is_rvalue_reference") return t.is_rvalue_ref();
    if (name == "is_pointer") return t.is_pointer();
    if (name == "is_integral") return t.is_integral();
    if (name == "is_floating_point") return t.is_floating_point();
    if (name == "is_class") return t.is_class();
    if (name == "is_same") return args[0] == args[1];
    if (name == "is_abstract") return t.is_class() && class_info_for(t, env).is_abstract;
    if (name == "is_trivially_copy_assignable") return trivially_copy_assignable(t, env);
    throw Error(ErrorCode::UnknownTrait, "unknown trait '" + name + "'", name);
}

Type eval_transform(const std::string& name, const Type& t) {
    if (name == "remove_const") return t.with_const(false);
    if (name == "remove_cv") return t.without_cv();
    if (name == "remove_reference") return t.is_reference() ? t.referee() : t;
    if (name == "add_const") return t.with_const(true);
    if (name == "add_lvalue_reference")
        return t.is_void() ? t : collapse_refs(RefKind::Lvalue, t);
    if (name == "add_rvalue_reference")
        return t.is_void() ? t : collapse_refs(RefKind::Rvalue, t);
    throw Error(ErrorCode::UnknownTrait, "unknown trait '" + name + "'", name);
}

SubstOutcome eval_enable_if(bool cond, const Type& payload) {
    if (cond) return SubstOutcome::ok(payload);
    return SubstOutcome::failure("enable_if condition is false: no member 'type'");
}

SubstOutcome eval_result_of(const Type& callee, const std::vector<Type>& args, const Env& env) {
    Type c = callee.is_reference() ? callee.referee() : callee;
    auto matches = [&](const Type& sig) {
        if (sig.params().size() != args.size()) return false;
        for (size_t i = 0; i < args.size(); ++i)
            if (!param_accepts(sig.params()[i], args[i])) return false;
        return true;
    };
    if (c.is_function()) {
        if (matches(c)) return SubstOutcome::ok(c.return_type());
        return SubstOutcome::failure("'" + c.to_string() +
                                     "' is not callable with the given argument types");
    }
    if (c.is_class()) {
        const ClassInfo& info = class_info_for(c, env);
        const Type* selected = nullptr;
        for (const Type& op : info.call_operators) {
            if (!matches(op)) continue;
            if (selected)
                return SubstOutcome::failure("ambiguous call operators of '" + c.to_string() +
                                             "'");
            selected = &op;
        }
        if (!selected)
            return SubstOutcome::failure("no call operator of '" + c.to_string() +
                                         "' accepts the given argument types");
        return SubstOutcome::ok(selected->return_type());
    }
    throw Error(ErrorCode::NotCallable, "'" + c.to_string() + "' is not callable");
}

} // namespace deducto
