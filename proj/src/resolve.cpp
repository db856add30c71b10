#include "deducto/resolve.hpp"

#include <algorithm>

#include "deducto/deduce.hpp"

namespace deducto {

namespace {

std::string describe(const Error& e) {
    return std::string(error_code_name(e.code())) + ": " + e.what();
}

} // namespace

Type eval_type_expr(const TypeExprPtr& te, const Binding& binding, const Env& env) {
    const SourceLoc loc = te->loc;
    return std::visit(
        [&](const auto& node) -> Type {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, te::Concrete>) {
                return node.type;
            } else if constexpr (std::is_same_v<N, te::Named>) {
                if (auto it = binding.find(node.name); it != binding.end()) return it->second;
                const Entity* entity = env.lookup(node.name);
                if (!entity)
                    throw Error(ErrorCode::UnknownIdentifier,
                                "unknown type name '" + node.name + "'", node.name, loc);
                if (const auto* cls = std::get_if<ClassEntity>(entity)) {
                    if (!cls->def.template_params.empty())
                        throw Error(ErrorCode::ArityMismatch,
                                    "class template '" + node.name + "' used without arguments",
                                    node.name, loc);
                    env.registry().instantiate(cls->def, {}, env);
                    return Type::class_type(node.name);
                }
                if (const auto* set = std::get_if<OverloadSet>(entity)) {
                    // A non-overloaded plain function name denotes its
                    // function type (used as the callee in result_of).
                    if (set->entries.size() == 1 && set->entries[0].signature)
                        return *set->entries[0].signature;
                    throw Error(ErrorCode::NotAType,
                                "'" + node.name + "' does not name a type", node.name, loc);
                }
                throw Error(ErrorCode::NotAType,
                            "'" + node.name + "' is a variable, not a type", node.name, loc);
            } else if constexpr (std::is_same_v<N, te::TemplateId>) {
                const ClassDef* def = env.lookup_class(node.name);
                if (!def) {
                    if (env.lookup(node.name))
                        throw Error(ErrorCode::NotAType,
                                    "'" + node.name + "' is not a class template", node.name,
                                    loc);
                    throw Error(ErrorCode::UnknownIdentifier,
                                "unknown type name '" + node.name + "'", node.name, loc);
                }
                if (def->template_params.size() != node.args.size())
                    throw Error(ErrorCode::ArityMismatch,
                                "'" + node.name + "' expects " +
                                    std::to_string(def->template_params.size()) +
                                    " template argument(s)",
                                node.name, loc);
                std::vector<Type> args;
                args.reserve(node.args.size());
                for (const auto& a : node.args) args.push_back(eval_type_expr(a, binding, env));
                env.registry().instantiate(*def, args, env);
                return Type::class_type(node.name, std::move(args));
            } else if constexpr (std::is_same_v<N, te::AddConst>) {
                return eval_type_expr(node.inner, binding, env).with_const(true);
            } else if constexpr (std::is_same_v<N, te::AddVolatile>) {
                return eval_type_expr(node.inner, binding, env).with_volatile(true);
            } else if constexpr (std::is_same_v<N, te::PointerTo>) {
                Type t = eval_type_expr(node.inner, binding, env);
                if (t.is_reference())
                    throw Error(ErrorCode::PointerToReference,
                                "cannot form a pointer to reference type '" + t.to_string() + "'",
                                {}, loc);
                if (t.is_function())
                    throw Error(ErrorCode::InvalidOperand,
                                "pointers to function types are not supported", {}, loc);
                return Type::pointer(t);
            } else if constexpr (std::is_same_v<N, te::LvalueRefTo>) {
                Type t = eval_type_expr(node.inner, binding, env);
                if (t.is_void())
                    throw Error(ErrorCode::InvalidOperand, "cannot form a reference to void", {},
                                loc);
                return collapse_refs(RefKind::Lvalue, t);
            } else if constexpr (std::is_same_v<N, te::RvalueRefTo>) {
                Type t = eval_type_expr(node.inner, binding, env);
                if (t.is_void())
                    throw Error(ErrorCode::InvalidOperand, "cannot form a reference to void", {},
                                loc);
                return collapse_refs(RefKind::Rvalue, t);
            } else if constexpr (std::is_same_v<N, te::DecltypeOf>) {
                return decltype_of(substitute_expr(node.operand, binding, env), env);
            } else if constexpr (std::is_same_v<N, te::FunctionOf>) {
                Type ret = eval_type_expr(node.ret, binding, env);
                if (ret.is_function())
                    throw Error(ErrorCode::InvalidOperand,
                                "a function cannot return a function type", {}, loc);
                std::vector<Type> params;
                params.reserve(node.params.size());
                for (const auto& p : node.params) {
                    Type pt = eval_type_expr(p, binding, env);
                    if (pt.is_void())
                        throw Error(ErrorCode::InvalidOperand, "parameter of type void", {}, loc);
                    params.push_back(std::move(pt));
                }
                return Type::function(std::move(params), std::move(ret));
            } else if constexpr (std::is_same_v<N, te::TraitApply>) {
                if (is_transform_trait(node.trait)) {
                    if (node.args.size() != 1)
                        throw Error(ErrorCode::ArityMismatch,
                                    "'" + node.trait + "' takes one type argument", node.trait,
                                    loc);
                    return eval_transform(node.trait,
                                          eval_type_expr(node.args[0], binding, env));
                }
                if (node.trait == "enable_if") {
                    if (node.conds.size() != 1)
                        throw Error(ErrorCode::ArityMismatch,
                                    "enable_if takes a boolean condition", node.trait, loc);
                    bool cond = eval_condition(node.conds[0], binding, env);
                    Type payload = node.args.empty()
                                       ? Type::scalar(ScalarKind::Void)
                                       : eval_type_expr(node.args[0], binding, env);
                    SubstOutcome o = eval_enable_if(cond, payload);
                    if (!o.is_ok())
                        throw Error(ErrorCode::SubstitutionFailure, o.reason(), node.trait, loc);
                    return o.type();
                }
                if (node.trait == "result_of") {
                    if (node.args.size() != 1 ||
                        !std::holds_alternative<te::FunctionOf>(node.args[0]->node))
                        throw Error(ErrorCode::ArityMismatch,
                                    "result_of expects a call type F(Args...)", node.trait, loc);
                    const auto& fn = std::get<te::FunctionOf>(node.args[0]->node);
                    Type callee = eval_type_expr(fn.ret, binding, env);
                    std::vector<Type> args;
                    args.reserve(fn.params.size());
                    for (const auto& a : fn.params)
                        args.push_back(eval_type_expr(a, binding, env));
                    SubstOutcome o = eval_result_of(callee, args, env);
                    if (!o.is_ok())
                        throw Error(ErrorCode::SubstitutionFailure, o.reason(), node.trait, loc);
                    return o.type();
                }
                throw Error(ErrorCode::UnknownTrait, "unknown trait '" + node.trait + "'",
                            node.trait, loc);
            }
        },
        te->node);
}

bool eval_condition(const BoolSpec& cond, const Binding& binding, const Env& env) {
    bool value;
    if (cond.literal) {
        value = *cond.literal;
    } else {
        std::vector<Type> args;
        args.reserve(cond.args.size());
        for (const auto& a : cond.args) args.push_back(eval_type_expr(a, binding, env));
        value = eval_predicate(cond.trait, args, env);
    }
    return cond.negated ? !value : value;
}

SubstOutcome substitute(const TypeExprPtr& te, const Binding& binding, const Env& env) {
    try {
        return SubstOutcome::ok(eval_type_expr(te, binding, env));
    } catch (const Error& e) {
        return SubstOutcome::failure(describe(e));
    }
}

ExprPtr substitute_expr(const ExprPtr& e, const Binding& binding, const Env& env) {
    return std::visit(
        [&](const auto& node) -> ExprPtr {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, ex::Member>) {
                return make_expr(
                    ex::Member{substitute_expr(node.base, binding, env), node.field, node.arrow},
                    e->loc);
            } else if constexpr (std::is_same_v<N, ex::Call>) {
                std::vector<ExprPtr> args;
                args.reserve(node.args.size());
                for (const auto& a : node.args) args.push_back(substitute_expr(a, binding, env));
                return make_expr(ex::Call{node.callee, std::move(args)}, e->loc);
            } else if constexpr (std::is_same_v<N, ex::Paren>) {
                return make_expr(ex::Paren{substitute_expr(node.inner, binding, env)}, e->loc);
            } else if constexpr (std::is_same_v<N, ex::PostInc>) {
                return make_expr(ex::PostInc{substitute_expr(node.operand, binding, env)},
                                 e->loc);
            } else if constexpr (std::is_same_v<N, ex::Add>) {
                return make_expr(ex::Add{substitute_expr(node.lhs, binding, env),
                                         substitute_expr(node.rhs, binding, env)},
                                 e->loc);
            } else if constexpr (std::is_same_v<N, ex::Declval>) {
                Type t = eval_type_expr(node.arg, binding, env);
                return make_expr(ex::Declval{concrete_type_expr(std::move(t), node.arg->loc)},
                                 e->loc);
            } else {
                return e;  // literals and identifiers carry no type expressions
            }
        },
        e->node);
}

bool param_accepts(const Type& param, const Type& arg) {
    if (param == arg) return true;
    if (param.is_arithmetic() && arg.is_arithmetic()) return true;
    // One-level qualification conversion: T* -> const T*.
    if (param.is_pointer() && arg.is_pointer())
        return arg.pointee().with_const(true) == param.pointee();
    if (param.is_reference()) {
        Type r = param.referee();
        return r == arg || r.without_cv() == arg;
    }
    return false;
}

namespace {

bool contains_template_param(const TypeExprPtr& te, const std::vector<std::string>& tparams);

bool contains_template_param(const ExprPtr& e, const std::vector<std::string>& tparams) {
    return std::visit(
        [&](const auto& node) -> bool {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, ex::Member>) {
                return contains_template_param(node.base, tparams);
            } else if constexpr (std::is_same_v<N, ex::Call>) {
                for (const auto& a : node.args)
                    if (contains_template_param(a, tparams)) return true;
                return false;
            } else if constexpr (std::is_same_v<N, ex::Paren>) {
                return contains_template_param(node.inner, tparams);
            } else if constexpr (std::is_same_v<N, ex::PostInc>) {
                return contains_template_param(node.operand, tparams);
            } else if constexpr (std::is_same_v<N, ex::Add>) {
                return contains_template_param(node.lhs, tparams) ||
                       contains_template_param(node.rhs, tparams);
            } else if constexpr (std::is_same_v<N, ex::Declval>) {
                return contains_template_param(node.arg, tparams);
            } else {
                return false;
            }
        },
        e->node);
}

bool contains_template_param(const TypeExprPtr& te, const std::vector<std::string>& tparams) {
    return std::visit(
        [&](const auto& node) -> bool {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, te::Named>) {
                return std::find(tparams.begin(), tparams.end(), node.name) != tparams.end();
            } else if constexpr (std::is_same_v<N, te::TemplateId>) {
                for (const auto& a : node.args)
                    if (contains_template_param(a, tparams)) return true;
                return false;
            } else if constexpr (std::is_same_v<N, te::AddConst> ||
                                 std::is_same_v<N, te::AddVolatile> ||
                                 std::is_same_v<N, te::PointerTo> ||
                                 std::is_same_v<N, te::LvalueRefTo> ||
                                 std::is_same_v<N, te::RvalueRefTo>) {
                return contains_template_param(node.inner, tparams);
            } else if constexpr (std::is_same_v<N, te::DecltypeOf>) {
                return contains_template_param(node.operand, tparams);
            } else if constexpr (std::is_same_v<N, te::FunctionOf>) {
                if (contains_template_param(node.ret, tparams)) return true;
                for (const auto& p : node.params)
                    if (contains_template_param(p, tparams)) return true;
                return false;
            } else if constexpr (std::is_same_v<N, te::TraitApply>) {
                for (const auto& a : node.args)
                    if (contains_template_param(a, tparams)) return true;
                for (const auto& c : node.conds)
                    for (const auto& a : c.args)
                        if (contains_template_param(a, tparams)) return true;
                return false;
            } else {
                return false;
            }
        },
        te->node);
}

struct Unifier {
    const std::vector<std::string>& tparams;
    const Env& env;
    Binding binding;
    struct Deferred {
        TypeExprPtr pattern;
        Type arg;
        bool exact;  // nested positions require identity, not convertibility
    };
    std::vector<Deferred> deferred;
    std::string failure;

    bool fail(std::string why) {
        failure = std::move(why);
        return false;
    }

    bool unify(const TypeExprPtr& pattern, const Type& arg, bool top_level) {
        if (!contains_template_param(pattern, tparams)) {
            deferred.push_back({pattern, arg, !top_level});
            return true;
        }
        return std::visit(
            [&](const auto& node) -> bool {
                using N = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<N, te::Named>) {
                    Type bound = strip_ref_and_top_cv(arg);
                    auto [it, inserted] = binding.emplace(node.name, bound);
                    if (!inserted && it->second != bound)
                        return fail("conflicting deductions for '" + node.name + "': '" +
                                    it->second.to_string() + "' vs '" + bound.to_string() + "'");
                    return true;
                } else if constexpr (std::is_same_v<N, te::AddConst>) {
                    return unify(node.inner, arg.with_const(false), top_level);
                } else if constexpr (std::is_same_v<N, te::AddVolatile>) {
                    return unify(node.inner, arg.with_volatile(false), top_level);
                } else if constexpr (std::is_same_v<N, te::PointerTo>) {
                    if (!arg.is_pointer())
                        return fail("expected a pointer argument, got '" + arg.to_string() + "'");
                    return unify(node.inner, arg.pointee(), false);
                } else if constexpr (std::is_same_v<N, te::LvalueRefTo> ||
                                     std::is_same_v<N, te::RvalueRefTo>) {
                    return unify(node.inner, arg, top_level);
                } else if constexpr (std::is_same_v<N, te::TemplateId>) {
                    if (!arg.is_class() || arg.class_name() != node.name ||
                        arg.class_args().size() != node.args.size())
                        return fail("expected an instance of '" + node.name + "', got '" +
                                    arg.to_string() + "'");
                    for (size_t i = 0; i < node.args.size(); ++i)
                        if (!unify(node.args[i], arg.class_args()[i], false)) return false;
                    return true;
                } else {
                    // decltype / trait / function patterns are non-deduced
                    // contexts; they are checked after deduction completes.
                    deferred.push_back({pattern, arg, !top_level});
                    return true;
                }
            },
            pattern->node);
    }
};

} // namespace

DeductionResult deduce_template_args(const std::vector<TypeExprPtr>& patterns,
                                     const std::vector<Type>& args,
                                     const std::vector<std::string>& template_params,
                                     const Env& env) {
    DeductionResult result;
    if (patterns.size() != args.size()) {
        result.failure = "takes " + std::to_string(patterns.size()) + " argument(s), " +
                         std::to_string(args.size()) + " given";
        return result;
    }
    Unifier u{template_params, env, {}, {}, {}};
    for (size_t i = 0; i < patterns.size(); ++i) {
        if (!u.unify(patterns[i], args[i], true)) {
            result.failure = u.failure;
            return result;
        }
    }
    for (const auto& tp : template_params) {
        if (!u.binding.count(tp)) {
            result.failure = "'" + tp + "' could not be deduced from the arguments";
            return result;
        }
    }
    for (const auto& d : u.deferred) {
        Type t;
        try {
            t = eval_type_expr(d.pattern, u.binding, env);
        } catch (const Error& e) {
            result.failure = describe(e);
            return result;
        }
        bool ok = d.exact ? t == d.arg : param_accepts(t, d.arg);
        if (!ok) {
            result.failure = "cannot convert '" + d.arg.to_string() + "' to '" + t.to_string() +
                             "'";
            return result;
        }
    }
    result.binding = std::move(u.binding);
    return result;
}

namespace {

std::string signature_text(const std::string& name, const FnDeclForm& form,
                           const std::vector<std::string>& tparams) {
    std::string s;
    if (!tparams.empty()) {
        s += "template<";
        for (size_t i = 0; i < tparams.size(); ++i) {
            if (i) s += ", ";
            s += "typename " + tparams[i];
        }
        s += "> ";
    }
    s += name + "(";
    for (size_t i = 0; i < form.params.size(); ++i) {
        if (i) s += ", ";
        s += to_dsl(*form.params[i].type);
    }
    s += ")";
    return s;
}

Candidate build_plain_candidate(std::size_t index, const std::string& name, const Type& sig,
                                const std::vector<Type>& args) {
    Candidate c;
    c.index = index;
    c.description = name + ": " + sig.to_string();
    const auto& params = sig.params();
    if (params.size() != args.size()) {
        c.outcome = SubstOutcome::failure("takes " + std::to_string(params.size()) +
                                          " argument(s), " + std::to_string(args.size()) +
                                          " given");
        return c;
    }
    for (size_t i = 0; i < params.size(); ++i) {
        if (!param_accepts(params[i], args[i])) {
            c.outcome = SubstOutcome::failure("parameter " + std::to_string(i + 1) +
                                              ": no conversion from '" + args[i].to_string() +
                                              "' to '" + params[i].to_string() + "'");
            return c;
        }
    }
    c.signature = sig;
    c.outcome = SubstOutcome::ok(sig);
    return c;
}

Candidate build_template_candidate(std::size_t index, const TemplateFunction& tmpl,
                                   const std::vector<Type>& args, const Env& env) {
    Candidate c;
    c.index = index;
    c.description = signature_text(tmpl.name, tmpl.form, tmpl.template_params);
    std::vector<TypeExprPtr> patterns;
    patterns.reserve(tmpl.form.params.size());
    for (const auto& p : tmpl.form.params) patterns.push_back(p.type);
    DeductionResult dr = deduce_template_args(patterns, args, tmpl.template_params, env);
    if (!dr.ok()) {
        c.outcome = SubstOutcome::failure("deduction failed: " + dr.failure);
        return c;
    }
    c.binding = *dr.binding;
    try {
        std::vector<Type> param_types;
        param_types.reserve(tmpl.form.params.size());
        for (size_t i = 0; i < tmpl.form.params.size(); ++i) {
            Type pt = eval_type_expr(tmpl.form.params[i].type, c.binding, env);
            if (!param_accepts(pt, args[i])) {
                c.outcome = SubstOutcome::failure(
                    "parameter " + std::to_string(i + 1) + ": no conversion from '" +
                    args[i].to_string() + "' to '" + pt.to_string() + "'");
                return c;
            }
            param_types.push_back(std::move(pt));
        }
        SubstOutcome ret = [&] {
            if (tmpl.form.style == DeclStyle::Trailing) {
                Env scope(&env);
                for (size_t i = 0; i < tmpl.form.params.size(); ++i)
                    if (!tmpl.form.params[i].name.empty())
                        scope.declare_variable(tmpl.form.params[i].name, param_types[i]);
                return substitute(tmpl.form.return_type, c.binding, scope);
            }
            return substitute(tmpl.form.return_type, c.binding, env);
        }();
        if (!ret.is_ok()) {
            c.outcome = SubstOutcome::failure(ret.reason());
            return c;
        }
        Type sig = Type::function(std::move(param_types), ret.type());
        c.signature = sig;
        c.outcome = SubstOutcome::ok(std::move(sig));
    } catch (const Error& e) {
        c.outcome = SubstOutcome::failure(describe(e));
    }
    return c;
}

} // namespace

std::vector<Candidate> build_candidates(const std::string& name, const std::vector<Type>& args,
                                        const Env& env) {
    const Entity* entity = env.lookup(name);
    if (!entity)
        throw Error(ErrorCode::UnknownIdentifier, "unknown function '" + name + "'", name);
    const auto* set = std::get_if<OverloadSet>(entity);
    if (!set)
        throw Error(ErrorCode::NotCallable, "'" + name + "' is not a function", name);
    std::vector<Candidate> candidates;
    candidates.reserve(set->entries.size());
    for (size_t i = 0; i < set->entries.size(); ++i) {
        const OverloadEntry& entry = set->entries[i];
        if (entry.signature)
            candidates.push_back(build_plain_candidate(i, name, *entry.signature, args));
        else
            candidates.push_back(build_template_candidate(i, *entry.tmpl, args, env));
    }
    return candidates;
}

Candidate resolve_overload(const std::string& name, const std::vector<Type>& args,
                           const Env& env) {
    std::vector<Candidate> candidates = build_candidates(name, args, env);
    const Candidate* winner = nullptr;
    size_t survivors = 0;
    for (const Candidate& c : candidates) {
        if (!c.viable()) continue;
        ++survivors;
        if (!winner) winner = &c;
    }
    if (survivors == 1) return *winner;
    std::string arglist;
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) arglist += ", ";
        arglist += args[i].to_string();
    }
    if (survivors == 0) {
        std::string msg = "no viable overload for '" + name + "(" + arglist + ")'";
        for (const Candidate& c : candidates)
            msg += "\n  candidate " + c.description + " — " + c.outcome.reason();
        throw Error(ErrorCode::NoViableOverload, msg, name);
    }
    std::string msg = "call to '" + name + "(" + arglist + ")' is ambiguous";
    for (const Candidate& c : candidates)
        if (c.viable()) msg += "\n  candidate " + c.description;
    throw Error(ErrorCode::AmbiguousOverload, msg, name);
}

const ClassInfo& ClassRegistry::instantiate(const ClassDef& def, std::vector<Type> args,
                                            const Env& env) {
    const std::string key = Type::class_type(def.name, args).to_string();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (def.template_params.size() != args.size())
        throw Error(ErrorCode::ArityMismatch,
                    "'" + def.name + "' expects " + std::to_string(def.template_params.size()) +
                        " template argument(s)",
                    def.name);
    if (!in_progress_.insert(key).second)
        throw Error(ErrorCode::RecursiveType, "recursive instantiation of '" + key + "'",
                    def.name);
    try {
        Binding binding;
        for (size_t i = 0; i < args.size(); ++i)
            binding.emplace(def.template_params[i], args[i]);
        ClassInfo info;
        info.name = def.name;
        info.args = std::move(args);
        info.is_abstract = def.is_abstract;
        info.is_trivially_copy_assignable = def.is_trivially_copy_assignable;
        for (const auto& f : def.fields) {
            Type t = eval_type_expr(f.type, binding, env);
            if (t.is_void())
                throw Error(ErrorCode::InvalidOperand,
                            "field '" + f.name + "' of '" + key + "' has type void", f.name,
                            f.type->loc);
            info.fields.emplace_back(f.name, std::move(t));
        }
        for (const auto& f : def.static_fields) {
            Type t = eval_type_expr(f.type, binding, env);
            if (t.is_void())
                throw Error(ErrorCode::InvalidOperand,
                            "static field '" + f.name + "' of '" + key + "' has type void",
                            f.name, f.type->loc);
            info.static_fields.emplace_back(f.name, std::move(t));
        }
        for (const auto& op : def.call_operators)
            info.call_operators.push_back(resolve_function_decl(op, env, binding));
        in_progress_.erase(key);
        return memo_.emplace(key, std::move(info)).first->second;
    } catch (...) {
        in_progress_.erase(key);
        throw;
    }
}

} // namespace deducto
