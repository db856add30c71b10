#include "deducto/deduce.hpp"

namespace deducto {

Type deduce_auto(const AutoPattern& pattern, const ExprPtr& init, const Env& env) {
    TypedExpr t = classify(init, env, EvalContext::Evaluated);
    if (!pattern.lvalue_ref) {
        Type base = t.type.without_cv();
        return pattern.add_const ? base.with_const(true) : base;
    }
    Type base = t.type;
    if (pattern.add_const) {
        base = base.with_const(true);  // const auto& binds any category
    } else if (t.category != ValueCategory::Lvalue) {
        throw Error(ErrorCode::CannotBindNonConstRef,
                    "auto& cannot bind to a temporary of type '" + base.to_string() + "'", {},
                    init->loc);
    }
    return Type::lvalue_ref(base);
}

namespace {

const ClassInfo& class_info_for(const Type& t, const Env& env, SourceLoc loc) {
    const ClassDef* def = env.lookup_class(t.class_name());
    if (!def)
        throw Error(ErrorCode::UnknownIdentifier, "unknown class '" + t.class_name() + "'",
                    t.class_name(), loc);
    return env.registry().instantiate(*def, t.class_args(), env);
}

/// Declared type of an unparenthesized member access, without the cv
/// propagation that expression classification performs.
Type declared_member_type(const ex::Member& m, const Env& env, SourceLoc loc) {
    TypedExpr base = classify(m.base, env, EvalContext::Unevaluated);
    Type obj = base.type;
    if (m.arrow) {
        if (!obj.is_pointer())
            throw Error(ErrorCode::NotAPointer,
                        "'->' applied to non-pointer type '" + obj.to_string() + "'", m.field,
                        loc);
        obj = obj.pointee();
    }
    if (!obj.is_class())
        throw Error(ErrorCode::NotAClass,
                    "member access on non-class type '" + obj.to_string() + "'", m.field, loc);
    const ClassInfo& info = class_info_for(obj, env, loc);
    if (const Type* st = info.find_static_field(m.field)) return *st;
    if (const Type* f = info.find_field(m.field)) return *f;
    throw Error(ErrorCode::NoSuchField,
                "'" + obj.class_name() + "' has no field named '" + m.field + "'", m.field, loc);
}

const Expr& strip_parens(const Expr& e) {
    const Expr* cur = &e;
    while (const auto* p = std::get_if<ex::Paren>(&cur->node)) cur = p->inner.get();
    return *cur;
}

} // namespace

Type decltype_of(const ExprPtr& e, const Env& env) {
    // Unparenthesized id: the declared type, exactly as written.
    if (const auto* id = std::get_if<ex::Id>(&e->node)) {
        const Entity* entity = env.lookup(id->name);
        if (!entity)
            throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + id->name + "'",
                        id->name, e->loc);
        if (const auto* var = std::get_if<VariableEntity>(entity)) return var->type;
        if (const auto* set = std::get_if<OverloadSet>(entity)) {
            if (set->entries.size() == 1 && set->entries[0].signature)
                return *set->entries[0].signature;
            throw Error(ErrorCode::InvalidOperand,
                        "cannot take decltype of the overloaded name '" + id->name + "'",
                        id->name, e->loc);
        }
        throw Error(ErrorCode::InvalidOperand,
                    "class name '" + id->name + "' is not an expression", id->name, e->loc);
    }
    // Unparenthesized member access: the declared member type.
    if (const auto* m = std::get_if<ex::Member>(&e->node))
        return declared_member_type(*m, env, e->loc);

    // Function calls and overloaded-operator uses: the declared return type
    // of the selected function, references preserved.
    const Expr& core = strip_parens(*e);
    if (const auto* call = std::get_if<ex::Call>(&core.node)) {
        std::vector<Type> args;
        args.reserve(call->args.size());
        for (const auto& a : call->args)
            args.push_back(classify(a, env, EvalContext::Unevaluated).type);
        Candidate winner = resolve_overload(call->callee, args, env);
        return winner.signature->return_type();
    }
    if (const auto* add = std::get_if<ex::Add>(&core.node)) {
        Type lhs = classify(add->lhs, env, EvalContext::Unevaluated).type;
        Type rhs = classify(add->rhs, env, EvalContext::Unevaluated).type;
        if (lhs.is_class() || rhs.is_class()) {
            Candidate winner = resolve_overload("operator+", {lhs, rhs}, env);
            return winner.signature->return_type();
        }
    }

    // Everything else: classified type, with the category mapped back onto
    // the reference shape.
    TypedExpr t = classify(e, env, EvalContext::Unevaluated);
    switch (t.category) {
        case ValueCategory::Lvalue: return Type::lvalue_ref(t.type);
        case ValueCategory::Xvalue: return Type::rvalue_ref(t.type);
        case ValueCategory::Prvalue: return t.type;
    }
    return t.type;
}

TypedExpr declval_type(const TypeExprPtr& t, const Env& env, EvalContext ctx) {
    if (ctx == EvalContext::Evaluated)
        throw Error(ErrorCode::DeclvalInEvaluatedContext,
                    "declval is usable only in unevaluated contexts", {}, t->loc);
    Type resolved = eval_type_expr(t, env);
    TypedExpr r;
    r.expr = make_expr(ex::Declval{t}, t->loc);
    if (resolved.is_lvalue_ref()) {
        r.type = resolved.referee();
        r.category = ValueCategory::Lvalue;
    } else if (resolved.is_rvalue_ref()) {
        r.type = resolved.referee();
        r.category = ValueCategory::Xvalue;
    } else if (resolved.is_void()) {
        r.type = resolved;
        r.category = ValueCategory::Prvalue;
    } else {
        r.type = resolved;
        r.category = ValueCategory::Xvalue;
    }
    return r;
}

Type resolve_function_decl(const FnDeclForm& form, const Env& env, const Binding& binding) {
    std::vector<Type> params;
    params.reserve(form.params.size());
    for (const auto& p : form.params) {
        Type t = eval_type_expr(p.type, binding, env);
        if (t.is_void())
            throw Error(ErrorCode::InvalidOperand, "parameter of type void", p.name,
                        p.type->loc);
        params.push_back(std::move(t));
    }
    Type ret;
    if (form.style == DeclStyle::Trailing) {
        Env scope(&env);
        for (size_t i = 0; i < form.params.size(); ++i)
            if (!form.params[i].name.empty())
                scope.declare_variable(form.params[i].name, params[i]);
        ret = eval_type_expr(form.return_type, binding, scope);
    } else {
        ret = eval_type_expr(form.return_type, binding, env);
    }
    return Type::function(std::move(params), std::move(ret));
}

} // namespace deducto
