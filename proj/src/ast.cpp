#include "deducto/ast.hpp"

#include "deducto/deduce.hpp"
#include "deducto/resolve.hpp"

namespace deducto {

namespace {

const ClassInfo& class_info_for(const Type& t, const Env& env, SourceLoc loc) {
    const ClassDef* def = env.lookup_class(t.class_name());
    if (!def)
        throw Error(ErrorCode::UnknownIdentifier, "unknown class '" + t.class_name() + "'",
                    t.class_name(), loc);
    return env.registry().instantiate(*def, t.class_args(), env);
}

/// Declared return type re-expressed as an expression classification:
/// a reference return contributes category, not type.
TypedExpr adjust_return(const Type& ret) {
    TypedExpr r;
    if (ret.is_lvalue_ref()) {
        r.type = ret.referee();
        r.category = ValueCategory::Lvalue;
    } else if (ret.is_rvalue_ref()) {
        r.type = ret.referee();
        r.category = ValueCategory::Xvalue;
    } else {
        r.type = ret;
        r.category = ValueCategory::Prvalue;
    }
    return r;
}

struct Classifier {
    const Env& env;
    EvalContext ctx;
    SourceLoc loc;

    TypedExpr operator()(const ex::IntLit&) const {
        return {nullptr, Type::scalar(ScalarKind::Int), ValueCategory::Prvalue};
    }

    TypedExpr operator()(const ex::FloatLit&) const {
        return {nullptr, Type::scalar(ScalarKind::Double), ValueCategory::Prvalue};
    }

    TypedExpr operator()(const ex::Id& id) const {
        const Entity* entity = env.lookup(id.name);
        if (!entity)
            throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + id.name + "'",
                        id.name, loc);
        if (const auto* var = std::get_if<VariableEntity>(entity)) {
            Type t = var->type;
            // Reference adjustment: a named reference is an lvalue of the
            // referee type.
            if (t.is_reference()) t = t.referee();
            return {nullptr, t, ValueCategory::Lvalue};
        }
        if (std::holds_alternative<OverloadSet>(*entity))
            throw Error(ErrorCode::InvalidOperand,
                        "function name '" + id.name + "' is not usable as a value here", id.name,
                        loc);
        throw Error(ErrorCode::InvalidOperand,
                    "class name '" + id.name + "' is not an expression", id.name, loc);
    }

    TypedExpr operator()(const ex::Member& m) const {
        TypedExpr base = classify(m.base, env, ctx);
        Type obj = base.type;
        ValueCategory base_cat = base.category;
        if (m.arrow) {
            if (!obj.is_pointer())
                throw Error(ErrorCode::NotAPointer,
                            "'->' applied to non-pointer type '" + obj.to_string() + "'",
                            m.field, loc);
            obj = obj.pointee();
            base_cat = ValueCategory::Lvalue;  // *p is an lvalue
        }
        if (!obj.is_class())
            throw Error(ErrorCode::NotAClass,
                        "member access on non-class type '" + obj.to_string() + "'", m.field,
                        loc);
        const ClassInfo& info = class_info_for(obj, env, loc);
        if (const Type* st = info.find_static_field(m.field)) {
            // Statics take no cv from the object and are always lvalues.
            Type t = st->is_reference() ? st->referee() : *st;
            return {nullptr, t, ValueCategory::Lvalue};
        }
        const Type* field = info.find_field(m.field);
        if (!field)
            throw Error(ErrorCode::NoSuchField,
                        "'" + obj.class_name() + "' has no field named '" + m.field + "'",
                        m.field, loc);
        if (field->is_reference())
            return {nullptr, field->referee(), ValueCategory::Lvalue};
        Type t = *field;
        if (obj.is_const()) t = t.with_const(true);
        if (obj.is_volatile()) t = t.with_volatile(true);
        ValueCategory cat =
            base_cat == ValueCategory::Lvalue ? ValueCategory::Lvalue : ValueCategory::Xvalue;
        return {nullptr, t, cat};
    }

    TypedExpr operator()(const ex::Call& call) const {
        std::vector<Type> arg_types;
        arg_types.reserve(call.args.size());
        for (const auto& a : call.args) arg_types.push_back(classify(a, env, ctx).type);
        Candidate winner = resolve_overload(call.callee, arg_types, env);
        return adjust_return(winner.signature->return_type());
    }

    TypedExpr operator()(const ex::Paren& p) const { return classify(p.inner, env, ctx); }

    TypedExpr operator()(const ex::PostInc& inc) const {
        TypedExpr operand = classify(inc.operand, env, ctx);
        if (operand.category != ValueCategory::Lvalue)
            throw Error(ErrorCode::InvalidOperand, "operand of '++' must be an lvalue", {}, loc);
        if (!operand.type.is_integral())
            throw Error(ErrorCode::InvalidOperand,
                        "operand of '++' must have integral type, not '" +
                            operand.type.to_string() + "'",
                        {}, loc);
        if (operand.type.is_const())
            throw Error(ErrorCode::InvalidOperand, "operand of '++' is const", {}, loc);
        return {nullptr, operand.type.without_cv(), ValueCategory::Prvalue};
    }

    TypedExpr operator()(const ex::Add& add) const {
        TypedExpr lhs = classify(add.lhs, env, ctx);
        TypedExpr rhs = classify(add.rhs, env, ctx);
        if (lhs.type.is_class() || rhs.type.is_class()) {
            Candidate winner = resolve_overload("operator+", {lhs.type, rhs.type}, env);
            return adjust_return(winner.signature->return_type());
        }
        return {nullptr, common_arithmetic_type(lhs.type, rhs.type), ValueCategory::Prvalue};
    }

    TypedExpr operator()(const ex::Declval& d) const { return declval_type(d.arg, env, ctx); }
};

const Expr& strip_parens(const Expr& e) {
    const Expr* cur = &e;
    while (const auto* p = std::get_if<ex::Paren>(&cur->node)) cur = p->inner.get();
    return *cur;
}

} // namespace

TypedExpr classify(const ExprPtr& e, const Env& env, EvalContext ctx) {
    TypedExpr r = std::visit(Classifier{env, ctx, e->loc}, e->node);
    r.expr = e;
    return r;
}

namespace {

struct Evaluator {
    const Env& env;
    Store& store;
    SourceLoc loc;

    long long operator()(const ex::IntLit& i) const { return i.value; }

    long long operator()(const ex::FloatLit&) const {
        throw Error(ErrorCode::NonEvaluableExpr,
                    "floating-point expressions are outside the evaluable subset", {}, loc);
    }

    long long operator()(const ex::Id& id) const {
        const Entity* entity = env.lookup(id.name);
        if (!entity)
            throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + id.name + "'",
                        id.name, loc);
        const auto* var = std::get_if<VariableEntity>(entity);
        if (!var || !var->type.is_integral())
            throw Error(ErrorCode::NonEvaluableExpr,
                        "'" + id.name + "' is not an integer variable", id.name, loc);
        auto it = store.find(id.name);
        if (it == store.end())
            throw Error(ErrorCode::NonEvaluableExpr,
                        "'" + id.name + "' has no known value", id.name, loc);
        return it->second;
    }

    long long operator()(const ex::Member&) const {
        throw Error(ErrorCode::NonEvaluableExpr,
                    "member access is outside the evaluable subset", {}, loc);
    }

    long long operator()(const ex::Call&) const {
        throw Error(ErrorCode::NonEvaluableExpr, "calls are outside the evaluable subset", {},
                    loc);
    }

    long long operator()(const ex::Paren& p) const { return evaluate(p.inner, env, store); }

    long long operator()(const ex::PostInc& inc) const {
        const Expr& target = strip_parens(*inc.operand);
        const auto* id = std::get_if<ex::Id>(&target.node);
        if (!id)
            throw Error(ErrorCode::NonEvaluableExpr,
                        "'++' outside the evaluable subset (operand is not a variable)", {}, loc);
        const Entity* entity = env.lookup(id->name);
        const auto* var = entity ? std::get_if<VariableEntity>(entity) : nullptr;
        if (!var || !var->type.is_integral())
            throw Error(ErrorCode::NonEvaluableExpr,
                        "'" + id->name + "' is not an integer variable", id->name, loc);
        if (var->type.is_const())
            throw Error(ErrorCode::InvalidOperand, "operand of '++' is const", id->name, loc);
        auto it = store.find(id->name);
        if (it == store.end())
            throw Error(ErrorCode::NonEvaluableExpr,
                        "'" + id->name + "' has no known value", id->name, loc);
        return it->second++;
    }

    long long operator()(const ex::Add& add) const {
        long long l = evaluate(add.lhs, env, store);
        long long r = evaluate(add.rhs, env, store);
        return l + r;
    }

    long long operator()(const ex::Declval&) const {
        throw Error(ErrorCode::DeclvalInEvaluatedContext,
                    "declval used in an evaluated context", {}, loc);
    }
};

} // namespace

long long evaluate(const ExprPtr& e, const Env& env, Store& store) {
    return std::visit(Evaluator{env, store, e->loc}, e->node);
}

} // namespace deducto
