#include <sstream>

#include "deducto/ast.hpp"
#include "deducto/typeexpr.hpp"

namespace deducto {

namespace {

std::string float_text(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    std::string s = os.str();
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) s += ".0";
    return s;
}

} // namespace

std::string to_dsl(const BoolSpec& c) {
    std::string s = c.negated ? "!" : "";
    if (c.literal) return s + (*c.literal ? "true" : "false");
    s += c.trait + "<";
    for (size_t i = 0; i < c.args.size(); ++i) {
        if (i) s += ", ";
        s += to_dsl(*c.args[i]);
    }
    return s + ">::value";
}

std::string to_dsl(const TypeExpr& t) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, te::Concrete>) {
                return node.type.to_string();
            } else if constexpr (std::is_same_v<N, te::Named>) {
                return node.name;
            } else if constexpr (std::is_same_v<N, te::TemplateId>) {
                std::string s = node.name + "<";
                for (size_t i = 0; i < node.args.size(); ++i) {
                    if (i) s += ", ";
                    s += to_dsl(*node.args[i]);
                }
                return s + ">";
            } else if constexpr (std::is_same_v<N, te::AddConst>) {
                // Pointer-level const is spelled east of the star.
                if (std::holds_alternative<te::PointerTo>(node.inner->node))
                    return to_dsl(*node.inner) + " const";
                return "const " + to_dsl(*node.inner);
            } else if constexpr (std::is_same_v<N, te::AddVolatile>) {
                if (std::holds_alternative<te::PointerTo>(node.inner->node))
                    return to_dsl(*node.inner) + " volatile";
                return "volatile " + to_dsl(*node.inner);
            } else if constexpr (std::is_same_v<N, te::PointerTo>) {
                return to_dsl(*node.inner) + "*";
            } else if constexpr (std::is_same_v<N, te::LvalueRefTo>) {
                return to_dsl(*node.inner) + "&";
            } else if constexpr (std::is_same_v<N, te::RvalueRefTo>) {
                return to_dsl(*node.inner) + "&&";
            } else if constexpr (std::is_same_v<N, te::DecltypeOf>) {
                return "decltype(" + to_dsl(*node.operand) + ")";
            } else if constexpr (std::is_same_v<N, te::FunctionOf>) {
                std::string s = to_dsl(*node.ret) + "(";
                for (size_t i = 0; i < node.params.size(); ++i) {
                    if (i) s += ", ";
                    s += to_dsl(*node.params[i]);
                }
                return s + ")";
            } else if constexpr (std::is_same_v<N, te::TraitApply>) {
                std::string s = node.trait + "<";
                bool first = true;
                for (const auto& c : node.conds) {
                    if (!first) s += ", ";
                    first = false;
                    s += to_dsl(c);
                }
                for (const auto& a : node.args) {
                    if (!first) s += ", ";
                    first = false;
                    s += to_dsl(*a);
                }
                return s + ">::type";
            }
        },
        t.node);
}

std::string to_dsl(const Expr& e) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using N = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<N, ex::IntLit>) {
                return std::to_string(node.value);
            } else if constexpr (std::is_same_v<N, ex::FloatLit>) {
                return float_text(node.value);
            } else if constexpr (std::is_same_v<N, ex::Id>) {
                return node.name;
            } else if constexpr (std::is_same_v<N, ex::Member>) {
                return to_dsl(*node.base) + (node.arrow ? "->" : ".") + node.field;
            } else if constexpr (std::is_same_v<N, ex::Call>) {
                std::string s = node.callee + "(";
                for (size_t i = 0; i < node.args.size(); ++i) {
                    if (i) s += ", ";
                    s += to_dsl(*node.args[i]);
                }
                return s + ")";
            } else if constexpr (std::is_same_v<N, ex::Paren>) {
                return "(" + to_dsl(*node.inner) + ")";
            } else if constexpr (std::is_same_v<N, ex::PostInc>) {
                return to_dsl(*node.operand) + "++";
            } else if constexpr (std::is_same_v<N, ex::Add>) {
                return to_dsl(*node.lhs) + " + " + to_dsl(*node.rhs);
            } else if constexpr (std::is_same_v<N, ex::Declval>) {
                return "declval<" + to_dsl(*node.arg) + ">()";
            }
        },
        e.node);
}

namespace {

bool equal_cond(const BoolSpec& a, const BoolSpec& b) {
    if (a.negated != b.negated || a.literal != b.literal || a.trait != b.trait) return false;
    if (a.args.size() != b.args.size()) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!structurally_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

} // namespace

bool structurally_equal(const TypeExpr& a, const TypeExpr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using N = std::decay_t<decltype(x)>;
            const auto& y = std::get<N>(b.node);
            if constexpr (std::is_same_v<N, te::Concrete>) {
                return x.type == y.type;
            } else if constexpr (std::is_same_v<N, te::Named>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<N, te::TemplateId>) {
                if (x.name != y.name || x.args.size() != y.args.size()) return false;
                for (size_t i = 0; i < x.args.size(); ++i)
                    if (!structurally_equal(*x.args[i], *y.args[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<N, te::AddConst> ||
                                 std::is_same_v<N, te::AddVolatile> ||
                                 std::is_same_v<N, te::PointerTo> ||
                                 std::is_same_v<N, te::LvalueRefTo> ||
                                 std::is_same_v<N, te::RvalueRefTo>) {
                return structurally_equal(*x.inner, *y.inner);
            } else if constexpr (std::is_same_v<N, te::DecltypeOf>) {
                return structurally_equal(*x.operand, *y.operand);
            } else if constexpr (std::is_same_v<N, te::FunctionOf>) {
                if (!structurally_equal(*x.ret, *y.ret)) return false;
                if (x.params.size() != y.params.size()) return false;
                for (size_t i = 0; i < x.params.size(); ++i)
                    if (!structurally_equal(*x.params[i], *y.params[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<N, te::TraitApply>) {
                if (x.trait != y.trait || x.args.size() != y.args.size() ||
                    x.conds.size() != y.conds.size())
                    return false;
                for (size_t i = 0; i < x.args.size(); ++i)
                    if (!structurally_equal(*x.args[i], *y.args[i])) return false;
                for (size_t i = 0; i < x.conds.size(); ++i)
                    if (!equal_cond(x.conds[i], y.conds[i])) return false;
                return true;
            }
        },
        a.node);
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using N = std::decay_t<decltype(x)>;
            const auto& y = std::get<N>(b.node);
            if constexpr (std::is_same_v<N, ex::IntLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<N, ex::FloatLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<N, ex::Id>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<N, ex::Member>) {
                return x.field == y.field && x.arrow == y.arrow &&
                       structurally_equal(*x.base, *y.base);
            } else if constexpr (std::is_same_v<N, ex::Call>) {
                if (x.callee != y.callee || x.args.size() != y.args.size()) return false;
                for (size_t i = 0; i < x.args.size(); ++i)
                    if (!structurally_equal(*x.args[i], *y.args[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<N, ex::Paren>) {
                return structurally_equal(*x.inner, *y.inner);
            } else if constexpr (std::is_same_v<N, ex::PostInc>) {
                return structurally_equal(*x.operand, *y.operand);
            } else if constexpr (std::is_same_v<N, ex::Add>) {
                return structurally_equal(*x.lhs, *y.lhs) && structurally_equal(*x.rhs, *y.rhs);
            } else if constexpr (std::is_same_v<N, ex::Declval>) {
                return structurally_equal(*x.arg, *y.arg);
            }
        },
        a.node);
}

} // namespace deducto
