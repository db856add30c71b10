#include "deducto/types.hpp"

#include <cassert>

namespace deducto {

const char* scalar_name(ScalarKind k) {
    switch (k) {
        case ScalarKind::Bool: return "bool";
        case ScalarKind::Char: return "char";
        case ScalarKind::SChar: return "signed char";
        case ScalarKind::UChar: return "unsigned char";
        case ScalarKind::Short: return "short";
        case ScalarKind::UShort: return "unsigned short";
        case ScalarKind::Int: return "int";
        case ScalarKind::UInt: return "unsigned int";
        case ScalarKind::Long: return "long";
        case ScalarKind::ULong: return "unsigned long";
        case ScalarKind::LongLong: return "long long";
        case ScalarKind::ULongLong: return "unsigned long long";
        case ScalarKind::Float: return "float";
        case ScalarKind::Double: return "double";
        case ScalarKind::LongDouble: return "long double";
        case ScalarKind::Void: return "void";
    }
    return "?";
}

bool is_integral_kind(ScalarKind k) {
    switch (k) {
        case ScalarKind::Bool:
        case ScalarKind::Char:
        case ScalarKind::SChar:
        case ScalarKind::UChar:
        case ScalarKind::Short:
        case ScalarKind::UShort:
        case ScalarKind::Int:
        case ScalarKind::UInt:
        case ScalarKind::Long:
        case ScalarKind::ULong:
        case ScalarKind::LongLong:
        case ScalarKind::ULongLong:
            return true;
        default:
            return false;
    }
}

bool is_floating_kind(ScalarKind k) {
    return k == ScalarKind::Float || k == ScalarKind::Double || k == ScalarKind::LongDouble;
}

int conversion_rank(ScalarKind k) {
    switch (k) {
        case ScalarKind::Bool: return 0;
        case ScalarKind::Char:
        case ScalarKind::SChar:
        case ScalarKind::UChar: return 1;
        case ScalarKind::Short:
        case ScalarKind::UShort: return 2;
        case ScalarKind::Int: return 3;
        case ScalarKind::UInt: return 4;
        case ScalarKind::Long: return 5;
        case ScalarKind::ULong: return 6;
        case ScalarKind::LongLong: return 7;
        case ScalarKind::ULongLong: return 8;
        case ScalarKind::Float: return 9;
        case ScalarKind::Double: return 10;
        case ScalarKind::LongDouble: return 11;
        case ScalarKind::Void: break;
    }
    return -1;
}

const char* category_name(ValueCategory c) {
    switch (c) {
        case ValueCategory::Lvalue: return "lvalue";
        case ValueCategory::Xvalue: return "xvalue";
        case ValueCategory::Prvalue: return "prvalue";
    }
    return "?";
}

struct Type::Node {
    Kind kind = Kind::Scalar;
    bool is_const = false;
    bool is_volatile = false;
    ScalarKind scalar = ScalarKind::Void;
    std::string name;              // Class
    std::vector<Type> args;        // Class arguments / Function parameters
    std::shared_ptr<const Node> inner;  // pointee / referee / return type
};

Type::Type() : Type(scalar(ScalarKind::Void)) {}

Type Type::scalar(ScalarKind k, bool is_const, bool is_volatile) {
    Node n;
    n.kind = Kind::Scalar;
    n.scalar = k;
    n.is_const = is_const;
    n.is_volatile = is_volatile;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type Type::class_type(std::string name, std::vector<Type> args, bool is_const, bool is_volatile) {
    Node n;
    n.kind = Kind::Class;
    n.name = std::move(name);
    n.args = std::move(args);
    n.is_const = is_const;
    n.is_volatile = is_volatile;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type Type::pointer(Type pointee, bool is_const, bool is_volatile) {
    assert(!pointee.is_reference() && "pointer to reference is not a type");
    Node n;
    n.kind = Kind::Pointer;
    n.inner = pointee.node_;
    n.is_const = is_const;
    n.is_volatile = is_volatile;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type Type::lvalue_ref(Type referee) {
    assert(!referee.is_reference() && "use collapse_refs to stack references");
    Node n;
    n.kind = Kind::LValueRef;
    n.inner = referee.node_;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type Type::rvalue_ref(Type referee) {
    assert(!referee.is_reference() && "use collapse_refs to stack references");
    Node n;
    n.kind = Kind::RValueRef;
    n.inner = referee.node_;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type Type::function(std::vector<Type> params, Type ret) {
    Node n;
    n.kind = Kind::Function;
    n.args = std::move(params);
    n.inner = ret.node_;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type::Kind Type::kind() const { return node_->kind; }

bool Type::is_void() const { return is_scalar() && node_->scalar == ScalarKind::Void; }
bool Type::is_integral() const { return is_scalar() && is_integral_kind(node_->scalar); }
bool Type::is_floating_point() const { return is_scalar() && is_floating_kind(node_->scalar); }
bool Type::is_arithmetic() const { return is_integral() || is_floating_point(); }

ScalarKind Type::scalar_kind() const {
    assert(is_scalar());
    return node_->scalar;
}

const std::string& Type::class_name() const {
    assert(is_class());
    return node_->name;
}

const std::vector<Type>& Type::class_args() const {
    assert(is_class());
    return node_->args;
}

Type Type::pointee() const {
    assert(is_pointer());
    return Type(node_->inner);
}

Type Type::referee() const {
    assert(is_reference());
    return Type(node_->inner);
}

const std::vector<Type>& Type::params() const {
    assert(is_function());
    return node_->args;
}

Type Type::return_type() const {
    assert(is_function());
    return Type(node_->inner);
}

bool Type::is_const() const { return node_->is_const; }
bool Type::is_volatile() const { return node_->is_volatile; }

Type Type::with_const(bool c) const {
    if (is_reference() || is_function() || is_const() == c) return *this;
    Node n = *node_;
    n.is_const = c;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type Type::with_volatile(bool v) const {
    if (is_reference() || is_function() || is_volatile() == v) return *this;
    Node n = *node_;
    n.is_volatile = v;
    return Type(std::make_shared<const Node>(std::move(n)));
}

Type Type::without_cv() const { return with_const(false).with_volatile(false); }

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.is_const != y.is_const || x.is_volatile != y.is_volatile)
        return false;
    switch (x.kind) {
        case Type::Kind::Scalar:
            return x.scalar == y.scalar;
        case Type::Kind::Class:
            if (x.name != y.name || x.args.size() != y.args.size()) return false;
            for (size_t i = 0; i < x.args.size(); ++i)
                if (x.args[i] != y.args[i]) return false;
            return true;
        case Type::Kind::Pointer:
        case Type::Kind::LValueRef:
        case Type::Kind::RValueRef:
            return Type(x.inner) == Type(y.inner);
        case Type::Kind::Function:
            if (x.args.size() != y.args.size()) return false;
            for (size_t i = 0; i < x.args.size(); ++i)
                if (x.args[i] != y.args[i]) return false;
            return Type(x.inner) == Type(y.inner);
    }
    return false;
}

std::string Type::to_string() const {
    std::string cv;
    if (is_const()) cv += "const ";
    if (is_volatile()) cv += "volatile ";
    switch (kind()) {
        case Kind::Scalar:
            return cv + scalar_name(node_->scalar);
        case Kind::Class: {
            std::string s = cv + node_->name;
            if (!node_->args.empty()) {
                s += '<';
                for (size_t i = 0; i < node_->args.size(); ++i) {
                    if (i) s += ", ";
                    s += node_->args[i].to_string();
                }
                s += '>';
            }
            return s;
        }
        case Kind::Pointer: {
            std::string s = pointee().to_string() + "*";
            if (is_const()) s += " const";
            if (is_volatile()) s += " volatile";
            return s;
        }
        case Kind::LValueRef:
            return referee().to_string() + "&";
        case Kind::RValueRef:
            return referee().to_string() + "&&";
        case Kind::Function: {
            std::string s = return_type().to_string() + "(";
            for (size_t i = 0; i < node_->args.size(); ++i) {
                if (i) s += ", ";
                s += node_->args[i].to_string();
            }
            s += ')';
            return s;
        }
    }
    return "?";
}

Type collapse_refs(RefKind outer, const Type& inner) {
    if (outer == RefKind::Lvalue)
        return Type::lvalue_ref(inner.is_reference() ? inner.referee() : inner);
    if (inner.is_lvalue_ref()) return inner;
    return Type::rvalue_ref(inner.is_rvalue_ref() ? inner.referee() : inner);
}

Type strip_ref_and_top_cv(const Type& t) {
    Type base = t.is_reference() ? t.referee() : t;
    return base.without_cv();
}

Type common_arithmetic_type(const Type& a, const Type& b) {
    if (!a.is_arithmetic() || !b.is_arithmetic())
        throw Error(ErrorCode::NotArithmetic,
                    "no arithmetic conversion between '" + a.to_string() + "' and '" +
                        b.to_string() + "'");
    const int int_rank = conversion_rank(ScalarKind::Int);
    auto promote = [&](ScalarKind k) {
        return conversion_rank(k) < int_rank ? ScalarKind::Int : k;
    };
    ScalarKind ka = promote(a.scalar_kind());
    ScalarKind kb = promote(b.scalar_kind());
    return Type::scalar(conversion_rank(ka) >= conversion_rank(kb) ? ka : kb);
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnsupportedPattern: return "UnsupportedPattern";
        case ErrorCode::UnknownTrait: return "UnknownTrait";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::Redeclaration: return "Redeclaration";
        case ErrorCode::NotAType: return "NotAType";
        case ErrorCode::NoSuchField: return "NoSuchField";
        case ErrorCode::NotAPointer: return "NotAPointer";
        case ErrorCode::NotAClass: return "NotAClass";
        case ErrorCode::NotArithmetic: return "NotArithmetic";
        case ErrorCode::NotCallable: return "NotCallable";
        case ErrorCode::InvalidOperand: return "InvalidOperand";
        case ErrorCode::PointerToReference: return "PointerToReference";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::RecursiveType: return "RecursiveType";
        case ErrorCode::NonEvaluableExpr: return "NonEvaluableExpr";
        case ErrorCode::DeclvalInEvaluatedContext: return "DeclvalInEvaluatedContext";
        case ErrorCode::CannotBindNonConstRef: return "CannotBindNonConstRef";
        case ErrorCode::NotDeducible: return "NotDeducible";
        case ErrorCode::SubstitutionFailure: return "SubstitutionFailure";
        case ErrorCode::NoViableOverload: return "NoViableOverload";
        case ErrorCode::AmbiguousOverload: return "AmbiguousOverload";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::CompilerUnavailable: return "CompilerUnavailable";
    }
    return "?";
}

} // namespace deducto
