#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "deducto/typeexpr.hpp"
#include "deducto/types.hpp"

namespace deducto {

class Env;

enum class DeclStyle { Leading, Trailing };

struct FnParam {
    std::string name;       // may be empty for unnamed parameters
    TypeExprPtr type;
};

/// A function declaration form: leading `ret name(params)` or trailing
/// `auto name(params) -> ret`. The style decides the scope in which the
/// return type expression is resolved.
struct FnDeclForm {
    DeclStyle style = DeclStyle::Leading;
    std::vector<FnParam> params;
    TypeExprPtr return_type;
};

struct TemplateFunction {
    std::string name;
    std::vector<std::string> template_params;
    FnDeclForm form;
    SourceLoc loc;
};

/// Declared class (possibly a class template). Field types stay unresolved
/// until instantiation.
struct ClassDef {
    struct Member {
        std::string name;
        TypeExprPtr type;
    };

    std::string name;
    std::vector<std::string> template_params;
    std::vector<Member> fields;
    std::vector<Member> static_fields;
    std::vector<FnDeclForm> call_operators;
    bool is_abstract = false;
    bool is_trivially_copy_assignable = true;
    SourceLoc loc;
};

/// A class def instantiated with concrete arguments: field types resolved.
struct ClassInfo {
    std::string name;
    std::vector<Type> args;
    std::vector<std::pair<std::string, Type>> fields;
    std::vector<std::pair<std::string, Type>> static_fields;
    std::vector<Type> call_operators;   // Function types
    bool is_abstract = false;
    bool is_trivially_copy_assignable = true;

    const Type* find_field(const std::string& n) const;
    const Type* find_static_field(const std::string& n) const;
};

/// Session-level instantiation cache, keyed by the canonical spelling of
/// the instance. One registry per checking session; not shared across
/// concurrent sessions.
class ClassRegistry {
public:
    /// Substitutes the def's field type expressions under the given
    /// arguments, memoizing per (name, args). Defined in resolve.cpp.
    const ClassInfo& instantiate(const ClassDef& def, std::vector<Type> args, const Env& env);

private:
    std::map<std::string, ClassInfo> memo_;
    std::set<std::string> in_progress_;
};

struct VariableEntity {
    Type type;
};

/// One member of an overload set: a resolved plain signature or a template.
struct OverloadEntry {
    std::optional<Type> signature;            // plain function (Function type)
    std::optional<TemplateFunction> tmpl;
};

struct OverloadSet {
    std::string name;
    std::vector<OverloadEntry> entries;
};

struct ClassEntity {
    ClassDef def;
};

using Entity = std::variant<VariableEntity, OverloadSet, ClassEntity>;

/// Scoped name -> entity map with parent link. Lookup resolves to the
/// innermost scope declaring the name; redeclaring a name in one scope is
/// an error except for function overloads.
class Env {
public:
    explicit Env(ClassRegistry* registry) : registry_(registry) {}
    explicit Env(const Env* parent) : parent_(parent), registry_(parent->registry_) {}

    void declare_variable(const std::string& name, Type type, SourceLoc loc = {});
    void declare_function(const std::string& name, Type signature, SourceLoc loc = {});
    void declare_template_function(TemplateFunction fn);
    void declare_class(ClassDef def);

    const Entity* lookup(const std::string& name) const;
    /// Convenience: the ClassDef for `name`, or null if it is not a class.
    const ClassDef* lookup_class(const std::string& name) const;

    ClassRegistry& registry() const { return *registry_; }

private:
    void insert(const std::string& name, Entity entity, SourceLoc loc);

    const Env* parent_ = nullptr;
    ClassRegistry* registry_ = nullptr;
    std::map<std::string, Entity> entries_;
};

} // namespace deducto
