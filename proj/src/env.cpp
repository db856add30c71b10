#include "deducto/env.hpp"

namespace deducto {

const Type* ClassInfo::find_field(const std::string& n) const {
    for (const auto& [name, type] : fields)
        if (name == n) return &type;
    return nullptr;
}

const Type* ClassInfo::find_static_field(const std::string& n) const {
    for (const auto& [name, type] : static_fields)
        if (name == n) return &type;
    return nullptr;
}

void Env::insert(const std::string& name, Entity entity, SourceLoc loc) {
    auto [it, inserted] = entries_.emplace(name, std::move(entity));
    if (!inserted)
        throw Error(ErrorCode::Redeclaration, "'" + name + "' is already declared in this scope",
                    name, loc);
}

void Env::declare_variable(const std::string& name, Type type, SourceLoc loc) {
    insert(name, VariableEntity{std::move(type)}, loc);
}

void Env::declare_function(const std::string& name, Type signature, SourceLoc loc) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
        OverloadSet set{name, {}};
        set.entries.push_back(OverloadEntry{std::move(signature), std::nullopt});
        entries_.emplace(name, std::move(set));
        return;
    }
    auto* set = std::get_if<OverloadSet>(&it->second);
    if (!set)
        throw Error(ErrorCode::Redeclaration, "'" + name + "' is already declared in this scope",
                    name, loc);
    set->entries.push_back(OverloadEntry{std::move(signature), std::nullopt});
}

void Env::declare_template_function(TemplateFunction fn) {
    auto it = entries_.find(fn.name);
    if (it == entries_.end()) {
        OverloadSet set{fn.name, {}};
        set.entries.push_back(OverloadEntry{std::nullopt, std::move(fn)});
        entries_.emplace(set.name, std::move(set));
        return;
    }
    auto* set = std::get_if<OverloadSet>(&it->second);
    if (!set)
        throw Error(ErrorCode::Redeclaration,
                    "'" + fn.name + "' is already declared in this scope", fn.name, fn.loc);
    set->entries.push_back(OverloadEntry{std::nullopt, std::move(fn)});
}

void Env::declare_class(ClassDef def) {
    std::string name = def.name;
    SourceLoc loc = def.loc;
    insert(name, ClassEntity{std::move(def)}, loc);
}

const Entity* Env::lookup(const std::string& name) const {
    for (const Env* e = this; e; e = e->parent_) {
        auto it = e->entries_.find(name);
        if (it != e->entries_.end()) return &it->second;
    }
    return nullptr;
}

const ClassDef* Env::lookup_class(const std::string& name) const {
    const Entity* entity = lookup(name);
    if (!entity) return nullptr;
    const auto* cls = std::get_if<ClassEntity>(entity);
    return cls ? &cls->def : nullptr;
}

} // namespace deducto
