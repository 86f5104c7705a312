#include "portalis/core/model.hpp"

#include <functional>

#include "portalis/error.hpp"

namespace portalis::core {

const FieldDecl* Concept::find(std::string_view field) const noexcept {
    for (const auto& f : fields) {
        if (f.name == field) return &f;
    }
    return nullptr;
}

bool is_builtin_field(std::string_view name) noexcept {
    return name == kBuiltinId || name == kBuiltinConcept || name == kBuiltinVersion;
}

void validate_concept(const Concept& def, const std::set<std::string, std::less<>>& known_concepts) {
    if (def.fields.empty()) {
        throw Error(ErrorCode::InvalidDeclaration, "concept '" + def.name + "' declares no fields");
    }
    std::set<std::string_view> seen;
    for (const auto& f : def.fields) {
        if (is_builtin_field(f.name)) {
            throw Error(ErrorCode::InvalidDeclaration, "field name '" + f.name + "' is reserved");
        }
        if (!seen.insert(f.name).second) {
            throw Error(ErrorCode::InvalidDeclaration,
                        "duplicate field '" + f.name + "' in concept '" + def.name + "'");
        }
        if (f.type.kind == Kind::Reference && !known_concepts.contains(f.type.target)) {
            throw Error(ErrorCode::UnknownConcept, "field '" + f.name + "' references unknown concept '" +
                                                       f.type.target + "'");
        }
    }
}

void validate_values(const Concept& def, const ValueMap& values, bool total) {
    for (const auto& [name, value] : values) {
        const FieldDecl* decl = def.find(name);
        if (!decl) {
            throw Error(ErrorCode::UnknownField, "concept '" + def.name + "' has no field '" + name + "'");
        }
        if (!admits(decl->type, value)) {
            throw Error(ErrorCode::KindMismatch, "field '" + name + "' is " + std::string(to_string(decl->type.kind)) +
                                                     ", got " + render(value));
        }
    }
    if (total) {
        for (const auto& f : def.fields) {
            if (!values.contains(f.name)) {
                throw Error(ErrorCode::PartialAssignment, "missing value for field '" + f.name + "'");
            }
        }
    }
}

const StateRecord& state_at(const Individual& individual, Version version) {
    if (!version) return individual.current();
    if (*version >= individual.states.size()) {
        throw Error(ErrorCode::UnknownVersion,
                    "individual '" + individual.id + "' has no version " + std::to_string(*version));
    }
    return individual.states[*version];
}

std::optional<Value> StateBindings::field(std::string_view name) const {
    if (name == kBuiltinId) return text(individual_.id);
    if (name == kBuiltinConcept) return text(individual_.concept_name);
    if (name == kBuiltinVersion) return integer(static_cast<std::int64_t>(state_.version));
    auto it = state_.values.find(name);
    if (it == state_.values.end()) return std::nullopt;
    return it->second;
}

void Store::add_concept(Concept def) {
    if (concepts_.contains(def.name)) {
        throw Error(ErrorCode::InvalidDeclaration, "concept '" + def.name + "' declared twice");
    }
    std::set<std::string, std::less<>> known;
    for (const auto& [name, _] : concepts_) known.insert(name);
    known.insert(def.name);
    validate_concept(def, known);
    std::string name = def.name;
    concepts_.emplace(std::move(name), std::move(def));
    ++revision_;
}

void Store::add_concepts(std::vector<Concept> defs) {
    std::set<std::string, std::less<>> known;
    for (const auto& [name, _] : concepts_) known.insert(name);
    for (const auto& def : defs) {
        if (!known.insert(def.name).second) {
            throw Error(ErrorCode::InvalidDeclaration, "concept '" + def.name + "' declared twice");
        }
    }
    for (const auto& def : defs) validate_concept(def, known);
    for (auto& def : defs) {
        std::string name = def.name;
        concepts_.emplace(std::move(name), std::move(def));
    }
    ++revision_;
}

const Individual& Store::create(std::string id, std::string_view concept_name, ValueMap values) {
    const Concept& c = concept_of(concept_name);
    if (individuals_.contains(id)) {
        throw Error(ErrorCode::InvalidDeclaration, "individual id '" + id + "' already in use");
    }
    validate_values(c, values, true);
    Individual ind{id, c.name, {StateRecord{0, std::move(values), "initial"}}};
    auto [it, _] = individuals_.emplace(std::move(id), std::move(ind));
    ++revision_;
    return it->second;
}

const Individual& Store::transition(std::string_view id, const ValueMap& changes, std::string cause) {
    auto it = individuals_.find(id);
    if (it == individuals_.end()) throw Error(ErrorCode::UnknownIndividual, "no individual '" + std::string(id) + "'");
    const Concept& c = concept_of(it->second.concept_name);
    for (const auto& [name, value] : changes) {
        if (const FieldDecl* decl = c.find(name)) check_reference(*decl, value);
    }
    it->second = core::transition(c, it->second, changes, std::move(cause));
    ++revision_;
    return it->second;
}

void Store::check_reference(const FieldDecl& field, const Value& value) const {
    const auto* ref = std::get_if<ObjectRef>(&value);
    if (field.type.kind != Kind::Reference || !ref) return;
    const Individual* target = find(ref->id);
    if (!target) throw Error(ErrorCode::UnknownIndividual, "field '" + field.name + "' references unknown '" + ref->id + "'");
    if (target->concept_name != field.type.target) {
        throw Error(ErrorCode::ConceptMismatch, "field '" + field.name + "' expects " + field.type.target + ", '" +
                                                    ref->id + "' is " + target->concept_name);
    }
}

void Store::validate_references() const {
    for (const auto& [id, ind] : individuals_) {
        const Concept& c = concept_of(ind.concept_name);
        for (const auto& state : ind.states) {
            for (const auto& [name, value] : state.values) {
                if (const FieldDecl* decl = c.find(name)) check_reference(*decl, value);
            }
        }
    }
}

const Concept* Store::find_concept(std::string_view name) const noexcept {
    auto it = concepts_.find(name);
    return it == concepts_.end() ? nullptr : &it->second;
}

const Concept& Store::concept_of(std::string_view name) const {
    if (const Concept* c = find_concept(name)) return *c;
    throw Error(ErrorCode::UnknownConcept, "no concept '" + std::string(name) + "'");
}

const Individual* Store::find(std::string_view id) const noexcept {
    auto it = individuals_.find(id);
    return it == individuals_.end() ? nullptr : &it->second;
}

const Individual& Store::individual(std::string_view id) const {
    if (const Individual* ind = find(id)) return *ind;
    throw Error(ErrorCode::UnknownIndividual, "no individual '" + std::string(id) + "'");
}

std::vector<Individual> Store::individuals_of(std::string_view concept_name) const {
    std::vector<Individual> out;
    for (const auto& [_, ind] : individuals_) {
        if (ind.concept_name == concept_name) out.push_back(ind);
    }
    return out;
}

std::vector<Individual> Store::all_individuals() const {
    std::vector<Individual> out;
    out.reserve(individuals_.size());
    for (const auto& [_, ind] : individuals_) out.push_back(ind);
    return out;
}

std::size_t Store::content_hash() const {
    std::string canon;
    for (const auto& [name, c] : concepts_) {
        canon += "concept " + name + "(";
        for (const auto& f : c.fields) canon += f.name + ":" + std::string(to_string(f.type.kind)) + f.type.target + ",";
        canon += ")\n";
    }
    for (const auto& [id, ind] : individuals_) {
        canon += "individual " + id + ":" + ind.concept_name + "\n";
        for (const auto& s : ind.states) {
            canon += "  " + std::to_string(s.version) + " " + s.cause + " {";
            for (const auto& [k, v] : s.values) canon += k + "=" + render(v) + ",";
            canon += "}\n";
        }
    }
    return std::hash<std::string>{}(canon);
}

Shape concept_shape(const Concept& def) {
    Shape shape;
    for (const auto& f : def.fields) shape.fields.emplace(f.name, f.type);
    shape.fields.emplace(std::string(kBuiltinId), FieldType{Kind::Text, {}});
    shape.fields.emplace(std::string(kBuiltinConcept), FieldType{Kind::Text, {}});
    shape.fields.emplace(std::string(kBuiltinVersion), FieldType{Kind::Integer, {}});
    return shape;
}

std::optional<Value> DataObjectBindings::field(std::string_view name) const {
    if (name == kBuiltinId) return text(object_.id);
    if (name == kBuiltinConcept) return text(object_.concept_name);
    if (name == kBuiltinVersion) return integer(static_cast<std::int64_t>(object_.state.version));
    auto it = object_.state.values.find(name);
    if (it == object_.state.values.end()) return std::nullopt;
    return it->second;
}

Shape domain_shape(const Store& schema, std::span<const Individual> domain,
                   std::optional<std::string_view> fallback_concept) {
    Shape shape;
    std::set<std::string_view> concepts;
    for (const auto& ind : domain) concepts.insert(ind.concept_name);
    if (concepts.empty() && fallback_concept) concepts.insert(*fallback_concept);

    bool first = true;
    for (std::string_view name : concepts) {
        const Concept& c = schema.concept_of(name);
        if (first) {
            for (const auto& f : c.fields) shape.fields.emplace(f.name, f.type);
            first = false;
            continue;
        }
        std::erase_if(shape.fields, [&](const auto& entry) {
            const FieldDecl* f = c.find(entry.first);
            return !f || !(f->type == entry.second);
        });
    }
    shape.fields.emplace(std::string(kBuiltinId), FieldType{Kind::Text, {}});
    shape.fields.emplace(std::string(kBuiltinConcept), FieldType{Kind::Text, {}});
    shape.fields.emplace(std::string(kBuiltinVersion), FieldType{Kind::Integer, {}});
    return shape;
}

IdSet comprehend(const Store& schema, std::span<const Individual> domain, const Expr& phi, Version version) {
    validate_predicate(phi, domain_shape(schema, domain));
    IdSet out;
    for (const auto& ind : domain) {
        const StateRecord& state = state_at(ind, version);
        if (holds(phi, StateBindings(ind, state))) out.insert(ind.id);
    }
    return out;
}

const Individual& individualize(const Store& schema, std::span<const Individual> domain, const Expr& phi,
                                Version version) {
    IdSet satisfiers = comprehend(schema, domain, phi, version);
    if (satisfiers.empty()) throw Error(ErrorCode::NotIndividualized, "no individual satisfies the description");
    if (satisfiers.size() > 1) {
        throw Error(ErrorCode::AmbiguousDescription,
                    std::to_string(satisfiers.size()) + " individuals satisfy the description");
    }
    for (const auto& ind : domain) {
        if (ind.id == *satisfiers.begin()) return ind;
    }
    throw Error(ErrorCode::UnknownIndividual, *satisfiers.begin());
}

Individual transition(const Concept& def, const Individual& individual, const ValueMap& changes,
                      std::string cause) {
    validate_values(def, changes, false);
    Individual next = individual;
    StateRecord record{individual.states.size(), individual.current().values, std::move(cause)};
    for (const auto& [name, value] : changes) record.values.insert_or_assign(name, value);
    next.states.push_back(std::move(record));
    return next;
}

SortVariable bind_sort(const Store& store, std::set<std::string> index_set, std::string concept_name,
                       std::map<std::string, std::string> mapping) {
    store.concept_of(concept_name);
    for (const auto& index : index_set) {
        auto it = mapping.find(index);
        if (it == mapping.end()) {
            throw Error(ErrorCode::PartialAssignment, "index '" + index + "' has no image");
        }
        const Individual* image = store.find(it->second);
        if (!image) throw Error(ErrorCode::UnknownIndividual, "no individual '" + it->second + "'");
        if (image->concept_name != concept_name) {
            throw Error(ErrorCode::ConceptMismatch,
                        "'" + it->second + "' is a " + image->concept_name + ", expected " + concept_name);
        }
    }
    for (const auto& [index, _] : mapping) {
        if (!index_set.contains(index)) {
            throw Error(ErrorCode::PartialAssignment, "mapping assigns '" + index + "' outside the index set");
        }
    }
    return SortVariable{std::move(index_set), std::move(concept_name), std::move(mapping)};
}

}  // namespace portalis::core
