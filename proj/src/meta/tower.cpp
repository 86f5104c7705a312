#include "portalis/meta/tower.hpp"

#include <functional>

#include "portalis/error.hpp"

namespace portalis::meta {

namespace {

class ClassifierBindings final : public core::Bindings {
public:
    explicit ClassifierBindings(const MetaPredicate& p) : p_(p) {}
    std::optional<core::Value> field(std::string_view name) const override {
        if (name == "id") return core::text(p_.id);
        if (name == "level") return core::integer(static_cast<std::int64_t>(p_.level));
        if (name == "extensionSize") return core::integer(static_cast<std::int64_t>(p_.extension.size()));
        return std::nullopt;
    }

private:
    const MetaPredicate& p_;
};

}  // namespace

core::Shape MetaTower::shape_at(const core::Store& store, std::size_t level) const {
    if (level > max_depth_) {
        throw Error(ErrorCode::DepthExceeded,
                    "level " + std::to_string(level) + " exceeds tower depth " + std::to_string(max_depth_));
    }
    if (level == 0) {
        auto all = store.all_individuals();
        return core::domain_shape(store, all);
    }
    core::Shape shape;
    shape.fields.emplace("id", core::FieldType{core::Kind::Text, {}});
    shape.fields.emplace("level", core::FieldType{core::Kind::Integer, {}});
    shape.fields.emplace("extensionSize", core::FieldType{core::Kind::Integer, {}});
    return shape;
}

const MetaPredicate& MetaTower::lift(const core::Store& store, std::size_t level, core::ExprPtr phi,
                                     std::optional<std::string> name) {
    if (level >= max_depth_) {
        throw Error(ErrorCode::DepthExceeded, "cannot lift level " + std::to_string(level) + " in a tower of depth " +
                                                  std::to_string(max_depth_));
    }
    core::validate_predicate(*phi, shape_at(store, level));

    if (!name) {
        for (const auto& [id, p] : predicates_) {
            if (p.level == level + 1 && core::same_expr(p.definition, phi)) return p;
        }
        do {
            name = "meta" + std::to_string(level + 1) + "_" + std::to_string(anonymous_count_++);
        } while (predicates_.contains(*name) || store.find(*name));
    } else if (predicates_.contains(*name) || store.find(*name)) {
        throw Error(ErrorCode::InvalidDeclaration, "object id '" + *name + "' already in use");
    }

    MetaPredicate p{*name, level + 1, std::move(phi), {}};
    auto [it, _] = predicates_.emplace(*name, std::move(p));
    // Classifiers above the new one may count it.
    refresh(store);
    return it->second;
}

bool MetaTower::evaluate_on(const core::Store& store, const core::Expr& phi, std::size_t level,
                            std::string_view object_id) const {
    if (level == 0) {
        const core::Individual& ind = store.individual(object_id);
        return core::holds(phi, core::StateBindings(ind, ind.current()));
    }
    return core::holds(phi, ClassifierBindings(predicate(object_id)));
}

core::IdSet MetaTower::extension_of(const core::Store& store, const MetaPredicate& p) const {
    core::IdSet out;
    std::size_t below = p.level - 1;
    if (below == 0) {
        for (const auto& [id, ind] : store.individuals()) {
            if (core::holds(*p.definition, core::StateBindings(ind, ind.current()))) out.insert(id);
        }
        return out;
    }
    for (const auto& [id, q] : predicates_) {
        if (q.level == below && core::holds(*p.definition, ClassifierBindings(q))) out.insert(id);
    }
    return out;
}

bool MetaTower::apply_meta(const core::Store& store, std::string_view predicate_id,
                           std::string_view object_id) const {
    const MetaPredicate& z = predicate(predicate_id);
    auto level = level_of(store, object_id);
    if (!level) throw Error(ErrorCode::UnknownObject, "no object '" + std::string(object_id) + "'");
    if (*level + 1 != z.level) {
        throw Error(ErrorCode::LevelMismatch, "'" + std::string(object_id) + "' lives at level " +
                                                  std::to_string(*level) + ", '" + z.id + "' classifies level " +
                                                  std::to_string(z.level - 1));
    }
    return evaluate_on(store, *z.definition, *level, object_id);
}

core::IdSet MetaTower::comprehend_at_level(const core::Store& store, std::size_t level, const core::Expr& phi) const {
    core::validate_predicate(phi, shape_at(store, level));
    core::IdSet out;
    if (level == 0) {
        for (const auto& [id, ind] : store.individuals()) {
            if (core::holds(phi, core::StateBindings(ind, ind.current()))) out.insert(id);
        }
        return out;
    }
    for (const auto& [id, p] : predicates_) {
        if (p.level == level && core::holds(phi, ClassifierBindings(p))) out.insert(id);
    }
    return out;
}

std::optional<std::size_t> MetaTower::level_of(const core::Store& store, std::string_view object_id) const {
    if (store.find(object_id)) return 0;
    auto it = predicates_.find(object_id);
    if (it != predicates_.end()) return it->second.level;
    return std::nullopt;
}

MetadataRecord MetaTower::describe(const core::Store& store, std::string_view subject) const {
    auto level = level_of(store, subject);
    if (!level) throw Error(ErrorCode::UnknownObject, "no object '" + std::string(subject) + "'");
    if (auto it = records_.find(subject); it != records_.end()) return it->second;

    MetadataRecord record;
    record.subject = std::string(subject);
    if (*level == 0) {
        const auto& def = store.concept_of(store.individual(subject).concept_name);
        for (const auto& f : def.fields) record.dimensions.push_back(f.name);
    } else {
        record.dimensions = {"id", "level", "extensionSize"};
    }
    return record;
}

void MetaTower::annotate(const core::Store& store, MetadataRecord record) {
    MetadataRecord base = describe(store, record.subject);
    std::size_t level = *level_of(store, record.subject);
    for (const auto& constraint : record.integrity_constraints) {
        auto it = predicates_.find(constraint);
        if (it == predicates_.end()) {
            throw Error(ErrorCode::UnknownObject, "no classifier '" + constraint + "'");
        }
        if (it->second.level != level + 1) {
            throw Error(ErrorCode::LevelMismatch, "constraint '" + constraint + "' is a level-" +
                                                      std::to_string(it->second.level) + " classifier, subject '" +
                                                      record.subject + "' lives at level " + std::to_string(level));
        }
    }
    record.dimensions = std::move(base.dimensions);
    std::string key = record.subject;
    records_.insert_or_assign(std::move(key), std::move(record));
}

void MetaTower::refresh(const core::Store& store) {
    for (std::size_t level = 1; level <= max_depth_; ++level) {
        const core::Shape below = shape_at(store, level - 1);
        for (auto& [id, p] : predicates_) {
            if (p.level != level) continue;
            core::validate_predicate(*p.definition, below);
            p.extension = extension_of(store, p);
        }
    }
}

const MetaPredicate& MetaTower::predicate(std::string_view id) const {
    auto it = predicates_.find(id);
    if (it == predicates_.end()) throw Error(ErrorCode::UnknownObject, "no classifier '" + std::string(id) + "'");
    return it->second;
}

std::vector<const MetaPredicate*> MetaTower::level(std::size_t level) const {
    std::vector<const MetaPredicate*> out;
    for (const auto& [_, p] : predicates_) {
        if (p.level == level) out.push_back(&p);
    }
    return out;
}

std::size_t MetaTower::definitions_hash() const {
    std::string canon;
    for (const auto& [id, p] : predicates_) {
        canon += id + "@" + std::to_string(p.level) + ":" + core::to_source(*p.definition) + "\n";
    }
    return std::hash<std::string>{}(canon);
}

std::size_t MetaTower::content_hash() const {
    std::string canon = std::to_string(definitions_hash()) + "\n";
    for (const auto& [id, p] : predicates_) {
        canon += id + "{";
        for (const auto& x : p.extension) canon += x + ",";
        canon += "}\n";
    }
    for (const auto& [subject, r] : records_) {
        canon += subject + " " + std::string(profile::to_string(r.access_rights));
        for (const auto& c : r.integrity_constraints) canon += " " + c;
        for (const auto& [k, v] : r.extras) canon += " " + k + "=" + v;
        canon += "\n";
    }
    return std::hash<std::string>{}(canon);
}

}  // namespace portalis::meta
