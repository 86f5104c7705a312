#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "portalis/core/expr.hpp"
#include "portalis/core/value.hpp"

namespace portalis::core {

struct FieldDecl {
    std::string name;
    FieldType type;
    friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

/// Schema shared by a family of individuals: an ordered list of typed fields.
struct Concept {
    std::string name;
    std::vector<FieldDecl> fields;

    const FieldDecl* find(std::string_view field) const noexcept;
    friend bool operator==(const Concept&, const Concept&) = default;
};

/// One snapshot of an individual's attribute values. `version` is the
/// position of the record in its individual's history.
struct StateRecord {
    std::size_t version = 0;
    ValueMap values;
    std::string cause;
    friend bool operator==(const StateRecord&, const StateRecord&) = default;
};

struct Individual {
    std::string id;
    std::string concept_name;
    std::vector<StateRecord> states;

    const StateRecord& current() const { return states.back(); }
    friend bool operator==(const Individual&, const Individual&) = default;
};

/// A concept, an individual and one of its states, as handed to consumers.
struct DataObject {
    std::string concept_name;
    std::string id;
    StateRecord state;
    friend bool operator==(const DataObject&, const DataObject&) = default;
};

/// Valuation index: a concrete state version, or nullopt for "current".
using Version = std::optional<std::size_t>;

using IdSet = std::set<std::string, std::less<>>;

/// Names every level-0 object exposes in addition to its concept's fields.
inline constexpr std::string_view kBuiltinId = "id";
inline constexpr std::string_view kBuiltinConcept = "concept";
inline constexpr std::string_view kBuiltinVersion = "version";
bool is_builtin_field(std::string_view name) noexcept;

/// Throws InvalidDeclaration unless `concept` has at least one field, unique
/// non-builtin field names and reference targets in `known_concepts`.
void validate_concept(const Concept& def, const std::set<std::string, std::less<>>& known_concepts);

/// Checks that `values` assigns exactly the declared fields with matching kinds.
/// With `total == false` a subset is accepted (an overlay).
void validate_values(const Concept& def, const ValueMap& values, bool total);

/// The state an individual had at `version`; UnknownVersion if it never existed.
const StateRecord& state_at(const Individual& individual, Version version);

/// Bindings exposing one individual's state plus the builtin fields.
class StateBindings final : public Bindings {
public:
    StateBindings(const Individual& individual, const StateRecord& state) : individual_(individual), state_(state) {}
    std::optional<Value> field(std::string_view name) const override;

private:
    const Individual& individual_;
    const StateRecord& state_;
};

/// In-memory store of concepts and individuals. A plain value: copying it
/// snapshots the whole store.
class Store {
public:
    void add_concept(Concept def);
    /// Adds a group of concepts that may reference each other.
    void add_concepts(std::vector<Concept> defs);

    /// Creates an individual with its initial state. Reference targets are
    /// not checked here; call validate_references() once all individuals exist.
    const Individual& create(std::string id, std::string_view concept_name, ValueMap values);

    /// Appends a state overlaying `changes` on the current one.
    const Individual& transition(std::string_view id, const ValueMap& changes, std::string cause);

    /// Every reference-kind value must name an individual of the target concept.
    void validate_references() const;

    const Concept* find_concept(std::string_view name) const noexcept;
    const Concept& concept_of(std::string_view name) const;
    const Individual* find(std::string_view id) const noexcept;
    const Individual& individual(std::string_view id) const;

    const std::map<std::string, Concept, std::less<>>& concepts() const noexcept { return concepts_; }
    const std::map<std::string, Individual, std::less<>>& individuals() const noexcept { return individuals_; }
    std::vector<Individual> individuals_of(std::string_view concept_name) const;
    std::vector<Individual> all_individuals() const;

    /// Hash of the canonical serialization of every concept and state.
    std::size_t content_hash() const;
    /// Number of committed writes.
    std::size_t revision() const noexcept { return revision_; }

private:
    void check_reference(const FieldDecl& field, const Value& value) const;

    std::map<std::string, Concept, std::less<>> concepts_;
    std::map<std::string, Individual, std::less<>> individuals_;
    std::size_t revision_ = 0;
};

/// Fields of `concept` plus the builtins.
Shape concept_shape(const Concept& def);

/// Bindings over a detached DataObject.
class DataObjectBindings final : public Bindings {
public:
    explicit DataObjectBindings(const DataObject& object) : object_(object) {}
    std::optional<Value> field(std::string_view name) const override;

private:
    const DataObject& object_;
};

/// Shape a predicate over `domain` is typed against: the builtins plus every
/// field shared, with an identical type, by all concepts occurring in the
/// domain (all fields of `fallback_concept` when the domain is empty).
Shape domain_shape(const Store& schema, std::span<const Individual> domain,
                   std::optional<std::string_view> fallback_concept = std::nullopt);

/// {d in domain | phi(d) at version}.
IdSet comprehend(const Store& schema, std::span<const Individual> domain, const Expr& phi, Version version = {});

/// The unique d with phi(d); NotIndividualized / AmbiguousDescription otherwise.
const Individual& individualize(const Store& schema, std::span<const Individual> domain, const Expr& phi,
                                Version version = {});

/// Pure state transition: a copy of `individual` with one more state.
Individual transition(const Concept& def, const Individual& individual, const ValueMap& changes,
                      std::string cause);

/// h : I -> T, validated total and well-typed.
struct SortVariable {
    std::set<std::string> index_set;
    std::string concept_name;
    std::map<std::string, std::string> assignment;
    friend bool operator==(const SortVariable&, const SortVariable&) = default;
};

SortVariable bind_sort(const Store& store, std::set<std::string> index_set, std::string concept_name,
                       std::map<std::string, std::string> mapping);

}  // namespace portalis::core
