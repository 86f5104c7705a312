#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "portalis/core/expr.hpp"
#include "portalis/core/model.hpp"
#include "portalis/frames/frame_net.hpp"
#include "portalis/meta/tower.hpp"
#include "portalis/profile/profile.hpp"
#include "portalis/warehouse/warehouse.hpp"

namespace portalis::events {

/// A portal catalog value (vacancies, revenues, ...).
struct KeyItem {
    std::string key;
};

/// Bindings of a frame pattern over the semantic network.
struct QueryItem {
    frames::Pattern pattern;
};

/// Individuals of a concept satisfying a predicate, listed or counted.
struct SelectItem {
    bool count = false;
    std::string concept_name;
    core::ExprPtr where;
};

using ItemSpec = std::variant<KeyItem, QueryItem, SelectItem>;

std::string label(const ItemSpec& item);

/// Client-side display object with default field values; sessions overlay it.
struct PageObject {
    std::string name;
    core::ValueMap fields;
};

struct PageDefinition {
    std::string id;
    profile::Rank required = profile::Rank::Ordinary;
    std::vector<profile::Assignment> conditions;
    std::vector<ItemSpec> items;
    std::vector<PageObject> objects;

    profile::PagePolicy policy() const { return {id, required, conditions}; }
    const PageObject* object(std::string_view name) const noexcept;
};

/// Read-only view of everything page content is computed from.
struct WarehouseView {
    const core::Store& store;
    const meta::MetaTower& tower;
    const frames::FrameLanguage& frames;
    const warehouse::Warehouse& warehouse;
};

/// One member of a select/count item with the rank needed to see it.
struct Member {
    std::string id;
    profile::Rank required = profile::Rank::Ordinary;
    friend bool operator==(const Member&, const Member&) = default;
};

struct MaterializedItem {
    std::string label;
    warehouse::Content value;
    /// Non-empty only for select/count items; `value` is then computed per viewer.
    std::vector<Member> members;
    bool count = false;
    std::string source;
    std::size_t as_of = 0;
    profile::Rank required = profile::Rank::Ordinary;
    friend bool operator==(const MaterializedItem&, const MaterializedItem&) = default;
};

struct MaterializedPage {
    std::string page;
    std::vector<MaterializedItem> items;
    friend bool operator==(const MaterializedPage&, const MaterializedPage&) = default;
};

/// Computes a page's items from scratch against `view`.
MaterializedPage materialize(const PageDefinition& page, const WarehouseView& view);

/// Repository names and "concept:NAME" keys the page's items read.
std::set<std::string> dependencies(const PageDefinition& page, const warehouse::Warehouse& warehouse);

inline std::string concept_dependency(std::string_view concept_name) { return "concept:" + std::string(concept_name); }

}  // namespace portalis::events
