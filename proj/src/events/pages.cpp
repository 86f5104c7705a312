#include "portalis/events/pages.hpp"

#include <algorithm>

#include "portalis/error.hpp"

namespace portalis::events {

std::string label(const ItemSpec& item) {
    struct Visitor {
        std::string operator()(const KeyItem& k) const { return "key " + k.key; }
        std::string operator()(const QueryItem& q) const { return "query " + frames::to_string(q.pattern); }
        std::string operator()(const SelectItem& s) const {
            std::string out = (s.count ? "count " : "select ") + s.concept_name;
            if (s.where) out += " where " + core::to_source(*s.where);
            return out;
        }
    };
    return std::visit(Visitor{}, item);
}

const PageObject* PageDefinition::object(std::string_view name) const noexcept {
    for (const auto& o : objects) {
        if (o.name == name) return &o;
    }
    return nullptr;
}

namespace {

std::string render_binding(const frames::Binding& binding) {
    std::string out;
    for (const auto& [var, value] : binding) {
        if (!out.empty()) out += " ";
        out += var + "=" + value;
    }
    return out.empty() ? "true" : out;
}

MaterializedItem materialize_item(const ItemSpec& spec, const WarehouseView& view) {
    MaterializedItem item;
    item.label = label(spec);
    if (const auto* key = std::get_if<KeyItem>(&spec)) {
        warehouse::PortalItem portal = view.warehouse.portal_item(key->key);
        item.value = std::move(portal.value);
        item.source = std::move(portal.source);
        item.as_of = portal.as_of;
        if (auto kind = warehouse::catalog_kind(key->key)) {
            for (const auto* repo : view.warehouse.of_kind(*kind)) {
                if (!profile::at_least(item.required, repo->required)) item.required = repo->required;
            }
        }
        return item;
    }
    if (const auto* query = std::get_if<QueryItem>(&spec)) {
        std::vector<std::string> rows;
        for (const auto& binding : view.frames.query(query->pattern)) rows.push_back(render_binding(binding));
        item.value = std::move(rows);
        item.source = "frames";
        return item;
    }
    const auto& select = std::get<SelectItem>(spec);
    auto domain = view.store.individuals_of(select.concept_name);
    core::ExprPtr where = select.where ? select.where : core::build::truth(true);
    core::Shape shape = core::domain_shape(view.store, domain, select.concept_name);
    core::validate_predicate(*where, shape);
    std::vector<std::string> ids;
    for (const auto& ind : domain) {
        if (!core::holds(*where, core::StateBindings(ind, ind.current()))) continue;
        // Content is visible to every rank unless a rights declaration narrows it.
        auto record = view.tower.records().find(ind.id);
        profile::Rank required = record == view.tower.records().end() ? profile::Rank::Ordinary
                                                                       : record->second.access_rights;
        item.members.push_back(Member{ind.id, required});
        ids.push_back(ind.id);
    }
    item.count = select.count;
    if (select.count) {
        item.value = core::integer(static_cast<std::int64_t>(ids.size()));
    } else {
        item.value = std::move(ids);
    }
    item.source = concept_dependency(select.concept_name);
    // Writes to this concept only, so unrelated transitions leave the stamp alone.
    for (const auto& ind : domain) item.as_of += ind.states.size();
    return item;
}

}  // namespace

MaterializedPage materialize(const PageDefinition& page, const WarehouseView& view) {
    MaterializedPage out{page.id, {}};
    for (const auto& spec : page.items) out.items.push_back(materialize_item(spec, view));
    return out;
}

std::set<std::string> dependencies(const PageDefinition& page, const warehouse::Warehouse& warehouse) {
    std::set<std::string> out;
    for (const auto& spec : page.items) {
        if (const auto* key = std::get_if<KeyItem>(&spec)) {
            if (auto kind = warehouse::catalog_kind(key->key)) {
                for (const auto* repo : warehouse.of_kind(*kind)) out.insert(repo->name);
            }
        } else if (const auto* select = std::get_if<SelectItem>(&spec)) {
            out.insert(concept_dependency(select->concept_name));
        }
    }
    return out;
}

}  // namespace portalis::events
