#include "portalis/events/event_engine.hpp"

#include <algorithm>

#include "portalis/error.hpp"

namespace portalis::events {

std::string_view to_string(PolicyMode mode) noexcept {
    switch (mode) {
        case PolicyMode::EventDriven: return "event";
        case PolicyMode::Periodic: return "periodic";
        case PolicyMode::Manual: return "manual";
    }
    return "event";
}

std::optional<PolicyMode> policy_mode_from_string(std::string_view name) noexcept {
    if (name == "event" || name == "event-driven") return PolicyMode::EventDriven;
    if (name == "periodic") return PolicyMode::Periodic;
    if (name == "manual") return PolicyMode::Manual;
    return std::nullopt;
}

std::string_view to_string(Effect::Kind kind) noexcept {
    switch (kind) {
        case Effect::Kind::Overlay: return "overlay";
        case Effect::Kind::Refresh: return "refresh";
        case Effect::Kind::Transition: return "transition";
        case Effect::Kind::Warning: return "warning";
    }
    return "warning";
}

namespace {

/// Arguments only; field references are rejected when scripts load.
class ArgBindings final : public core::Bindings {
public:
    explicit ArgBindings(const core::ValueMap& args) : args_(args) {}
    std::optional<core::Value> field(std::string_view) const override { return std::nullopt; }
    std::optional<core::Value> arg(std::string_view name) const override {
        auto it = args_.find(name);
        if (it == args_.end()) return std::nullopt;
        return it->second;
    }

private:
    const core::ValueMap& args_;
};

/// Fields come from the transitioning individual's current state.
class HookBindings final : public core::Bindings {
public:
    HookBindings(const core::Individual& individual, const core::ValueMap& args)
        : state_(individual, individual.current()), args_(args) {}
    std::optional<core::Value> field(std::string_view name) const override { return state_.field(name); }
    std::optional<core::Value> arg(std::string_view name) const override { return args_.arg(name); }

private:
    core::StateBindings state_;
    ArgBindings args_;
};

}  // namespace

void EventEngine::add_page(PageDefinition page) {
    std::string id = page.id;
    if (!pages_.emplace(id, std::move(page)).second) {
        throw Error(ErrorCode::InvalidDeclaration, "page '" + id + "' declared twice");
    }
}

void EventEngine::add_script(Script script) { scripts_.push_back(std::move(script)); }

void EventEngine::declare_event(std::string name) { events_.insert(std::move(name)); }

const PageDefinition& EventEngine::page(std::string_view id) const {
    if (const auto* p = find_page(id)) return *p;
    throw Error(ErrorCode::UnknownPage, "no page '" + std::string(id) + "'");
}

const PageDefinition* EventEngine::find_page(std::string_view id) const noexcept {
    auto it = pages_.find(id);
    return it == pages_.end() ? nullptr : &it->second;
}

bool EventEngine::scenario_holds(const Script& script, const frames::FrameLanguage& frames) const {
    for (const auto& frame : script.scenario) {
        if (!frames.evaluate(frame)) return false;
    }
    return true;
}

std::vector<Effect> EventEngine::dispatch(const Event& event, const WarehouseView& view) {
    std::vector<Effect> effects;
    bool bound = false;
    for (const auto& script : scripts_) {
        if (script.hook || script.trigger != event.name) continue;
        bound = true;
        if (!scenario_holds(script, view.frames)) {
            effects.push_back({Effect::Kind::Warning, script.name, {}, {}, {}, std::nullopt, "scenario does not hold"});
            continue;
        }
        ArgBindings args(event.args);
        for (const auto& action : script.actions) {
            if (const auto* set = std::get_if<SetAction>(&action)) {
                core::Value value = core::evaluate(*set->value, args);
                overlays_[event.token][set->page][set->object][set->field] = value;
                effects.push_back({Effect::Kind::Overlay, script.name, set->page, set->object, set->field, value, {}});
            } else if (const auto* refresh = std::get_if<RefreshAction>(&action)) {
                manual_refresh(refresh->page, view);
                effects.push_back({Effect::Kind::Refresh, script.name, refresh->page, {}, {}, std::nullopt, {}});
            } else {
                throw Error(ErrorCode::InvalidDeclaration,
                            "client script '" + script.name + "' cannot transition warehouse state");
            }
        }
    }
    if (!bound && !events_.contains(event.name)) {
        effects.push_back({Effect::Kind::Warning, {}, {}, {}, {}, std::nullopt, "unknown event '" + event.name + "'"});
    }
    return effects;
}

EventEngine::HookOutcome EventEngine::run_hooks(const warehouse::MutationDescriptor& mutation, core::Store& store,
                                                const frames::FrameLanguage& frames) {
    HookOutcome out;
    core::ValueMap args = mutation.change.fields;
    args["id"] = core::text(mutation.change.id);
    std::string cause = "update:" + mutation.repository;
    for (const auto& script : scripts_) {
        if (!script.hook || script.trigger != mutation.repository) continue;
        if (!scenario_holds(script, frames)) {
            out.effects.push_back({Effect::Kind::Warning, script.name, {}, {}, {}, std::nullopt, "scenario does not hold"});
            continue;
        }
        for (const auto& action : script.actions) {
            if (const auto* tr = std::get_if<TransitionAction>(&action)) {
                const core::Individual& ind = store.individual(tr->individual);
                const core::Concept& def = store.concept_of(ind.concept_name);
                HookBindings bindings(ind, args);
                core::ValueMap changes;
                for (const auto& [field, expr] : tr->assignments) {
                    core::Value value = core::evaluate(*expr, bindings);
                    if (const auto* decl = def.find(field)) {
                        if (auto converted = warehouse::coerce(value, decl->type.kind)) value = std::move(*converted);
                    }
                    changes[field] = std::move(value);
                }
                store.transition(tr->individual, changes, cause);
                out.touched_concepts.insert(ind.concept_name);
                for (const auto& [field, value] : changes) {
                    out.effects.push_back({Effect::Kind::Transition, script.name, tr->individual, {}, field, value, {}});
                }
            } else if (const auto* refresh = std::get_if<RefreshAction>(&action)) {
                out.refresh_pages.push_back(refresh->page);
                out.effects.push_back({Effect::Kind::Refresh, script.name, refresh->page, {}, {}, std::nullopt, {}});
            } else {
                throw Error(ErrorCode::InvalidDeclaration,
                            "hook '" + script.name + "' cannot change a session's page objects");
            }
        }
    }
    return out;
}

void EventEngine::mark_content_critical(const std::set<std::string>& sources, const WarehouseView& view) {
    for (const auto& source : sources) {
        if (source.starts_with("concept:")) continue;
        if (!view.warehouse.repositories().contains(source)) {
            throw Error(ErrorCode::UnknownSource, "no repository '" + source + "'");
        }
    }
    for (const auto& [id, page] : pages_) {
        for (const auto& dep : dependencies(page, view.warehouse)) {
            if (sources.contains(dep)) {
                pending_.insert(id);
                break;
            }
        }
    }
    if (policy_.mode == PolicyMode::EventDriven) {
        auto marked = pending_;
        for (const auto& id : marked) manual_refresh(id, view);
    }
}

std::vector<std::string> EventEngine::run_agent(std::uint64_t tick, const WarehouseView& view) {
    tick_ = tick;
    std::vector<std::string> refreshed;
    bool due = policy_.mode == PolicyMode::EventDriven ||
               (policy_.mode == PolicyMode::Periodic && tick % std::max<std::uint64_t>(policy_.period, 1) == 0);
    if (!due) return refreshed;
    auto marked = pending_;
    for (const auto& id : marked) {
        manual_refresh(id, view);
        refreshed.push_back(id);
    }
    return refreshed;
}

const MaterializedPage& EventEngine::manual_refresh(std::string_view id, const WarehouseView& view) {
    const PageDefinition& def = page(id);
    auto& slot = cache_[def.id];
    slot = materialize(def, view);
    pending_.erase(def.id);
    return slot;
}

void EventEngine::refresh_all(const WarehouseView& view) {
    for (const auto& [id, def] : pages_) {
        cache_[id] = materialize(def, view);
    }
    pending_.clear();
}

const MaterializedPage& EventEngine::cached(std::string_view id) const {
    auto it = cache_.find(id);
    if (it == cache_.end()) {
        page(id);
        throw Error(ErrorCode::UnknownPage, "page '" + std::string(id) + "' was never materialized");
    }
    return it->second;
}

const EventEngine::Overlay* EventEngine::overlay(std::string_view token, std::string_view page_id) const {
    auto session = overlays_.find(token);
    if (session == overlays_.end()) return nullptr;
    auto it = session->second.find(page_id);
    return it == session->second.end() ? nullptr : &it->second;
}

void EventEngine::drop_session(std::string_view token) {
    if (auto it = overlays_.find(token); it != overlays_.end()) overlays_.erase(it);
}

}  // namespace portalis::events
