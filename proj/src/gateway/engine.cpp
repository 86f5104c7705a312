#include "portalis/gateway/engine.hpp"

#include "portalis/dsl/loader.hpp"
#include "portalis/error.hpp"

namespace portalis::gateway {

RenderedPage render(const events::PageDefinition& def, const events::MaterializedPage& content, profile::Rank rank,
                    const events::EventEngine::Overlay* overlay, bool stale) {
    RenderedPage out{def.id, stale, {}, {}};
    for (const auto& item : content.items) {
        if (!profile::at_least(rank, item.required)) continue;
        RenderedItem rendered{item.label, item.value, item.source, item.as_of};
        if (item.source.starts_with("concept:")) {
            std::vector<std::string> ids;
            for (const auto& m : item.members) {
                if (profile::at_least(rank, m.required)) ids.push_back(m.id);
            }
            if (item.count) {
                rendered.value = core::Value(static_cast<std::int64_t>(ids.size()));
            } else {
                rendered.value = std::move(ids);
            }
        }
        out.items.push_back(std::move(rendered));
    }
    for (const auto& object : def.objects) {
        RenderedObject rendered{object.name, object.fields};
        if (overlay) {
            if (auto it = overlay->find(object.name); it != overlay->end()) {
                for (const auto& [field, value] : it->second) rendered.fields[field] = value;
            }
        }
        out.objects.push_back(std::move(rendered));
    }
    return out;
}

Engine::Engine(World world, events::UpdatePolicy policy) : world_(std::move(world)) {
    if (policy.period == 0) throw Error(ErrorCode::InvalidDeclaration, "update period must be at least 1");
    world_.events.set_policy(policy);
    world_.tower.refresh(world_.store);
    world_.events.refresh_all(world_.view());
}

template <typename F>
void Engine::write(F&& fn) {
    std::unique_lock lock(mutex_);
    World next = world_;
    fn(next);
    world_ = std::move(next);
}

std::vector<dsl::Diagnostic> Engine::load(std::string_view text) {
    std::unique_lock lock(mutex_);
    return dsl::load_text(text, world_);
}

std::string Engine::open_session(std::string_view persona) {
    profile::UserProfile profile;
    {
        std::shared_lock lock(mutex_);
        auto it = world_.personas.find(persona);
        if (it == world_.personas.end()) {
            throw Error(ErrorCode::UnknownProfile, "no profile '" + std::string(persona) + "'");
        }
        profile = it->second;
    }
    return sessions_.open(std::string(persona), std::move(profile)).token;
}

void Engine::close_session(std::string_view token) {
    sessions_.close(token);
    std::unique_lock lock(mutex_);
    world_.events.drop_session(token);
    if (auto it = replies_.find(token); it != replies_.end()) replies_.erase(it);
}

std::vector<std::string> Engine::list_pages(std::string_view token) const {
    profile::Session session = sessions_.validate(token);
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [id, def] : world_.events.pages()) {
        if (profile::page_visible(def.policy(), session.profile)) out.push_back(id);
    }
    return out;
}

RenderedPage Engine::get_page(std::string_view token, std::string_view page) const {
    profile::Session session = sessions_.validate(token);
    std::shared_lock lock(mutex_);
    const auto* def = world_.events.find_page(page);
    // Hidden and missing pages answer identically.
    if (!def || !profile::page_visible(def->policy(), session.profile)) {
        throw Error(ErrorCode::UnknownPage, "no page '" + std::string(page) + "'");
    }
    return render(*def, world_.events.cached(page), session.profile.rank, world_.events.overlay(token, page),
                  world_.events.stale(page));
}

std::vector<events::Effect> Engine::submit_event(std::string_view token, std::string_view name, core::ValueMap args,
                                                 std::optional<std::string> idempotency_key) {
    sessions_.validate(token);
    std::unique_lock lock(mutex_);
    if (idempotency_key) {
        if (auto s = replies_.find(token); s != replies_.end()) {
            if (auto r = s->second.find(*idempotency_key); r != s->second.end()) return r->second;
        }
    }
    World next = world_;
    events::Event event{std::string(name), std::move(args), std::string(token), next.events.next_timestamp()};
    auto effects = next.events.dispatch(event, next.view());
    world_ = std::move(next);
    if (idempotency_key) replies_[std::string(token)][*idempotency_key] = effects;
    return effects;
}

meta::MetadataRecord Engine::get_metadata(std::string_view token, std::string_view object_id) const {
    profile::Session session = sessions_.validate(token);
    if (session.profile.rank != profile::Rank::Administrator) {
        throw Error(ErrorCode::Forbidden, "metadata requires administrator rank");
    }
    std::shared_lock lock(mutex_);
    if (!world_.tower.level_of(world_.store, object_id)) {
        throw Error(ErrorCode::UnknownObject, "no object '" + std::string(object_id) + "'");
    }
    return world_.tower.describe(world_.store, object_id);
}

void Engine::update(std::string_view repository, const warehouse::Change& change, bool content_critical) {
    write([&](World& w) {
        w.warehouse.mutate(repository, change, content_critical);
        warehouse::MutationDescriptor descriptor{std::string(repository), change, content_critical};
        auto outcome = w.events.run_hooks(descriptor, w.store, w.frames);
        w.tower.refresh(w.store);
        if (content_critical) {
            std::set<std::string> sources{std::string(repository)};
            for (const auto& c : outcome.touched_concepts) sources.insert(events::concept_dependency(c));
            w.events.mark_content_critical(sources, w.view());
        }
        for (const auto& page : outcome.refresh_pages) w.events.manual_refresh(page, w.view());
    });
}

std::vector<std::string> Engine::run_agent(std::uint64_t tick) {
    std::vector<std::string> refreshed;
    write([&](World& w) { refreshed = w.events.run_agent(tick, w.view()); });
    return refreshed;
}

RenderedPage Engine::manual_refresh(std::string_view page) {
    RenderedPage out;
    write([&](World& w) {
        const auto& content = w.events.manual_refresh(page, w.view());
        out = render(w.events.page(page), content, profile::Rank::Administrator, nullptr, false);
    });
    return out;
}

World Engine::snapshot() const {
    std::shared_lock lock(mutex_);
    return world_;
}

std::size_t Engine::content_hash() const {
    std::shared_lock lock(mutex_);
    return world_.content_hash();
}

std::size_t Engine::warehouse_hash() const {
    std::shared_lock lock(mutex_);
    return world_.warehouse.content_hash();
}

events::UpdatePolicy Engine::policy() const {
    std::shared_lock lock(mutex_);
    return world_.events.policy();
}

}  // namespace portalis::gateway
