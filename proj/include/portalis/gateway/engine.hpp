#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "portalis/dsl/parser.hpp"
#include "portalis/events/event_engine.hpp"
#include "portalis/profile/session.hpp"
#include "portalis/world.hpp"

namespace portalis::gateway {

struct RenderedItem {
    std::string label;
    warehouse::Content value;
    std::string source;
    std::size_t as_of = 0;
    friend bool operator==(const RenderedItem&, const RenderedItem&) = default;
};

struct RenderedObject {
    std::string name;
    core::ValueMap fields;
    friend bool operator==(const RenderedObject&, const RenderedObject&) = default;
};

struct RenderedPage {
    std::string page;
    bool stale = false;
    std::vector<RenderedItem> items;
    std::vector<RenderedObject> objects;
    friend bool operator==(const RenderedPage&, const RenderedPage&) = default;
};

/// Filters a materialized page down to what `rank` may see and applies a
/// session overlay to the page objects.
RenderedPage render(const events::PageDefinition& def, const events::MaterializedPage& content, profile::Rank rank,
                    const events::EventEngine::Overlay* overlay, bool stale);

/// The service surface. Reads run concurrently on the current world; every
/// write is applied to a private copy and swapped in whole, so a failed write
/// leaves no trace.
class Engine {
public:
    explicit Engine(World world = World(), events::UpdatePolicy policy = {});

    /// Parses and loads more schema text on top of the current world.
    std::vector<dsl::Diagnostic> load(std::string_view text);

    std::string open_session(std::string_view persona);
    void close_session(std::string_view token);

    std::vector<std::string> list_pages(std::string_view token) const;
    RenderedPage get_page(std::string_view token, std::string_view page) const;

    /// One dispatch per call; a repeated idempotency key for the same
    /// session returns the first call's effects without dispatching again.
    std::vector<events::Effect> submit_event(std::string_view token, std::string_view name, core::ValueMap args,
                                             std::optional<std::string> idempotency_key = std::nullopt);

    meta::MetadataRecord get_metadata(std::string_view token, std::string_view object_id) const;

    /// Applies a warehouse change, runs the repository's update hooks and,
    /// for content-critical changes, marks (and under the event-driven
    /// policy refreshes) the affected pages.
    void update(std::string_view repository, const warehouse::Change& change, bool content_critical);

    std::vector<std::string> run_agent(std::uint64_t tick);
    RenderedPage manual_refresh(std::string_view page);

    /// Copy of the current world, for inspection.
    World snapshot() const;
    std::size_t content_hash() const;
    std::size_t warehouse_hash() const;
    events::UpdatePolicy policy() const;

private:
    template <typename F>
    void write(F&& fn);

    mutable std::shared_mutex mutex_;
    World world_;
    profile::SessionRegistry sessions_;
    std::map<std::string, std::map<std::string, std::vector<events::Effect>>, std::less<>> replies_;
};

}  // namespace portalis::gateway
