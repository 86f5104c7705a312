#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "portalis/core/expr.hpp"
#include "portalis/core/model.hpp"
#include "portalis/events/pages.hpp"
#include "portalis/frames/frame_net.hpp"
#include "portalis/warehouse/warehouse.hpp"

namespace portalis::events {

enum class PolicyMode { EventDriven, Periodic, Manual };

std::string_view to_string(PolicyMode mode) noexcept;
std::optional<PolicyMode> policy_mode_from_string(std::string_view name) noexcept;

struct UpdatePolicy {
    PolicyMode mode = PolicyMode::EventDriven;
    /// Logical ticks between agent refreshes; periodic mode only.
    std::uint64_t period = 1;
};

/// set PAGE.OBJECT.FIELD = expr: changes the session's view only.
struct SetAction {
    std::string page;
    std::string object;
    std::string field;
    core::ExprPtr value;
};

struct RefreshAction {
    std::string page;
};

/// transition INDIVIDUAL { field = expr, ... }: warehouse-update hooks only.
struct TransitionAction {
    std::string individual;
    std::vector<std::pair<std::string, core::ExprPtr>> assignments;
};

using Action = std::variant<SetAction, RefreshAction, TransitionAction>;

/// A script runs on a client event, or (when `hook`) after every mutation
/// of the repository named by `trigger`. A non-empty scenario guards
/// execution: every frame must hold in the semantic network.
struct Script {
    std::string name;
    std::string trigger;
    bool hook = false;
    std::vector<frames::AtomicFrame> scenario;
    std::vector<Action> actions;
};

struct Event {
    std::string name;
    core::ValueMap args;
    std::string token;
    std::uint64_t timestamp = 0;
};

struct Effect {
    enum class Kind { Overlay, Refresh, Transition, Warning };
    Kind kind = Kind::Warning;
    std::string script;
    /// Page for overlays and refreshes, individual for transitions.
    std::string target;
    std::string object;
    std::string field;
    std::optional<core::Value> value;
    std::string message;
    friend bool operator==(const Effect&, const Effect&) = default;
};

std::string_view to_string(Effect::Kind kind) noexcept;

/// Script dispatch, per-session page-object overlays, and the update agent
/// that keeps materialized pages in step with the warehouse under the
/// configured policy. A plain value; the owning engine serializes writes.
class EventEngine {
public:
    using Overlay = std::map<std::string, core::ValueMap, std::less<>>;

    void set_policy(UpdatePolicy policy) { policy_ = policy; }
    const UpdatePolicy& policy() const noexcept { return policy_; }

    void add_page(PageDefinition page);
    void add_script(Script script);
    void declare_event(std::string name);

    const PageDefinition& page(std::string_view id) const;
    const PageDefinition* find_page(std::string_view id) const noexcept;
    const std::map<std::string, PageDefinition, std::less<>>& pages() const noexcept { return pages_; }
    const std::vector<Script>& scripts() const noexcept { return scripts_; }
    const std::set<std::string, std::less<>>& declared_events() const noexcept { return events_; }

    std::uint64_t next_timestamp() noexcept { return ++clock_; }

    /// Runs every client script bound to the event, in declaration order.
    /// Never touches the warehouse.
    std::vector<Effect> dispatch(const Event& event, const WarehouseView& view);

    struct HookOutcome {
        std::vector<Effect> effects;
        std::set<std::string> touched_concepts;
        std::vector<std::string> refresh_pages;
    };

    /// Runs the warehouse-update hooks for a mutation of `mutation.repository`,
    /// applying their transitions to `store`. Change fields (and `id`) are
    /// available to the hooks as event arguments.
    HookOutcome run_hooks(const warehouse::MutationDescriptor& mutation, core::Store& store,
                          const frames::FrameLanguage& frames);

    /// Marks every page reading one of `sources` as pending. Under the
    /// event-driven policy the marked pages are refreshed immediately.
    void mark_content_critical(const std::set<std::string>& sources, const WarehouseView& view);

    /// Advances the logical clock; refreshes pending pages when the policy says so.
    std::vector<std::string> run_agent(std::uint64_t tick, const WarehouseView& view);

    const MaterializedPage& manual_refresh(std::string_view page, const WarehouseView& view);
    void refresh_all(const WarehouseView& view);

    const MaterializedPage& cached(std::string_view page) const;
    bool stale(std::string_view page) const { return pending_.contains(page); }
    const std::set<std::string, std::less<>>& pending() const noexcept { return pending_; }
    std::uint64_t tick() const noexcept { return tick_; }

    const Overlay* overlay(std::string_view token, std::string_view page) const;
    void drop_session(std::string_view token);

private:
    bool scenario_holds(const Script& script, const frames::FrameLanguage& frames) const;

    UpdatePolicy policy_;
    std::map<std::string, PageDefinition, std::less<>> pages_;
    std::vector<Script> scripts_;
    std::set<std::string, std::less<>> events_;
    std::map<std::string, MaterializedPage, std::less<>> cache_;
    std::set<std::string, std::less<>> pending_;
    std::map<std::string, std::map<std::string, Overlay, std::less<>>, std::less<>> overlays_;
    std::uint64_t clock_ = 0;
    std::uint64_t tick_ = 0;
};

}  // namespace portalis::events
