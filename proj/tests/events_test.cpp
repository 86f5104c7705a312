#include <gtest/gtest.h>

#include "portalis/error.hpp"
#include "portalis/events/event_engine.hpp"
#include "portalis/events/pages.hpp"
#include "support.hpp"

namespace {

using namespace portalis;
using namespace portalis::events;
using core::integer;
using core::text;
namespace pt = portalis::testing;

const MaterializedItem& item(const MaterializedPage& page, const std::string& label) {
    for (const auto& i : page.items) {
        if (i.label == label) return i;
    }
    throw std::runtime_error("no item " + label);
}

warehouse::Change hire(std::string id, bool vacancy) {
    return {warehouse::Change::Op::Upsert, std::move(id),
            {{"company", text("Acme Holding")}, {"country", text("Cyprus")}, {"position", text("Temp")},
             {"vacancy", core::boolean(vacancy)}}};
}

/// Mutation plus hook run, as a gateway update does it.
void update(World& w, const warehouse::Change& change, bool critical) {
    w.warehouse.mutate("hr_main", change, critical);
    auto outcome = w.events.run_hooks({"hr_main", change, critical}, w.store, w.frames);
    w.tower.refresh(w.store);
    if (critical) {
        std::set<std::string> sources{"hr_main"};
        for (const auto& c : outcome.touched_concepts) sources.insert(concept_dependency(c));
        w.events.mark_content_critical(sources, w.view());
    }
}

TEST(Pages, MaterializeDemoHome) {
    World w = pt::demo_world();
    const auto& home = w.events.cached("home");
    EXPECT_EQ(item(home, "key totalEstablishment").value, warehouse::Content(integer(5)));
    EXPECT_EQ(item(home, "key companyCount").value, warehouse::Content(integer(2)));
    EXPECT_EQ(item(home, "key totalEstablishment").source, "hr_main");
    EXPECT_EQ(materialize(w.events.page("home"), w.view()), home);
}

TEST(Pages, SelectAndCountCarryMembers) {
    World w = pt::demo_world();
    const auto& page = w.events.cached("vacancies");
    ASSERT_EQ(page.items.size(), 3u);
    std::vector<std::string> ids;
    for (const auto& m : page.items[1].members) ids.push_back(m.id);
    EXPECT_EQ(ids, (std::vector<std::string>{"v_analyst", "v_engineer"}));
    EXPECT_TRUE(page.items[2].count);
    EXPECT_EQ(page.items[2].members.size(), 2u);
}

TEST(Pages, MembersInheritExplicitRights) {
    World w = pt::demo_world();
    const auto& console = w.events.cached("console");
    bool found = false;
    for (const auto& i : console.items) {
        for (const auto& m : i.members) {
            if (m.id == "hr_stats") {
                EXPECT_EQ(m.required, profile::Rank::Manager);
                found = true;
            }
        }
    }
    EXPECT_TRUE(found);
}

TEST(Pages, DependenciesNameRepositoriesAndConcepts) {
    World w = pt::demo_world();
    EXPECT_EQ(dependencies(w.events.page("home"), w.warehouse), (std::set<std::string>{"docs_main", "hr_main"}));
    EXPECT_TRUE(dependencies(w.events.page("vacancies"), w.warehouse).contains("concept:Vacancy"));
}

TEST(Dispatch, OverlayIsPerSession) {
    World w = pt::demo_world();
    std::size_t store = w.store.content_hash(), wh = w.warehouse.content_hash();
    auto effects = w.events.dispatch({"preference_changed", {{"theme", text("dark")}}, "tokA", 1}, w.view());
    ASSERT_EQ(effects.size(), 1u);
    EXPECT_EQ(effects[0].kind, Effect::Kind::Overlay);
    EXPECT_EQ(effects[0].value, text("dark"));
    ASSERT_NE(w.events.overlay("tokA", "home"), nullptr);
    EXPECT_EQ(w.events.overlay("tokA", "home")->at("banner").at("theme"), text("dark"));
    EXPECT_EQ(w.events.overlay("tokB", "home"), nullptr);
    EXPECT_EQ(w.store.content_hash(), store);
    EXPECT_EQ(w.warehouse.content_hash(), wh);
    w.events.drop_session("tokA");
    EXPECT_EQ(w.events.overlay("tokA", "home"), nullptr);
}

TEST(Dispatch, MissingArgumentFails) {
    World w = pt::demo_world();
    EXPECT_EQ(pt::error_code([&] { w.events.dispatch({"preference_changed", {}, "t", 1}, w.view()); }),
              ErrorCode::UnknownField);
}

TEST(Dispatch, UnknownEventWarnsOnce) {
    World w = pt::demo_world();
    auto effects = w.events.dispatch({"launch_rockets", {}, "t", 1}, w.view());
    ASSERT_EQ(effects.size(), 1u);
    EXPECT_EQ(effects[0].kind, Effect::Kind::Warning);
    EXPECT_EQ(effects[0].message, "unknown event 'launch_rockets'");
}

TEST(Dispatch, ScenarioGuardsScripts) {
    World w = pt::demo_world();
    auto ok = w.events.dispatch({"report_requested", {}, "t", 1}, w.view());
    ASSERT_EQ(ok.size(), 1u);
    EXPECT_EQ(ok[0].kind, Effect::Kind::Refresh);

    // A world where acme no longer employs alice.
    World other = pt::demo_world();
    frames::FrameLanguage net;
    for (const auto& c : other.frames.constants()) net.declare_constant(c);
    for (const auto& r : other.frames.relations()) net.declare_relation(r);
    other.frames = net;
    auto guarded = other.events.dispatch({"report_requested", {}, "t", 1}, other.view());
    ASSERT_EQ(guarded.size(), 1u);
    EXPECT_EQ(guarded[0].kind, Effect::Kind::Warning);
}

TEST(Hooks, TransitionsRunWithChangeArguments) {
    World w = pt::demo_world();
    update(w, hire("e9", true), false);
    const auto& stats = w.store.individual("hr_stats").current();
    EXPECT_EQ(stats.values.at("updates"), integer(1));
    EXPECT_EQ(stats.values.at("lastId"), text("e9"));
    EXPECT_EQ(stats.cause, "update:hr_main");
}

TEST(Agent, EventDrivenRefreshesAtOnce) {
    World w = pt::demo_world();
    update(w, hire("e9", true), true);
    EXPECT_TRUE(w.events.pending().empty());
    EXPECT_EQ(item(w.events.cached("home"), "key totalEstablishment").value, warehouse::Content(integer(6)));
    EXPECT_EQ(item(w.events.cached("vacancies"), "key vacancies").value, warehouse::Content(integer(3)));
}

TEST(Agent, PeriodicWaitsForItsTick) {
    World w = pt::demo_world();
    w.events.set_policy({PolicyMode::Periodic, 3});
    update(w, hire("e9", false), true);
    EXPECT_TRUE(w.events.stale("home"));
    EXPECT_EQ(item(w.events.cached("home"), "key totalEstablishment").value, warehouse::Content(integer(5)));
    EXPECT_TRUE(w.events.run_agent(1, w.view()).empty());
    EXPECT_TRUE(w.events.run_agent(2, w.view()).empty());
    auto refreshed = w.events.run_agent(3, w.view());
    EXPECT_FALSE(refreshed.empty());
    EXPECT_FALSE(w.events.stale("home"));
    EXPECT_EQ(item(w.events.cached("home"), "key totalEstablishment").value, warehouse::Content(integer(6)));
}

TEST(Agent, ManualOnlyOnRequest) {
    World w = pt::demo_world();
    w.events.set_policy({PolicyMode::Manual, 1});
    update(w, hire("e9", false), true);
    for (std::uint64_t t = 1; t <= 5; ++t) EXPECT_TRUE(w.events.run_agent(t, w.view()).empty());
    EXPECT_TRUE(w.events.stale("home"));
    w.events.manual_refresh("home", w.view());
    EXPECT_FALSE(w.events.stale("home"));
}

TEST(Agent, NonCriticalChangesMarkNothing) {
    World w = pt::demo_world();
    w.events.set_policy({PolicyMode::Manual, 1});
    update(w, hire("e9", false), false);
    EXPECT_TRUE(w.events.pending().empty());
}

TEST(Agent, UnknownSourcesAreRejected) {
    World w = pt::demo_world();
    EXPECT_EQ(pt::error_code([&] { w.events.mark_content_critical({"nowhere"}, w.view()); }), ErrorCode::UnknownSource);
    EXPECT_EQ(pt::error_code([&] { w.events.manual_refresh("nowhere", w.view()); }), ErrorCode::UnknownPage);
}

TEST(Policy, NamesRoundTrip) {
    for (PolicyMode m : {PolicyMode::EventDriven, PolicyMode::Periodic, PolicyMode::Manual}) {
        EXPECT_EQ(policy_mode_from_string(to_string(m)), m);
    }
    EXPECT_FALSE(policy_mode_from_string("sometimes").has_value());
}

TEST(EventsProperty, EventDrivenCacheEqualsScratch) {
    pt::Rng rng(0xe7e7);
    World w = pt::demo_world();
    for (int step = 0; step < 120; ++step) {
        std::string id = "x" + std::to_string(pt::uniform(rng, 0, 9));
        bool exists = w.warehouse.repository("hr_main").items.contains(id);
        if (exists && pt::coin(rng, 0.3)) {
            update(w, {warehouse::Change::Op::Remove, id, {}}, true);
        } else {
            update(w, hire(id, pt::coin(rng)), true);
        }
        for (const auto& [pid, def] : w.events.pages()) {
            ASSERT_EQ(w.events.cached(pid), materialize(def, w.view())) << pid << " at step " << step;
        }
    }
}

}  // namespace
