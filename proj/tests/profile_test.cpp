#include <gtest/gtest.h>

#include <thread>

#include "portalis/error.hpp"
#include "portalis/profile/profile.hpp"
#include "portalis/profile/session.hpp"
#include "support.hpp"

namespace {

using namespace portalis;
using namespace portalis::profile;
namespace pt = portalis::testing;

/// Metric over (s, p) with the given table.
MetricDenotation metric_from(std::string name, const std::map<Chain, SymbolSet>& table) {
    return MetricDenotation{std::move(name), {"s", "p"}, table, std::nullopt};
}

/// Table where every entry for a chain of length >= `depth` copies its
/// depth-prefix, and shorter entries are all distinct.
std::map<Chain, SymbolSet> table_saturating_at(std::size_t depth, const DimensionSet& dims) {
    std::map<Chain, SymbolSet> table;
    MetricDenotation shape{"m", {"s", "p"}, {}, std::nullopt};
    for (const auto& c : enumerate_chains(shape, dims, 2)) {
        Chain key = c.size() > depth ? Chain(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(depth)) : c;
        table[c] = {"v" + to_string(key)};
    }
    return table;
}

TEST(Ranks, OrderAndNames) {
    EXPECT_TRUE(at_least(Rank::Administrator, Rank::Manager));
    EXPECT_FALSE(at_least(Rank::Ordinary, Rank::Manager));
    for (Rank r : {Rank::Ordinary, Rank::Manager, Rank::Administrator}) EXPECT_EQ(rank_from_string(to_string(r)), r);
    EXPECT_FALSE(rank_from_string("root").has_value());
}

TEST(Dimensions, DefaultsAndDeclarations) {
    DimensionSet dims = DimensionSet::defaults();
    ASSERT_NE(dims.find("s"), nullptr);
    EXPECT_TRUE(dims.find("s")->admits("mmedia"));
    EXPECT_EQ(pt::error_code([&] { dims.declare({"v", {}}); }), ErrorCode::InvalidDeclaration);
    EXPECT_EQ(pt::error_code([&] { dims.declare({"v", {"a", "a"}}); }), ErrorCode::InvalidDeclaration);
}

TEST(Metric, ChainsMustFollowTheOrder) {
    DimensionSet dims = DimensionSet::defaults();
    auto m = metric_from("m", table_saturating_at(1, dims));
    EXPECT_EQ(pt::error_code([&] { apply_assignment(m, dims, {{"p", "registered"}}); }), ErrorCode::OutOfOrderChain);
    EXPECT_EQ(pt::error_code([&] { apply_assignment(m, dims, {{"s", "color"}}); }), ErrorCode::UnknownDimensionValue);
    EXPECT_EQ(pt::error_code([&] {
                  apply_assignment(m, dims, {{"s", "higraph"}, {"p", "registered"}, {"s", "higraph"}});
              }),
              ErrorCode::OutOfOrderChain);
}

TEST(Metric, ApplyUsesLongestStoredPrefix) {
    DimensionSet dims = DimensionSet::defaults();
    MetricDenotation m{"m", {"s", "p"}, {{{}, {"base"}}, {{{"s", "mmedia"}}, {"media"}}}, std::nullopt};
    EXPECT_EQ(apply_assignment(m, dims, {{"s", "mmedia"}, {"p", "corporate"}}), SymbolSet{"media"});
    EXPECT_EQ(apply_assignment(m, dims, {{"s", "higraph"}}), SymbolSet{"base"});
}

TEST(Metric, SaturationNeedsTheFullTable) {
    DimensionSet dims = DimensionSet::defaults();
    MetricDenotation m{"m", {"s", "p"}, {{{}, {"base"}}}, std::nullopt};
    EXPECT_EQ(pt::error_code([&] { saturation_level(m, dims); }), ErrorCode::IncompleteTable);
}

TEST(Metric, ValidateChecksPrefixClosureAndDeclaredLevel) {
    DimensionSet dims = DimensionSet::defaults();
    auto table = table_saturating_at(1, dims);
    table.erase(Chain{{"s", "higraph"}});
    EXPECT_EQ(pt::error_code([&] { validate_metric(metric_from("m", table), dims); }), ErrorCode::IncompleteTable);

    auto declared = metric_from("m", table_saturating_at(1, dims));
    declared.declared_saturation = 2;
    EXPECT_EQ(pt::error_code([&] { validate_metric(declared, dims); }), ErrorCode::InvalidDeclaration);
    declared.declared_saturation = 1;
    EXPECT_NO_THROW(validate_metric(declared, dims));
}

TEST(MetricProperty, SaturationMatchesConstruction) {
    DimensionSet dims = DimensionSet::defaults();
    for (std::size_t depth = 0; depth <= 2; ++depth) {
        EXPECT_EQ(saturation_level(metric_from("m", table_saturating_at(depth, dims)), dims), depth);
    }
}

TEST(MetricProperty, RandomTablesAgreeWithBruteForce) {
    DimensionSet dims = DimensionSet::defaults();
    const auto& S = dims.find("s")->alphabet;
    const auto& P = dims.find("p")->alphabet;
    pt::Rng rng(0x5a7);
    for (int round = 0; round < 300; ++round) {
        // Two symbols so that accidental equalities are common.
        auto sym = [&] { return SymbolSet{pt::coin(rng) ? "a" : "b"}; };
        std::map<Chain, SymbolSet> table{{{}, sym()}};
        for (const auto& s : S) {
            table[{{"s", s}}] = sym();
            for (const auto& p : P) table[{{"s", s}, {"p", p}}] = sym();
        }
        // Least k with: every chain longer than k agrees with its k-prefix.
        std::vector<Chain> longer;
        for (const auto& s : S) {
            longer.push_back({{"s", s}});
            for (const auto& p : P) longer.push_back({{"s", s}, {"p", p}});
        }
        std::size_t expected = 0;
        for (;; ++expected) {
            bool ok = true;
            for (const auto& c : longer) {
                if (c.size() <= expected) continue;
                ok = ok && table[c] == table[Chain(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(expected))];
            }
            if (ok) break;
        }
        auto m = metric_from("m", table);
        ASSERT_EQ(saturation_level(m, dims), expected);
        // Beyond saturation, a chain evaluates like its prefix.
        for (const auto& c : enumerate_chains(m, dims, 2)) {
            if (c.size() <= expected) continue;
            Chain pre(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(expected));
            ASSERT_EQ(apply_assignment(m, dims, c), apply_assignment(m, dims, pre));
        }
    }
}

TEST(Visibility, RankAndConditions) {
    PagePolicy gallery{"gallery", Rank::Ordinary, {{"s", "mmedia"}}};
    UserProfile viewer{"u", Rank::Administrator, {{"s", "higraph"}}};
    EXPECT_FALSE(page_visible(gallery, viewer));
    viewer.dimensions["s"] = "mmedia";
    EXPECT_TRUE(page_visible(gallery, viewer));
    PagePolicy console{"console", Rank::Administrator, {}};
    EXPECT_FALSE(page_visible(console, UserProfile{"u", Rank::Manager, {}}));
}

TEST(Visibility, AccessProfileRequiresOpenSession) {
    std::vector<PagePolicy> pages{{"home", Rank::Ordinary, {}}, {"finance", Rank::Manager, {}}};
    std::vector<ObjectPolicy> objects{{"salary", Rank::Manager}};
    UserProfile manager{"m", Rank::Manager, {}};
    Session session{"t", "manager", manager, 1, SessionState::Open};
    auto access = derive_access_profile(manager, session, pages, objects);
    EXPECT_EQ(access.pages, (std::set<std::string>{"finance", "home"}));
    EXPECT_EQ(access.objects, (std::set<std::string>{"salary"}));
    EXPECT_FALSE(access.metadata_access);
    session.state = SessionState::Closed;
    EXPECT_EQ(pt::error_code([&] { derive_access_profile(manager, session, pages, objects); }), ErrorCode::SessionClosed);
}

TEST(Visibility, RankThresholdPoliciesAreMonotone) {
    DimensionSet dims = DimensionSet::defaults();
    dims.declare({"v", {"desktop_browser", "text_browser"}});
    std::vector<PagePolicy> pages{{"a", Rank::Manager, {{"s", "mmedia"}}},
                                  {"b", Rank::Ordinary, {}},
                                  {"c", Rank::Administrator, {{"v", "text_browser"}, {"s", "higraph"}}}};
    EXPECT_FALSE(check_hierarchy_monotonicity(dims, pages).has_value());
}

TEST(Sessions, Lifecycle) {
    SessionRegistry registry;
    Session s = registry.open("ordinary", UserProfile{"u", Rank::Ordinary, {}});
    EXPECT_EQ(s.token.size(), 32u);
    EXPECT_EQ(registry.validate(s.token).persona, "ordinary");
    EXPECT_EQ(registry.open_count(), 1u);
    registry.close(s.token);
    EXPECT_EQ(pt::error_code([&] { registry.validate(s.token); }), ErrorCode::SessionClosed);
    EXPECT_EQ(pt::error_code([&] { registry.close(s.token); }), ErrorCode::AlreadyClosed);
    EXPECT_EQ(pt::error_code([&] { registry.validate("feedface"); }), ErrorCode::UnknownToken);
    EXPECT_EQ(registry.open_count(), 0u);
}

TEST(Sessions, ConcurrentOpensYieldDistinctTokens) {
    SessionRegistry registry;
    std::vector<std::vector<std::string>> tokens(4);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < tokens.size(); ++w) {
        workers.emplace_back([&, w] {
            for (int i = 0; i < 250; ++i) tokens[w].push_back(registry.open("p", {}).token);
        });
    }
    for (auto& t : workers) t.join();
    std::set<std::string> all;
    for (const auto& ts : tokens) all.insert(ts.begin(), ts.end());
    EXPECT_EQ(all.size(), 1000u);
    EXPECT_EQ(registry.open_count(), 1000u);
}

}  // namespace
