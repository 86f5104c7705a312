#include <gtest/gtest.h>

#include "portalis/error.hpp"
#include "portalis/warehouse/warehouse.hpp"
#include "support.hpp"

namespace {

using namespace portalis;
using namespace portalis::warehouse;
using core::integer;
using core::real;
using core::text;
namespace b = portalis::core::build;
namespace pt = portalis::testing;

Warehouse sample() {
    Warehouse w;
    w.add_repository("hr_main", RepoKind::Hr);
    w.add_repository("hr_branch", RepoKind::Hr);
    w.add_repository("fin", RepoKind::Finance, profile::Rank::Manager);
    w.add_repository("media", RepoKind::Media);
    w.add_repository("docs", RepoKind::Docs);
    w.seed("hr_main", "e1", {{"fullName", text("Ann")}, {"company", text("acme")}, {"country", text("NO")},
                             {"position", text("clerk")}, {"vacancy", core::boolean(true)}});
    w.seed("hr_branch", "e2", {{"company", text("globex")}, {"country", text("SE")}, {"position", text("cto")}});
    w.seed("hr_branch", "e3", {{"company", text("acme")}, {"country", text("SE")}, {"position", text("dev")}});
    w.seed("fin", "r1", {{"indicator", text("revenues")}, {"amount", integer(100)}, {"period", text("2023")}});
    w.seed("fin", "r2", {{"indicator", text("revenues")}, {"amount", real(150.5)}, {"period", text("2024")}});
    w.seed("media", "m1", {{"category", text("image")}, {"subcategory", text("logos")}, {"format", text("png")},
                           {"location", text("img/logo.png")}});
    w.seed("media", "m2", {{"category", text("video")}, {"format", text("mp4")}, {"location", text("v/intro.mp4")}});
    w.seed("docs", "d1", {{"person", text("Zed")}, {"email", text("zed@example.org")}});
    w.seed("docs", "d2", {{"person", text("Amy")}});
    return w;
}

TEST(Warehouse, KindNames) {
    for (RepoKind k : {RepoKind::Hr, RepoKind::Finance, RepoKind::Media, RepoKind::Docs}) {
        EXPECT_EQ(repo_kind_from_string(to_string(k)), k);
    }
}

TEST(Warehouse, SeedsFillDefaultsAndValidate) {
    Warehouse w = sample();
    EXPECT_EQ(w.repository("hr_branch").items.at("e2").fields.at("vacancy"), core::boolean(false));
    EXPECT_EQ(w.repository("fin").items.at("r1").fields.at("amount"), real(100));
    EXPECT_EQ(pt::error_code([&] { w.seed("hr_main", "x", {{"company", text("a")}}); }), ErrorCode::MalformedChange);
    EXPECT_EQ(pt::error_code([&] { w.seed("fin", "x", {{"indicator", text("vacancies")}, {"amount", real(1)}}); }),
              ErrorCode::MalformedChange);
    EXPECT_EQ(pt::error_code([&] {
                  w.seed("media", "x", {{"category", text("audio")}, {"subcategory", text("logos")},
                                        {"format", text("ogg")}, {"location", text("a.ogg")}});
              }),
              ErrorCode::MalformedChange);
    EXPECT_EQ(pt::error_code([&] { w.seed("nowhere", "x", {}); }), ErrorCode::UnknownRepository);
    EXPECT_EQ(pt::error_code([&] { w.add_repository("fin", RepoKind::Docs); }), ErrorCode::InvalidDeclaration);
}

TEST(Warehouse, UniformFetchAdaptsNativeRecords) {
    Warehouse w = sample();
    auto employee = w.uniform_fetch("hr_main", "e1");
    EXPECT_EQ(employee.concept_name, "HrRecord");
    EXPECT_EQ(employee.state.values.at("name"), text("Ann"));
    EXPECT_EQ(employee.state.values.at("openVacancy"), core::boolean(true));

    auto logo = w.uniform_fetch("media", "m1");
    EXPECT_EQ(logo.state.values.at("category"), text("static image"));
    EXPECT_EQ(logo.state.values.at("payload"), core::media("img/logo.png"));

    EXPECT_EQ(pt::error_code([&] { w.uniform_fetch("hr_main", "zz"); }), ErrorCode::UnknownItem);
}

TEST(Warehouse, PortalItemsAggregateAcrossRepositories) {
    Warehouse w = sample();
    EXPECT_EQ(w.portal_item("totalEstablishment").value, Content(integer(3)));
    EXPECT_EQ(w.portal_item("countryCount").value, Content(integer(2)));
    EXPECT_EQ(w.portal_item("companyCount").value, Content(integer(2)));
    EXPECT_EQ(w.portal_item("vacancies").value, Content(integer(1)));
    EXPECT_EQ(w.portal_item("totalEstablishment").source, "hr_branch,hr_main");
    EXPECT_EQ(w.portal_item("revenues").value, Content(real(150.5)));
    EXPECT_EQ(w.portal_item("profits").value, Content(Unavailable{}));
    EXPECT_EQ(w.portal_item("contacts").value,
              Content(std::vector<std::string>{"Amy", "Zed <zed@example.org>"}));
    EXPECT_EQ(pt::error_code([&] { w.portal_item("weather"); }), ErrorCode::UnknownItem);
    EXPECT_EQ(w.aggregate_portal_items().size(), portal_catalog().size());
}

TEST(Warehouse, UnavailableIsNotZero) {
    Warehouse w;
    w.add_repository("hr", RepoKind::Hr);
    EXPECT_EQ(w.portal_item("totalEstablishment").value, Content(integer(0)));
    EXPECT_EQ(w.portal_item("revenues").value, Content(Unavailable{}));
    EXPECT_EQ(render(Content(Unavailable{})), "unavailable");
}

TEST(Warehouse, SearchMediaFiltersByCategoryAndPredicate) {
    Warehouse w = sample();
    auto any = b::truth(true);
    auto logos = w.search_media(MediaCategory::StaticImage, ImageSubCategory::Logos, *any);
    ASSERT_EQ(logos.size(), 1u);
    EXPECT_EQ(logos[0].payload.uri, "img/logo.png");
    EXPECT_TRUE(w.search_media(MediaCategory::StaticImage, ImageSubCategory::Photos, *any).empty());
    auto mp4 = b::eq(b::field("format"), b::lit(text("mp4")));
    EXPECT_EQ(w.search_media(MediaCategory::Video, std::nullopt, *mp4).size(), 1u);
    EXPECT_EQ(pt::error_code([&] { w.search_media(MediaCategory::Audio, ImageSubCategory::Logos, *any); }),
              ErrorCode::InvalidCategoryCombination);
    EXPECT_EQ(pt::error_code([&] { w.search_media(MediaCategory::Video, std::nullopt, *b::field("format")); }),
              ErrorCode::IllTypedPredicate);
}

TEST(Warehouse, MutateUpsertsRemovesAndReports) {
    Warehouse w = sample();
    std::vector<MutationDescriptor> seen;
    auto hook = [&](const MutationDescriptor& d) { seen.push_back(d); };

    w.mutate("hr_main", {Change::Op::Upsert, "e1", {{"vacancy", core::boolean(false)}}}, true, hook);
    EXPECT_EQ(w.repository("hr_main").items.at("e1").version, 1u);
    EXPECT_EQ(w.repository("hr_main").items.at("e1").fields.at("fullName"), text("Ann"));
    ASSERT_EQ(seen.size(), 1u);
    EXPECT_EQ(seen[0].repository, "hr_main");

    w.mutate("hr_main", {Change::Op::Remove, "e1", {}}, false, hook);
    EXPECT_FALSE(w.repository("hr_main").items.contains("e1"));
    EXPECT_EQ(seen.size(), 1u);
    EXPECT_EQ(w.repository("hr_main").revision, 2u);
}

TEST(Warehouse, FailedMutationLeavesNoTrace) {
    Warehouse w = sample();
    std::size_t hash = w.content_hash();
    EXPECT_EQ(pt::error_code([&] { w.mutate("hr_main", {Change::Op::Remove, "nobody", {}}, true); }),
              ErrorCode::MalformedChange);
    EXPECT_EQ(pt::error_code([&] { w.mutate("hr_main", {Change::Op::Upsert, "e1", {{"vacancy", integer(1)}}}, true); }),
              ErrorCode::MalformedChange);
    EXPECT_EQ(pt::error_code([&] { w.mutate("hr_main", {Change::Op::Upsert, "", {}}, true); }),
              ErrorCode::MalformedChange);
    EXPECT_EQ(w.content_hash(), hash);
    EXPECT_EQ(w.repository("hr_main").revision, 0u);
}

TEST(Warehouse, CoerceIsLosslessOnly) {
    EXPECT_EQ(coerce(integer(2), core::Kind::Real), real(2));
    EXPECT_EQ(coerce(text("a.png"), core::Kind::Media), core::media("a.png"));
    EXPECT_FALSE(coerce(real(2), core::Kind::Integer).has_value());
    EXPECT_FALSE(coerce(core::boolean(true), core::Kind::Text).has_value());
}

TEST(WarehouseProperty, HrCountsMatchRecount) {
    pt::Rng rng(0x4a11);
    const std::vector<std::string> companies{"acme", "globex", "initech"};
    const std::vector<std::string> countries{"NO", "SE", "DK", "FI"};
    for (int round = 0; round < 100; ++round) {
        Warehouse w;
        w.add_repository("a", RepoKind::Hr);
        w.add_repository("b", RepoKind::Hr);
        std::map<std::string, std::tuple<std::string, std::string, bool>> truth;
        for (int step = 0; step < 40; ++step) {
            std::string repo = pt::coin(rng) ? "a" : "b";
            std::string id = repo + std::to_string(pt::uniform(rng, 0, 6));
            bool exists = truth.contains(id);
            if (exists && pt::coin(rng, 0.3)) {
                w.mutate(repo, {Change::Op::Remove, id, {}}, false);
                truth.erase(id);
                continue;
            }
            std::string company = pt::pick(rng, companies), country = pt::pick(rng, countries);
            bool vacancy = pt::coin(rng);
            w.mutate(repo,
                     {Change::Op::Upsert, id,
                      {{"company", text(company)}, {"country", text(country)}, {"position", text("p")},
                       {"vacancy", core::boolean(vacancy)}}},
                     false);
            truth[id] = {company, country, vacancy};
        }
        std::set<std::string> cos, ctys;
        std::int64_t open = 0;
        for (const auto& [_, row] : truth) {
            cos.insert(std::get<0>(row));
            ctys.insert(std::get<1>(row));
            open += std::get<2>(row);
        }
        ASSERT_EQ(w.portal_item("totalEstablishment").value, Content(integer(static_cast<std::int64_t>(truth.size()))));
        ASSERT_EQ(w.portal_item("companyCount").value, Content(integer(static_cast<std::int64_t>(cos.size()))));
        ASSERT_EQ(w.portal_item("countryCount").value, Content(integer(static_cast<std::int64_t>(ctys.size()))));
        ASSERT_EQ(w.portal_item("vacancies").value, Content(integer(open)));
    }
}

}  // namespace
