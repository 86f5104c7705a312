#include <gtest/gtest.h>

#include <set>

#include "portalis/core/model.hpp"
#include "portalis/error.hpp"
#include "support.hpp"

namespace {

using namespace portalis;
using namespace portalis::core;
namespace b = portalis::core::build;
namespace pt = portalis::testing;

Store company_store() {
    Store s;
    s.add_concept({"Company", {{"name", {Kind::Text, ""}}, {"size", {Kind::Integer, ""}}}});
    s.add_concept({"Employee", {{"employer", {Kind::Reference, "Company"}}, {"salary", {Kind::Real, ""}}}});
    s.create("acme", "Company", {{"name", text("Acme")}, {"size", integer(40)}});
    s.create("globex", "Company", {{"name", text("Globex")}, {"size", integer(7)}});
    s.create("alice", "Employee", {{"employer", reference("acme")}, {"salary", real(10.5)}});
    return s;
}

TEST(Concept, RejectsBadDeclarations) {
    std::set<std::string, std::less<>> known{"A"};
    EXPECT_EQ(pt::error_code([&] { validate_concept({"A", {}}, known); }), ErrorCode::InvalidDeclaration);
    EXPECT_EQ(pt::error_code([&] { validate_concept({"A", {{"id", {Kind::Text, ""}}}}, known); }),
              ErrorCode::InvalidDeclaration);
    EXPECT_EQ(pt::error_code([&] {
                  validate_concept({"A", {{"f", {Kind::Text, ""}}, {"f", {Kind::Integer, ""}}}}, known);
              }),
              ErrorCode::InvalidDeclaration);
    EXPECT_EQ(pt::error_code([&] { validate_concept({"A", {{"r", {Kind::Reference, "B"}}}}, known); }),
              ErrorCode::UnknownConcept);
}

TEST(Store, MutuallyReferencingConceptsLoadTogether) {
    Store s;
    s.add_concepts({{"A", {{"b", {Kind::Reference, "B"}}}}, {"B", {{"a", {Kind::Reference, "A"}}}}});
    EXPECT_NE(s.find_concept("A"), nullptr);
    EXPECT_NE(s.find_concept("B"), nullptr);
}

TEST(Store, CreateChecksValues) {
    Store s = company_store();
    EXPECT_EQ(pt::error_code([&] { s.create("x", "Company", {{"name", text("X")}}); }), ErrorCode::PartialAssignment);
    EXPECT_EQ(pt::error_code([&] { s.create("x", "Company", {{"name", text("X")}, {"size", real(1)}}); }),
              ErrorCode::KindMismatch);
    EXPECT_EQ(pt::error_code([&] { s.create("x", "Company", {{"name", text("X")}, {"size", integer(1)}, {"q", integer(1)}}); }),
              ErrorCode::UnknownField);
    EXPECT_EQ(pt::error_code([&] { s.create("acme", "Company", {{"name", text("X")}, {"size", integer(1)}}); }),
              ErrorCode::InvalidDeclaration);
    EXPECT_EQ(pt::error_code([&] { s.create("x", "Nope", {}); }), ErrorCode::UnknownConcept);
}

TEST(Store, ReferencesAreCheckedNominally) {
    Store s = company_store();
    s.create("bob", "Employee", {{"employer", reference("alice")}, {"salary", real(1)}});
    EXPECT_EQ(pt::error_code([&] { s.validate_references(); }), ErrorCode::ConceptMismatch);

    Store t = company_store();
    t.create("bob", "Employee", {{"employer", reference("initech")}, {"salary", real(1)}});
    EXPECT_EQ(pt::error_code([&] { t.validate_references(); }), ErrorCode::UnknownIndividual);
    EXPECT_EQ(pt::error_code([&] { t.transition("alice", {{"employer", reference("alice")}}, "move"); }),
              ErrorCode::ConceptMismatch);
}

TEST(Store, TransitionsAppendHistory) {
    Store s = company_store();
    std::size_t before = s.revision();
    s.transition("acme", {{"size", integer(41)}}, "hire");
    const Individual& acme = s.individual("acme");
    ASSERT_EQ(acme.states.size(), 2u);
    EXPECT_EQ(acme.states[0].values.at("size"), integer(40));
    EXPECT_EQ(acme.current().values.at("size"), integer(41));
    EXPECT_EQ(acme.current().values.at("name"), text("Acme"));
    EXPECT_EQ(acme.current().cause, "hire");
    EXPECT_EQ(acme.current().version, 1u);
    EXPECT_EQ(s.revision(), before + 1);
    EXPECT_EQ(state_at(acme, 0).values.at("size"), integer(40));
    EXPECT_EQ(pt::error_code([&] { state_at(acme, 5); }), ErrorCode::UnknownVersion);
}

TEST(Store, FailedTransitionChangesNothing) {
    Store s = company_store();
    std::size_t hash = s.content_hash();
    EXPECT_EQ(pt::error_code([&] { s.transition("acme", {{"size", text("big")}}, "bad"); }), ErrorCode::KindMismatch);
    EXPECT_EQ(s.content_hash(), hash);
}

TEST(Comprehension, ReadsHistoricalVersions) {
    Store s = company_store();
    s.transition("globex", {{"size", integer(70)}}, "merge");
    auto domain = s.individuals_of("Company");
    auto big = b::binary(ExprOp::Gt, b::field("size"), b::lit(integer(10)));
    EXPECT_EQ(comprehend(s, domain, *big), (IdSet{"acme", "globex"}));
    EXPECT_EQ(comprehend(s, domain, *big, 0), (IdSet{"acme"}));
}

TEST(Comprehension, TypesAgainstSharedFields) {
    Store s = company_store();
    auto all = s.all_individuals();
    // `size` is not shared by Employee, so the mixed domain rejects it.
    EXPECT_EQ(pt::error_code([&] { comprehend(s, all, *b::binary(ExprOp::Gt, b::field("size"), b::lit(integer(1)))); }),
              ErrorCode::IllTypedPredicate);
    EXPECT_EQ(comprehend(s, all, *b::eq(b::field("concept"), b::lit(text("Employee")))), (IdSet{"alice"}));
}

TEST(Individualization, DistinguishesNoneOneAndMany) {
    Store s = company_store();
    auto domain = s.individuals_of("Company");
    EXPECT_EQ(individualize(s, domain, *b::eq(b::field("name"), b::lit(text("Acme")))).id, "acme");
    EXPECT_EQ(pt::error_code([&] { individualize(s, domain, *b::truth(false)); }), ErrorCode::NotIndividualized);
    EXPECT_EQ(pt::error_code([&] { individualize(s, domain, *b::truth(true)); }), ErrorCode::AmbiguousDescription);
}

TEST(SortVariable, MustBeTotalAndWellTyped) {
    Store s = company_store();
    auto h = bind_sort(s, {"i", "j"}, "Company", {{"i", "acme"}, {"j", "acme"}});
    EXPECT_EQ(h.assignment.at("j"), "acme");
    EXPECT_EQ(pt::error_code([&] { bind_sort(s, {"i", "j"}, "Company", {{"i", "acme"}}); }), ErrorCode::PartialAssignment);
    EXPECT_EQ(pt::error_code([&] { bind_sort(s, {"i"}, "Company", {{"i", "acme"}, {"k", "globex"}}); }),
              ErrorCode::PartialAssignment);
    EXPECT_EQ(pt::error_code([&] { bind_sort(s, {"i"}, "Company", {{"i", "alice"}}); }), ErrorCode::ConceptMismatch);
    EXPECT_EQ(pt::error_code([&] { bind_sort(s, {"i"}, "Company", {{"i", "nobody"}}); }), ErrorCode::UnknownIndividual);
}

/// Builds a Probe store from random rows.
Store probe_store(pt::Rng& rng, std::size_t size, std::vector<pt::ProbeRow>& rows) {
    Store s;
    s.add_concept(pt::probe_concept());
    rows.clear();
    for (std::size_t i = 0; i < size; ++i) {
        rows.push_back(pt::random_row(rng, "p" + std::to_string(i)));
        s.create(rows.back().id, "Probe", pt::probe_values(rows.back()));
    }
    return s;
}

TEST(ComprehensionProperty, MatchesFilterOracle) {
    pt::Rng rng(0xc0ffee);
    std::vector<pt::ProbeRow> rows;
    for (int round = 0; round < 300; ++round) {
        Store s = probe_store(rng, static_cast<std::size_t>(pt::uniform(rng, 1, 24)), rows);
        std::vector<std::string> ids;
        for (const auto& r : rows) ids.push_back(r.id);
        ids.push_back("ghost");
        auto generated = pt::random_probe_predicate(rng, 3, ids);
        auto domain = s.individuals_of("Probe");
        IdSet expected;
        for (const auto& r : rows) {
            if (generated.oracle(r)) expected.insert(r.id);
        }
        ASSERT_EQ(comprehend(s, domain, *generated.expr), expected) << to_source(*generated.expr);
    }
}

TEST(ComprehensionProperty, ComplementPartitionsTheDomain) {
    pt::Rng rng(0xfeed);
    std::vector<pt::ProbeRow> rows;
    for (int round = 0; round < 200; ++round) {
        Store s = probe_store(rng, 12, rows);
        auto domain = s.individuals_of("Probe");
        auto phi = pt::random_probe_predicate(rng, 3, {"p1", "p5"}).expr;
        IdSet yes = comprehend(s, domain, *phi);
        IdSet no = comprehend(s, domain, *b::not_(phi));
        IdSet both;
        for (const auto& id : yes) {
            EXPECT_FALSE(no.contains(id));
            both.insert(id);
        }
        both.insert(no.begin(), no.end());
        EXPECT_EQ(both.size(), domain.size());
    }
}

}  // namespace
