#include <gtest/gtest.h>

#include "portalis/error.hpp"
#include "portalis/frames/frame_net.hpp"
#include "support.hpp"

namespace {

using namespace portalis;
using namespace portalis::frames;
namespace pt = portalis::testing;

FrameLanguage office() {
    FrameLanguage lang;
    for (auto c : {"acme", "globex", "alice", "boris"}) lang.declare_constant(c);
    lang.declare_relation("employs");
    lang.declare_relation("knows");
    lang.assert_frame({"employs", "acme", "alice"});
    lang.assert_frame({"employs", "acme", "boris"});
    lang.assert_frame({"employs", "globex", "boris"});
    lang.assert_frame({"knows", "alice", "alice"});
    return lang;
}

TEST(Frames, EvaluateIsCharacteristicFunction) {
    FrameLanguage lang = office();
    EXPECT_TRUE(lang.evaluate({"employs", "acme", "alice"}));
    EXPECT_FALSE(lang.evaluate({"employs", "alice", "acme"}));
    EXPECT_EQ(pt::error_code([&] { lang.evaluate({"hates", "acme", "alice"}); }), ErrorCode::UndeclaredSymbol);
    EXPECT_EQ(pt::error_code([&] { lang.evaluate({"employs", "acme", "zoe"}); }), ErrorCode::UndeclaredSymbol);
}

TEST(Frames, AssertIsIdempotent) {
    FrameLanguage lang = office();
    std::size_t n = lang.frame_count();
    lang.assert_frame({"employs", "acme", "alice"});
    EXPECT_EQ(lang.frame_count(), n);
    FrameLanguage copy = assert_frame(lang, {"knows", "boris", "alice"});
    EXPECT_EQ(copy.frame_count(), n + 1);
    EXPECT_EQ(lang.frame_count(), n);
}

TEST(Frames, QueryBindsVariables) {
    FrameLanguage lang = office();
    BindingSet employers = lang.query({std::string("employs"), Variable{"who"}, std::string("boris")});
    EXPECT_EQ(employers, (BindingSet{{{"who", "acme"}}, {{"who", "globex"}}}));

    BindingSet ground = lang.query({std::string("employs"), std::string("acme"), std::string("alice")});
    EXPECT_EQ(ground, (BindingSet{Binding{}}));
    EXPECT_TRUE(lang.query({std::string("employs"), std::string("globex"), std::string("alice")}).empty());
}

TEST(Frames, RepeatedVariableMustUnify) {
    FrameLanguage lang = office();
    lang.assert_frame({"knows", "alice", "boris"});
    BindingSet self = lang.query({std::string("knows"), Variable{"x"}, Variable{"x"}});
    EXPECT_EQ(self, (BindingSet{{{"x", "alice"}}}));
}

TEST(Frames, MalformedPatterns) {
    FrameLanguage lang = office();
    EXPECT_EQ(pt::error_code([&] { lang.query({Variable{"r"}, Variable{"a"}, Variable{"b"}}); }),
              ErrorCode::MalformedPattern);
    EXPECT_EQ(pt::error_code([&] { lang.query({std::string("employs"), Variable{""}, Variable{"b"}}); }),
              ErrorCode::MalformedPattern);
    EXPECT_EQ(pt::error_code([&] { lang.query({std::string("nope"), Variable{"a"}, Variable{"b"}}); }),
              ErrorCode::UndeclaredSymbol);
    EXPECT_EQ(pt::error_code([&] { lang.query({std::string("employs"), std::string("zoe"), Variable{"b"}}); }),
              ErrorCode::UndeclaredSymbol);
}

TEST(Frames, ToStringMarksVariables) {
    EXPECT_EQ(to_string(Pattern{std::string("employs"), Variable{"x"}, std::string("acme")}), "employs(?x, acme)");
}

TEST(Frames, HashSeesFramesAndConstants) {
    FrameLanguage a = office();
    FrameLanguage c = office();
    EXPECT_EQ(a.content_hash(), c.content_hash());
    c.assert_frame({"knows", "boris", "boris"});
    EXPECT_NE(a.content_hash(), c.content_hash());
}

TEST(FramesProperty, QueryMatchesNestedLoopOracle) {
    pt::Rng rng(0xf4a3e);
    for (int round = 0; round < 300; ++round) {
        FrameLanguage lang;
        std::vector<std::string> constants;
        std::size_t nc = static_cast<std::size_t>(pt::uniform(rng, 1, 6));
        for (std::size_t i = 0; i < nc; ++i) {
            constants.push_back("c" + std::to_string(i));
            lang.declare_constant(constants.back());
        }
        lang.declare_relation("r");
        std::set<std::pair<std::string, std::string>> truth;
        for (const auto& a : constants) {
            for (const auto& c : constants) {
                if (pt::coin(rng, 0.35)) {
                    truth.emplace(a, c);
                    lang.assert_frame({"r", a, c});
                }
            }
        }
        auto term = [&](const char* var) -> Term {
            if (pt::coin(rng)) return Variable{pt::coin(rng) ? "x" : var};
            return pt::pick(rng, constants);
        };
        Pattern p{std::string("r"), term("x"), term("y")};

        BindingSet expected;
        for (const auto& a : constants) {
            for (const auto& c : constants) {
                if (!truth.contains({a, c})) continue;
                Binding bnd;
                bool ok = true;
                auto bind = [&](const Term& t, const std::string& v) {
                    if (auto* k = std::get_if<std::string>(&t)) {
                        ok = ok && *k == v;
                    } else if (auto [it, fresh] = bnd.emplace(std::get<Variable>(t).name, v); !fresh) {
                        ok = ok && it->second == v;
                    }
                };
                bind(p.subject, a);
                bind(p.object, c);
                if (ok) expected.insert(bnd);
            }
        }
        ASSERT_EQ(lang.query(p), expected) << to_string(p);
    }
}

}  // namespace
