#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace horndl;
using namespace testutil;

namespace {

using Pair = std::pair<std::string, std::string>;

std::set<Pair> pairs(const Vocabulary& v, const std::vector<Tuple>& ts) {
    std::set<Pair> out;
    for (const auto& t : ts) out.insert({v.consts.name(t.at(0)), v.consts.name(t.at(1))});
    return out;
}

struct Ax {
    int sub, super;
    bool inv;
};

// Least fixpoint of the role inclusions over the given facts.
std::map<int, std::set<Pair>> closure(const std::vector<Ax>& axs, std::map<int, std::set<Pair>> rel) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : axs) {
            for (const auto& [x, y] : std::set<Pair>(rel[a.sub])) {
                Pair p = a.inv ? Pair{y, x} : Pair{x, y};
                if (rel[a.super].insert(p).second) changed = true;
            }
        }
    }
    return rel;
}

}  // namespace

TEST(Roles, MutualInclusion) {
    auto s = make_session("subrole(r, s). subrole(s, r).\nr(a, b). s(b, c).\n", Options{});
    auto v = *s.kb.vocab;
    std::set<Pair> want{{"a", "b"}, {"b", "c"}};
    EXPECT_EQ(pairs(v, s.query("r(X, Y)").tuples), want);
    EXPECT_EQ(pairs(v, s.query("s(X, Y)").tuples), want);
}

TEST(Roles, SymmetricClosure) {
    auto s = make_session("subrole(inv(r), r).\nr(a, b). r(b, c).\n", Options{});
    std::set<Pair> want{{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}};
    EXPECT_EQ(pairs(*s.kb.vocab, s.query("r(X, Y)").tuples), want);
    EXPECT_EQ(s.query("r(c, b)").tuples.size(), 1u);
}

TEST(Roles, RoleHierarchyFeedsConcepts) {
    auto s = make_session("subrole(hasSon, hasChild).\nsome(hasChild, Top) => Parent.\nhasSon(a, b). Top(b).\n", Options{});
    EXPECT_EQ(names(*s.kb.vocab, s.query("Parent(X)").tuples), std::set<std::string>{"a"});
}

TEST(Roles, RandomHierarchiesMatchClosure) {
    std::mt19937 rng(29);
    const std::vector<std::string> roles{"r0", "r1", "r2", "r3"};
    for (int round = 0; round < 60; ++round) {
        std::vector<Ax> axs;
        std::string text;
        int n_ax = rng() % 6;
        for (int i = 0; i < n_ax; ++i) {
            Ax a{int(rng() % 4), int(rng() % 4), rng() % 3 == 0};
            if (a.sub == a.super && !a.inv) continue;
            axs.push_back(a);
            text += "subrole(" + (a.inv ? "inv(" + roles[a.sub] + ")" : roles[a.sub]) + ", " + roles[a.super] + ").\n";
        }
        std::map<int, std::set<Pair>> base;
        int n_facts = rng() % 20;
        for (int i = 0; i < n_facts; ++i) {
            int r = rng() % 4;
            Pair p{"c" + std::to_string(rng() % 5), "c" + std::to_string(rng() % 5)};
            base[r].insert(p);
            text += roles[r] + "(" + p.first + ", " + p.second + ").\n";
        }
        // every role appears somewhere so queries are well-formed
        for (const auto& r : roles) text += "Dummy(X) | ~" + r + "(X, Y).\n";
        auto want = closure(axs, base);
        Options off{false, false, false, false, false, OrphanMode::General, false};
        for (const auto& opts : {Options{}, off}) {
            auto s = make_session(text, opts);
            for (int r = 0; r < 4; ++r) {
                auto got = pairs(*s.kb.vocab, s.query(roles[r] + "(X, Y)").tuples);
                EXPECT_EQ(got, want[r]) << text << roles[r];
                auto q = parse_query(roles[r] + "(X, Y)", *s.kb.vocab);
                auto ref = solve_query_ref(s.prog, s.store, q);
                EXPECT_EQ(pairs(*s.kb.vocab, ref.tuples), want[r]) << text << roles[r];
            }
        }
    }
}
