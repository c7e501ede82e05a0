#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace horndl;
using namespace testutil;

TEST(Pdl, IocasteProgram) {
    auto prog = build_program(parse_kb_or_throw(kIocaste2));
    auto r = rendered(prog);
    std::vector<std::string> want{
        "Ans(X) :- hasChild(X, Y), hasChild(Y, Z), Patricide(Y), not_Patricide(Z).",
        "not_Patricide(Y) :- hasChild(X, Y), hasChild(Y, Z), not_Ans(X), not_Patricide(Z).",
        "Patricide(Z) :- hasChild(X, Y), hasChild(Y, Z), not_Ans(X), Patricide(Y).",
        "hasChild(i, o).",
        "hasChild(i, p).",
        "hasChild(o, p).",
        "hasChild(p, t).",
        "Patricide(o).",
        "not_Patricide(t).",
    };
    EXPECT_EQ(r, want);
}

TEST(Pdl, OneContrapositivePerLiteral) {
    auto kb = parse_kb_or_throw(kIocaste2);
    auto p = pdl(kb.tbox, kb.vocab);
    EXPECT_EQ(p.clauses.size(), 5u);  // before pruning negated role heads
    EXPECT_EQ(prune_negated_binary_heads(p).clauses.size(), 3u);
}

TEST(Pdl, EqualityLiteralNeverBecomesHead) {
    auto kb = parse_kb_or_throw("Happy(X) | ~hasChild(X,Y1) | ~hasChild(X,Y2) | Y1 = Y2.\n");
    auto p = pdl(kb.tbox, kb.vocab);
    EXPECT_EQ(p.clauses.size(), 3u);
    auto built = build_program(kb);
    ASSERT_EQ(built.clauses.size(), 1u);
    EXPECT_EQ(render_horn(*built.vocab, built.clauses[0]), "Happy(X) :- hasChild(X, Y1), hasChild(X, Y2), Y1 \\= Y2.");
}

TEST(Pdl, RepeatedLiteralsCountOnce) {
    auto kb = parse_kb_or_throw("A & A => D.\n");
    auto p = build_program(kb);
    auto r = rendered(p);
    EXPECT_EQ(r, (std::vector<std::string>{"D(X) :- A(X).", "not_A(X) :- not_D(X)."}));
}

TEST(BinaryFirst, StablePartition) {
    auto kb = parse_kb_or_throw(kHappy);
    auto p = build_program(kb);
    EXPECT_EQ(render_horn(*p.vocab, p.clauses[0]),
              "Happy(X) :- hasChild(X, Y), hasChild(Y, Z), hasChild(Y, U), Clever(Z), Pretty(U).");
    for (const auto& c : p.clauses) {
        bool seen_other = false;
        for (const auto& l : c.body) {
            if (!l.is_binary()) seen_other = true;
            else EXPECT_FALSE(seen_other);
        }
    }
}

TEST(Parts, TboxAndAboxSplit) {
    auto p = build_program(parse_kb_or_throw(kHappy));
    EXPECT_EQ(p.tbox_part().clauses.size(), 3u);
    EXPECT_EQ(p.abox_part().clauses.size(), 4u);
    for (const auto& c : p.abox_part().clauses) EXPECT_TRUE(c.is_fact());
    EXPECT_EQ(program_facts(p).size(), 4u);
}

TEST(RoleAxioms, BecomeRoleClauses) {
    auto p = build_program(parse_kb_or_throw("subrole(r, s). subrole(inv(r), t).\n"));
    EXPECT_EQ(rendered(p), (std::vector<std::string>{"s(X, Y) :- r(X, Y).", "t(X, Y) :- r(Y, X)."}));
}

TEST(Signature, IncludesOrphans) {
    auto p = build_program(parse_kb_or_throw(kHappy));
    auto s = signature_of(p);
    EXPECT_TRUE(s.contains(pred(*p.vocab, "not_Happy")));
}
