#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace horndl;
using namespace testutil;

namespace {

struct Fixture {
    Vocabulary v;
    PredName P(const std::string& n, int arity = 1) {
        return PredName{v.preds.intern(n), false, static_cast<std::uint8_t>(arity)};
    }
    PredName N(const std::string& n, int arity = 1) { return P(n, arity).negate(); }
};

DLClause clause(std::vector<Literal> lits, int nvars) {
    DLClause c;
    c.literals = std::move(lits);
    for (int i = 0; i < nvars; ++i) c.var_names.push_back(std::string(1, char('X' + i)));
    return c;
}

}  // namespace

TEST(SymbolTable, InternIsStable) {
    SymbolTable t;
    auto a = t.intern("a");
    auto b = t.intern("b");
    EXPECT_NE(a, b);
    EXPECT_EQ(t.intern("a"), a);
    EXPECT_EQ(t.name(b), "b");
    EXPECT_FALSE(t.find("c"));
}

TEST(Vocabulary, PredicatesAndConstantsAreSeparate) {
    Vocabulary v;
    auto p = v.preds.intern("x");
    auto c = v.consts.intern("x");
    EXPECT_EQ(p, c);  // both first in their own space
    EXPECT_EQ(v.preds.size(), 1u);
    EXPECT_EQ(v.consts.size(), 1u);
}

TEST(Validate, IocasteClauseIsOk) {
    Fixture f;
    Term x = Term::var(0), y = Term::var(1), z = Term::var(2);
    auto c = clause({Literal::unary(f.P("Ans"), x), Literal::binary(f.N("hasChild", 2), x, y),
                     Literal::binary(f.N("hasChild", 2), y, z), Literal::unary(f.N("Patricide"), y),
                     Literal::unary(f.P("Patricide"), z)},
                    3);
    EXPECT_TRUE(validate_dl_clause(c, &f.v).ok());
}

TEST(Validate, SelfLoopRoleClauseIsOk) {
    Fixture f;
    Term x = Term::var(0);
    auto c = clause({Literal::unary(f.P("P"), x), Literal::binary(f.N("R", 2), x, x)}, 1);
    EXPECT_TRUE(validate_dl_clause(c).ok());
}

TEST(Validate, UnaryOnlyWithTwoVariablesViolatesP2) {
    Fixture f;
    auto c = clause({Literal::unary(f.P("C"), Term::var(0)), Literal::unary(f.P("D"), Term::var(1))}, 2);
    auto r = validate_dl_clause(c);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(r.violates(2));
}

TEST(Validate, PositiveBinaryMustCoverTheOtherVariables) {
    Fixture f;
    Term x = Term::var(0), y = Term::var(1), z = Term::var(2);
    // S(x,y) | ~R(x,z) | ~R(z,y): the role literal's variables differ from the rest
    auto bad = clause({Literal::binary(f.P("S", 2), x, y), Literal::binary(f.N("R", 2), x, z),
                       Literal::binary(f.N("R", 2), z, y)},
                      3);
    EXPECT_TRUE(validate_dl_clause(bad).violates(4));
    auto good = clause({Literal::binary(f.P("S", 2), x, y), Literal::binary(f.N("R", 2), y, x)}, 2);
    EXPECT_TRUE(validate_dl_clause(good).ok());
}

TEST(Validate, GroundClausesAreAccepted) {
    Fixture f;
    SymbolId a = f.v.consts.intern("a");
    auto c = clause({Literal::unary(f.P("C"), Term::constant(a)), Literal::unary(f.N("D"), Term::constant(a))}, 0);
    EXPECT_TRUE(validate_dl_clause(c).ok());
}

TEST(Validate, VariableOutsideBinaryLiteralsViolatesP3) {
    Fixture f;
    Term x = Term::var(0), y = Term::var(1), z = Term::var(2);
    auto c = clause({Literal::unary(f.P("C"), x), Literal::binary(f.N("R", 2), x, y), Literal::unary(f.P("D"), z)}, 3);
    EXPECT_FALSE(validate_dl_clause(c).ok());
}

TEST(Canonical, NegationFlipsTheFlag) {
    Fixture f;
    Literal l = Literal::unary(f.P("Patricide"), Term::var(0));
    Literal n = canonical_literal(l, true);
    EXPECT_TRUE(n.pred.negated);
    EXPECT_EQ(canonical_literal(n, true), l);  // double negation removed
    EXPECT_EQ(canonical_literal(l), l);
}

TEST(Canonical, NegatedEqualityBecomesInequality) {
    Literal eq = Literal::equality(true, Term::var(0), Term::var(1));
    Literal ne = canonical_literal(eq, true);
    EXPECT_TRUE(ne.is_equality());
    EXPECT_FALSE(ne.positive);
    EXPECT_TRUE(ne.negative());
}

TEST(Canonical, IdempotentOnRandomLiterals) {
    Fixture f;
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        Literal l;
        switch (rng() % 3) {
            case 0: l = Literal::unary(f.P("A" + std::to_string(rng() % 3)), Term::var(rng() % 2)); break;
            case 1: l = Literal::binary(f.P("r", 2), Term::var(rng() % 2), Term::var(rng() % 2)); break;
            default: l = Literal::equality(rng() % 2, Term::var(0), Term::var(1)); break;
        }
        if (!l.is_equality() && rng() % 2) l.pred = l.pred.negate();
        Literal c = canonical_literal(l, rng() % 2);
        EXPECT_EQ(canonical_literal(c), c);
    }
}

TEST(Negate, IsAnInvolution) {
    Fixture f;
    PredName p = f.P("p");
    EXPECT_TRUE(negate(p).negated);
    EXPECT_EQ(negate(negate(p)), p);
    Literal g = Literal::unary(f.N("p"), Term::var(0));
    EXPECT_EQ(negate(g).pred, p);
    EXPECT_EQ(negate(negate(g)), g);
}

TEST(Negate, InequalityGoal) {
    Literal ne = Literal::equality(false, Term::var(0), Term::var(1));
    EXPECT_TRUE(negate(ne).positive);
}

TEST(Signature, IocasteProgram) {
    auto kb = parse_kb_or_throw(kIocaste2);
    auto prog = build_program(kb);
    const auto& v = *prog.vocab;
    Signature s = signature_of(prog);
    std::set<PredName> unary{pred(v, "Ans"), pred(v, "not_Ans"), pred(v, "Patricide"), pred(v, "not_Patricide")};
    EXPECT_EQ(s.unary, unary);
    EXPECT_EQ(s.binary, std::set<PredName>{pred(v, "hasChild", 2)});

    Signature abox = signature_of(prog.abox_part());
    EXPECT_FALSE(abox.contains(pred(v, "Ans")));
    EXPECT_FALSE(abox.contains(pred(v, "not_Ans")));
    EXPECT_TRUE(abox.contains(pred(v, "hasChild", 2)));
}

TEST(Signature, EmptyProgram) {
    HornProgram p;
    p.vocab = std::make_shared<Vocabulary>();
    Signature s = signature_of(p);
    EXPECT_TRUE(s.unary.empty());
    EXPECT_TRUE(s.binary.empty());
    EXPECT_TRUE(signature_of(std::vector<DLClause>{}).unary.empty());
}

TEST(Text, NotPrefixOnlyInRendering) {
    Fixture f;
    EXPECT_EQ(pred_text(f.v, f.N("Pretty")), "not_Pretty");
    EXPECT_EQ(pred_text(f.v, f.P("Pretty")), "Pretty");
}
