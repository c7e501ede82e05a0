#include <gtest/gtest.h>

#include <cctype>
#include <functional>
#include <map>
#include <random>

#include "helpers.hpp"

using namespace horndl;
using namespace testutil;

TEST(Parse, IocasteKb) {
    auto r = parse_kb(kIocaste2);
    ASSERT_TRUE(r.kb) << (r.diagnostics.empty() ? "" : r.diagnostics[0].str());
    EXPECT_EQ(r.kb->tbox.size(), 1u);
    EXPECT_EQ(r.kb->abox.size(), 6u);
}

TEST(Parse, EmptyInput) {
    auto r = parse_kb("");
    ASSERT_TRUE(r.kb);
    EXPECT_TRUE(r.kb->tbox.empty());
    EXPECT_TRUE(r.kb->abox.empty());
}

TEST(Parse, NonGroundFactIsRejected) {
    auto r = parse_kb("hasChild(X, o).");
    ASSERT_FALSE(r.kb);
    ASSERT_FALSE(r.diagnostics.empty());
    EXPECT_NE(r.diagnostics[0].message.find("fact not ground"), std::string::npos);
    EXPECT_EQ(r.diagnostics[0].line, 1);
}

TEST(Parse, UnknownDirective) {
    auto r = parse_kb(":- frobnicate(x).");
    ASSERT_FALSE(r.kb);
    EXPECT_NE(r.diagnostics[0].message.find("unknown directive"), std::string::npos);
}

TEST(Parse, FunctionTermsAreReportedAsP1) {
    auto r = parse_kb("C(X) | ~R(X, f(X)).");
    ASSERT_FALSE(r.kb);
    EXPECT_NE(r.diagnostics[0].message.find("p1"), std::string::npos);
}

TEST(Parse, ReservedNames) {
    EXPECT_FALSE(parse_kb("not_C(a).").kb);
    EXPECT_FALSE(parse_kb("base_r(a, b).").kb);
    EXPECT_FALSE(parse_kb("some(a).").kb);
}

TEST(Parse, ErrorsCarryLineNumbers) {
    auto r = parse_kb("C(a).\nD(b).\nE(X).\n");
    ASSERT_FALSE(r.kb);
    EXPECT_EQ(r.diagnostics[0].line, 3);
}

TEST(Parse, NegatedRoleAssertionRejected) {
    EXPECT_FALSE(parse_kb("~r(a, b).").kb);
}

TEST(Parse, PositiveEqualityBodyGoalsRejected) {
    // ~(X = Y) in a clause would become a positive equality goal
    EXPECT_FALSE(parse_kb("C(X) | ~r(X,Y) | ~(X = Y).").kb);
}

TEST(Parse, RoleAxiomsAndQueries) {
    auto r = parse_kb("subrole(inv(hasChild), hasParent).\n:- query(Ans(X), hasChild(X, Y)).\n");
    ASSERT_TRUE(r.kb) << r.diagnostics[0].str();
    ASSERT_EQ(r.kb->role_axioms.size(), 1u);
    EXPECT_TRUE(r.kb->role_axioms[0].sub.inverse);
    EXPECT_FALSE(r.kb->role_axioms[0].super.inverse);
    ASSERT_EQ(r.kb->declared_queries.size(), 1u);
    EXPECT_EQ(r.kb->declared_queries[0].var_names.size(), 2u);
}

TEST(Parse, RawClauseWithEquality) {
    auto r = parse_kb("Happy(X) | ~hasChild(X,Y1) | ~hasChild(X,Y2) | Y1 = Y2.");
    ASSERT_TRUE(r.kb) << r.diagnostics[0].str();
    ASSERT_EQ(r.kb->tbox.size(), 1u);
    EXPECT_EQ(r.kb->tbox[0].literals.size(), 4u);
}

TEST(Normalize, IocasteAxiom) {
    auto kb = parse_kb_or_throw(kIocaste2);
    EXPECT_EQ(render_clause(*kb.vocab, kb.tbox[0]),
              "Ans(X) | ~hasChild(X, Y) | ~Patricide(Y) | ~hasChild(Y, Z) | Patricide(Z).");
}

TEST(Normalize, HappyAxiom) {
    auto kb = parse_kb_or_throw(kHappy);
    const auto& c = kb.tbox[0];
    ASSERT_EQ(c.literals.size(), 6u);
    EXPECT_TRUE(validate_dl_clause(c).ok());
    int neg_roles = 0;
    for (const auto& l : c.literals) neg_roles += l.is_binary() && l.pred.negated;
    EXPECT_EQ(neg_roles, 3);
}

TEST(Normalize, AtomicInclusion) {
    auto kb = parse_kb_or_throw("Clever => Successful.");
    ASSERT_EQ(kb.tbox[0].literals.size(), 2u);
    EXPECT_EQ(render_clause(*kb.vocab, kb.tbox[0]), "Successful(X) | ~Clever(X).");
}

// Checks that the normalised clause and the axiom agree on every
// interpretation over a small domain.
namespace {

struct Interp {
    int n;
    std::map<SymbolId, std::vector<bool>> un;
    std::map<SymbolId, std::vector<bool>> bin;
};

bool holds_concept(const Concept& c, int x, const Interp& I) {
    switch (c.kind) {
        case Concept::Kind::Atomic: return I.un.at(c.name)[x];
        case Concept::Kind::NegAtomic: return !I.un.at(c.name)[x];
        case Concept::Kind::And:
            for (const auto& k : c.kids)
                if (!holds_concept(k, x, I)) return false;
            return true;
        case Concept::Kind::Exists:
            for (int y = 0; y < I.n; ++y) {
                bool edge = c.role.inverse ? I.bin.at(c.role.role)[y * I.n + x] : I.bin.at(c.role.role)[x * I.n + y];
                if (edge && holds_concept(c.kids[0], y, I)) return true;
            }
            return false;
    }
    return false;
}

bool holds_clause(const DLClause& c, const Interp& I) {
    std::vector<int> a(c.var_names.size(), 0);
    std::function<bool(std::size_t)> all = [&](std::size_t k) -> bool {
        if (k < a.size()) {
            for (int d = 0; d < I.n; ++d) {
                a[k] = d;
                if (!all(k + 1)) return false;
            }
            return true;
        }
        for (const auto& l : c.literals) {
            bool v;
            if (l.is_equality()) v = (a[l.a1.id] == a[l.a2.id]) == l.positive;
            else if (l.is_unary()) v = I.un.at(l.pred.base)[a[l.a1.id]] != l.pred.negated;
            else v = I.bin.at(l.pred.base)[a[l.a1.id] * I.n + a[l.a2.id]] != l.pred.negated;
            if (v) return true;
        }
        return false;
    };
    return all(0);
}

// An independent reading of the axiom sugar, used only to evaluate the
// left-hand side directly.
struct SugarReader {
    const std::string& text;
    const Vocabulary& v;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    }
    void expect(char c) {
        skip();
        ASSERT_EQ(text[pos], c);
        ++pos;
    }
    std::string word() {
        skip();
        std::string w;
        while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) w += text[pos++];
        return w;
    }
    Concept primary() {
        skip();
        Concept c;
        if (text[pos] == '~') {
            ++pos;
            c.kind = Concept::Kind::NegAtomic;
            c.name = *v.preds.find(word());
            return c;
        }
        std::string w = word();
        if (w != "some") {
            c.kind = Concept::Kind::Atomic;
            c.name = *v.preds.find(w);
            return c;
        }
        expect('(');
        std::string r = word();
        bool inv = r == "inv";
        if (inv) {
            expect('(');
            r = word();
            expect(')');
        }
        expect(',');
        c.kind = Concept::Kind::Exists;
        c.role = {*v.preds.find(r), inv};
        c.kids.push_back(conj());
        expect(')');
        return c;
    }
    Concept conj() {
        Concept a;
        a.kind = Concept::Kind::And;
        a.kids.push_back(primary());
        for (skip(); pos < text.size() && text[pos] == '&'; skip()) {
            ++pos;
            a.kids.push_back(primary());
        }
        return a.kids.size() == 1 ? a.kids[0] : a;
    }
};

}  // namespace

TEST(Normalize, EquivalentToAxiomOnSmallModels) {
    std::mt19937_64 rng(5);
    const std::string axioms[] = {
        "some(r, A & some(s, ~B)) => C.",
        "some(inv(r), A) & B => ~C.",
        "some(r, some(r, some(s, A))) => B.",
        "A & ~B & some(t, A & C) => A.",
        "some(s, some(inv(t), B) & some(r, ~C)) => ~A.",
    };
    for (const auto& ax : axioms) {
        auto kb = parse_kb_or_throw(ax + "\nA(a). B(a). C(a). r(a,a). s(a,a). t(a,a).\n");
        ASSERT_EQ(kb.tbox.size(), 1u);
        const auto& v = *kb.vocab;
        SugarReader rd{ax, v};
        Concept lhs = rd.conj();
        std::string rhs = ax.substr(ax.find("=>") + 2);
        bool rneg = rhs.find('~') != std::string::npos;
        std::string rname;
        for (char ch : rhs)
            if (std::isalpha(static_cast<unsigned char>(ch))) rname += ch;
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 200; ++trial) {
                Interp I{n, {}, {}};
                for (const char* u : {"A", "B", "C"}) {
                    std::vector<bool> bits(n);
                    for (int i = 0; i < n; ++i) bits[i] = rng() & 1;
                    I.un[*v.preds.find(u)] = bits;
                }
                for (const char* b : {"r", "s", "t"}) {
                    std::vector<bool> bits(n * n);
                    for (int i = 0; i < n * n; ++i) bits[i] = (rng() % 3) == 0;
                    I.bin[*v.preds.find(b)] = bits;
                }
                bool axiom_holds = true;
                for (int x = 0; x < n; ++x) {
                    bool rhs_true = I.un.at(*v.preds.find(rname))[x] != rneg;
                    if (holds_concept(lhs, x, I) && !rhs_true) axiom_holds = false;
                }
                EXPECT_EQ(axiom_holds, holds_clause(kb.tbox[0], I)) << ax;
            }
        }
    }
}

TEST(RoundTrip, GeneratedKbs) {
    for (const std::string& text : {iocaste_clean(3), iocaste_noisy(2, 10, 20, 5), happy_kb(), happy_large(4),
                                    alcoholic(3), std::string("subrole(inv(r), s).\nC(X) | ~r(X,Y) | ~r(X,Z) | Y = Z.\n")}) {
        auto a = parse_kb_or_throw(text);
        auto b = parse_kb_or_throw(render_kb(a));
        EXPECT_TRUE(same_kb(a, b)) << text;
    }
}

TEST(Csv, Ingest) {
    Vocabulary v;
    auto facts = ingest_abox_csv({{"hasChild.csv", "hasChild,pos,2\ni,o\ni,p\no,p\np,t\n"}}, v);
    EXPECT_EQ(facts.size(), 4u);
    auto neg = ingest_abox_csv({{"np.csv", "Patricide,neg,1\nt\n"}}, v);
    ASSERT_EQ(neg.size(), 1u);
    EXPECT_TRUE(neg[0].pred.negated);
}

TEST(Csv, EmptyFileAndDuplicates) {
    Vocabulary v;
    EXPECT_TRUE(ingest_abox_csv({{"e.csv", ""}}, v).empty());
    EXPECT_TRUE(ingest_abox_csv({{"h.csv", "C,pos,1\n"}}, v).empty());
    EXPECT_EQ(ingest_abox_csv({{"d.csv", "C,pos,1\na\na\n"}}, v).size(), 1u);
}

TEST(Csv, Errors) {
    Vocabulary v;
    EXPECT_THROW(ingest_abox_csv({{"x.csv", "r,pos,2\na\n"}}, v), KbError);
    EXPECT_THROW(ingest_abox_csv({{"x.csv", "C,pos,1\nHello World\n"}}, v), KbError);
    EXPECT_NO_THROW(ingest_abox_csv({{"x.csv", "C,pos,1\n'Hello World'\n"}}, v));
    EXPECT_THROW(ingest_abox_csv({{"x.csv", "r,neg,2\na,b\n"}}, v), KbError);
}

TEST(Query, BothNegationSpellings) {
    auto kb = parse_kb_or_throw(kIocaste2);
    auto a = parse_query("~Patricide(X)", *kb.vocab);
    auto b = parse_query("not_Patricide(X)", *kb.vocab);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.goals[0].pred.negated);
}

TEST(Query, ColumnsFollowFirstOccurrence) {
    auto kb = parse_kb_or_throw(kIocaste2);
    auto q = parse_query("hasChild(Y, X), Patricide(X)", *kb.vocab);
    ASSERT_EQ(q.var_names.size(), 2u);
    EXPECT_EQ(q.var_names[0], "Y");
    EXPECT_EQ(q.var_names[1], "X");
}

TEST(Query, NegatedRoleRejected) {
    auto kb = parse_kb_or_throw(kIocaste2);
    EXPECT_THROW(parse_query("~hasChild(X, Y)", *kb.vocab), KbError);
}
