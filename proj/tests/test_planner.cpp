#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace horndl;
using namespace testutil;

namespace {

CompiledProgram compile_text(const std::string& text, const Options& o) {
    auto prog = build_program(parse_kb_or_throw(text));
    return compile_program(prog, fact_predicates(program_facts(prog)), o);
}

}  // namespace

TEST(NamedOptions, Menu) {
    EXPECT_EQ(option_menu().size(), 9u);
    EXPECT_EQ(named_options("base"), Options{});
    EXPECT_FALSE(named_options("g(n)").ground_optim);
    EXPECT_FALSE(named_options("p(n)").projection);
    EXPECT_FALSE(named_options("f(n)").filtering);
    EXPECT_FALSE(named_options("i(n)").indexing);
    EXPECT_EQ(named_options("o(n)").orphan, OrphanMode::General);
    EXPECT_FALSE(named_options("d(n)").decompose);
    auto pd = named_options("pd(n)");
    EXPECT_FALSE(pd.projection || pd.decompose);
    auto od = named_options("od(n)");
    EXPECT_TRUE(od.orphan == OrphanMode::General && !od.decompose);
    EXPECT_THROW(named_options("x(n)"), std::invalid_argument);
}

TEST(Emit, HappyWithOnlyFiltering) {
    Options o;
    o.ground_optim = o.decompose = o.projection = false;
    auto cp = compile_text(kHappy, o);
    auto ls = lines(emit_readable(cp));
    EXPECT_TRUE(contains(ls, "Happy(A) :- hasChild(A,B), hasChild(B,C), Clever(C), hasChild(B,D), Pretty(D).")) << emit_readable(cp);
    for (const auto& l : ls) EXPECT_EQ(l.find("not_Clever"), std::string::npos) << l;
}

TEST(Emit, IocasteDefault) {
    auto cp = compile_text(kIocaste2, Options{});
    auto text = emit_readable(cp);
    auto ls = lines(text);
    EXPECT_TRUE(contains(ls, "det_Patricide(A) :- loop_member(Patricide(A)), !, fail."));
    EXPECT_TRUE(contains(ls, "det_Patricide(A) :- abox:Patricide(A), !."));
    EXPECT_TRUE(contains(
        ls, "entry_Ans(A) :- ( nonvar(A) -> det_Ans(A) ; setof(A, hasChild(A,B), S), member(A, S), once(det_Ans(A)) )."));
    EXPECT_TRUE(contains(ls, "det_Ans(A) :- hasChild(A,B), anc_push(Ans(A)), ( hasChild(B,C), det_not_Patricide(C) -> true ), "
                             "det_Patricide(B), anc_pop, !."));
}

TEST(Emit, IndexingOffNeverUsesTheInvertedIndex) {
    Options o;
    o.indexing = false;
    auto cp = compile_text(kIocaste2, o);
    EXPECT_EQ(emit_readable(cp).find("idx_"), std::string::npos);
    EXPECT_TRUE(cp.inverted_needed.empty());
}

TEST(Emit, ProjectionOffHasNoSupersets) {
    Options o;
    o.projection = false;
    auto cp = compile_text(kIocaste2, o);
    EXPECT_EQ(emit_readable(cp).find("setof"), std::string::npos);
    for (const auto& [p, c] : cp.preds) EXPECT_FALSE(c.entry.use_superset);
}

TEST(Emit, GroundOptimOffUsesPlainVariant) {
    Options o;
    o.ground_optim = false;
    auto cp = compile_text(kIocaste2, o);
    auto text = emit_readable(cp);
    EXPECT_EQ(text.find("det_"), std::string::npos);
    EXPECT_TRUE(contains(lines(text), "Patricide(A) :- abox:Patricide(A)."));
}

TEST(Compile, EveryRulePredicateIsKnown) {
    auto cp = compile_text(kIocaste2, Options{});
    for (auto p : cp.prog.predicates()) EXPECT_TRUE(cp.known.contains(p));
    EXPECT_TRUE(cp.find(pred(*cp.vocab, "Ans")));
}

TEST(Compile, AllOptionSubsetsCompile) {
    for (const auto& o : option_subsets()) {
        auto cp = compile_text(kHappy, o);
        EXPECT_EQ(cp.opts, o);
        EXPECT_FALSE(emit_readable(cp).empty());
    }
}

TEST(PlanQuery, RendersOrderedBody) {
    auto cp = compile_text(kHappy, Options{});
    ConjQuery q = parse_query("Happy(X), hasChild(X, Y)", *cp.vocab);
    auto items = plan_query(cp, q);
    EXPECT_FALSE(items.empty());
    auto txt = plan_items_text(cp, items);
    EXPECT_NE(txt.find("hasChild(A,B)"), std::string::npos) << txt;
}
