#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace horndl;
using namespace testutil;

namespace {

struct SmallPattern {
    KnowledgeBase kb = parse_kb_or_throw(kIocaste2);
    const Vocabulary& v = *kb.vocab;
    PredName hc = pred(v, "hasChild", 2);
    MemoryStore store = MemoryStore::build(kb.abox, {hc});
    std::vector<std::string> names(std::span<const SymbolId> s) const {
        std::vector<std::string> out;
        for (auto c : s) out.push_back(v.consts.name(c));
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<std::string> names(const std::vector<SymbolId>& s) const { return names(std::span<const SymbolId>(s)); }
};

}  // namespace

TEST(MemoryStore, ForwardIndex) {
    SmallPattern f;
    auto r = *f.store.resolve(f.hc);
    EXPECT_EQ(f.names(f.store.successors(r, cst(f.v, "i"))), (std::vector<std::string>{"o", "p"}));
    EXPECT_EQ(f.names(f.store.successors(r, cst(f.v, "o"))), (std::vector<std::string>{"p"}));
    EXPECT_EQ(f.names(f.store.successors(r, cst(f.v, "p"))), (std::vector<std::string>{"t"}));
    EXPECT_TRUE(f.store.successors(r, cst(f.v, "t")).empty());
}

TEST(MemoryStore, InvertedIndex) {
    SmallPattern f;
    auto r = *f.store.resolve(f.hc);
    ASSERT_TRUE(f.store.has_inverted(r));
    EXPECT_EQ(f.names(f.store.predecessors(r, cst(f.v, "o"))), (std::vector<std::string>{"i"}));
    EXPECT_EQ(f.names(f.store.predecessors(r, cst(f.v, "p"))), (std::vector<std::string>{"i", "o"}));
    EXPECT_EQ(f.names(f.store.predecessors(r, cst(f.v, "t"))), (std::vector<std::string>{"p"}));
}

TEST(MemoryStore, InvertedOnlyWhenRequested) {
    auto kb = parse_kb_or_throw(kIocaste2);
    auto s = MemoryStore::build(kb.abox);
    EXPECT_FALSE(s.has_inverted(*s.resolve(pred(*kb.vocab, "hasChild", 2))));
}

TEST(MemoryStore, Projections) {
    SmallPattern f;
    auto r = *f.store.resolve(f.hc);
    EXPECT_EQ(f.names(f.store.project(r, 1)), (std::vector<std::string>{"i", "o", "p"}));
    EXPECT_EQ(f.names(f.store.project(r, 2)), (std::vector<std::string>{"o", "p", "t"}));
}

TEST(MemoryStore, UnaryFactsAndPolarity) {
    SmallPattern f;
    auto pat = *f.store.resolve(pred(f.v, "Patricide"));
    auto npat = *f.store.resolve(pred(f.v, "not_Patricide"));
    EXPECT_TRUE(f.store.unary_contains(pat, cst(f.v, "o")));
    EXPECT_FALSE(f.store.unary_contains(pat, cst(f.v, "t")));
    EXPECT_TRUE(f.store.unary_contains(npat, cst(f.v, "t")));
    EXPECT_EQ(f.store.unary_scan(pat).size(), 1u);
}

TEST(MemoryStore, UniverseAndUnknown) {
    SmallPattern f;
    EXPECT_EQ(f.names(f.store.universe()), (std::vector<std::string>{"i", "o", "p", "t"}));
    EXPECT_FALSE(f.store.resolve(pred(f.v, "Ans")));
    EXPECT_EQ(f.store.fact_count(), 6u);
}

TEST(MemoryStore, Empty) {
    auto s = MemoryStore::build({});
    EXPECT_EQ(s.fact_count(), 0u);
    EXPECT_TRUE(s.universe().empty());
}

TEST(MemoryStore, DuplicatesCollapse) {
    auto kb = parse_kb_or_throw("r(a, b). r(a, b). C(a). C(a).");
    auto s = MemoryStore::build(kb.abox);
    EXPECT_EQ(s.fact_count(), 2u);
    auto r = *s.resolve(pred(*kb.vocab, "r", 2));
    EXPECT_EQ(s.successors(r, cst(*kb.vocab, "a")).size(), 1u);
}

TEST(MemoryStore, RandomIndexesAgreeWithScan) {
    std::mt19937 rng(17);
    for (int round = 0; round < 50; ++round) {
        Vocabulary v;
        PredName r{v.preds.intern("r"), false, 2};
        std::vector<Fact> facts;
        int n = 1 + rng() % 12;
        for (int i = 0; i < n; ++i) v.consts.intern("c" + std::to_string(i));
        int m = rng() % 40;
        for (int i = 0; i < m; ++i) facts.push_back({r, SymbolId(rng() % n), SymbolId(rng() % n)});
        auto s = MemoryStore::build(facts, {r});
        auto rid = s.resolve(r);
        if (!rid) {
            EXPECT_EQ(m, 0);
            continue;
        }
        auto scan = s.binary_scan(*rid);
        EXPECT_TRUE(std::is_sorted(scan.begin(), scan.end()));
        EXPECT_EQ(std::adjacent_find(scan.begin(), scan.end()), scan.end());
        for (int b = 0; b < n; ++b) {
            std::vector<SymbolId> by_scan;
            for (auto [x, y] : scan)
                if (y == SymbolId(b)) by_scan.push_back(x);
            auto idx = s.predecessors(*rid, b);
            EXPECT_EQ(std::vector<SymbolId>(idx.begin(), idx.end()), by_scan);
        }
        for (int a = 0; a < n; ++a) {
            std::vector<SymbolId> by_scan;
            for (auto [x, y] : scan)
                if (x == SymbolId(a)) by_scan.push_back(y);
            auto fwd = s.successors(*rid, a);
            EXPECT_EQ(std::vector<SymbolId>(fwd.begin(), fwd.end()), by_scan);
            for (int b = 0; b < n; ++b)
                EXPECT_EQ(s.binary_contains(*rid, a, b), std::binary_search(by_scan.begin(), by_scan.end(), SymbolId(b)));
        }
        for (int k : {1, 2}) {
            std::set<SymbolId> proj;
            for (auto [x, y] : scan) proj.insert(k == 1 ? x : y);
            EXPECT_EQ(s.project(*rid, k), std::vector<SymbolId>(proj.begin(), proj.end()));
        }
    }
}
