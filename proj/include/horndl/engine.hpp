#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "horndl/fact_store.hpp"
#include "horndl/interpreter.hpp"
#include "horndl/planner.hpp"

namespace horndl {

// A machine value: a constant id with the top bit set, or a cell index.
using Cell = std::uint32_t;
inline constexpr Cell kConstBit = 0x80000000u;

// Open goals relevant to loop checks or ancestor resolution. Ground entries
// are counted in a hash table (hashing on) or found by scanning the stack
// (hashing off); entries holding an unbound variable sit on a side list and
// are dereferenced at lookup time.
class AncestorContext {
public:
    struct Entry {
        PredName pred;
        Cell v1 = 0, v2 = 0;
        bool hashed = false;
    };

    AncestorContext(bool hashing, const std::vector<Cell>* cells) : hashing_(hashing), cells_(cells) {}

    void push(PredName p, Cell v1, Cell v2);
    Entry pop();
    void restore(const Entry& e);

    // An entry identical to p(v1, v2).
    bool contains(PredName p, Cell v1, Cell v2) const;
    // Values of unary entries on p that unify with v, newest first.
    void matches(PredName p, Cell v, std::vector<Cell>& out) const;

    std::size_t size() const { return stack_.size(); }

private:
    struct Key {
        std::uint64_t pred;
        Cell v1, v2;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = k.pred * 0x9E3779B97F4A7C15ull;
            h ^= (std::uint64_t(k.v1) << 32 | k.v2) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };
    Cell deref(Cell v) const;
    bool same(const Entry& e, PredName p, Cell v1, Cell v2) const;

    bool hashing_;
    const std::vector<Cell>* cells_;
    std::vector<Entry> stack_;
    std::vector<std::uint32_t> side_;  // stack positions of unhashed entries
    std::unordered_map<Key, std::uint32_t, KeyHash> counts_;
};

struct Stats {
    std::uint64_t loop = 0;
    std::uint64_t ancres = 0;
    std::uint64_t orphan_ancres = 0;
    std::uint64_t multi_match = 0;  // ancestor lookups where more than one entry applied
    std::uint64_t steps = 0;
    std::uint64_t raw_solutions = 0;
    double runtime_ms = 0;
};

struct EngineOptions {
    std::uint64_t step_limit = 0;  // 0 = unlimited
};

// HORNDL_STEP_LIMIT, or 0 when unset.
std::uint64_t step_limit_from_env();

struct QueryResult {
    std::vector<Tuple> tuples;  // one column per query variable, sorted, distinct
    Stats stats;
};

// Throws UnknownPredicate for predicates neither compiled nor in the store.
QueryResult run_query(const CompiledProgram& cp, const FactSource& store, const ConjQuery& q, EngineOptions eo = {});

std::vector<SymbolId> enumerate_superset(const CompiledProgram& cp, const FactSource& store, const SupersetExpr& e);

// loop, ancres, orphancres, runtime_ms as key=value lines.
std::string stats_text(const Stats& s);

}  // namespace horndl
