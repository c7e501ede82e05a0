#pragma once

#include <functional>
#include <span>
#include <vector>

#include "horndl/fact_store.hpp"
#include "horndl/horn.hpp"

namespace horndl {

using Tuple = std::vector<SymbolId>;

struct InterpStats {
    std::uint64_t steps = 0;
    std::uint64_t loop = 0;
    std::uint64_t ancres = 0;
    std::uint64_t multi_match = 0;  // ancestor resolutions where more than one ancestor unified
    std::uint64_t raw_solutions = 0;
};

struct InterpOptions {
    std::uint64_t step_limit = 0;  // 0 = unlimited
};

// A value in a solution: a constant, or kUnboundValue.
inline constexpr SymbolId kUnboundValue = 0xFFFFFFFFu;

// Straightforward executor: ancestor list as a linked list, one choice point
// per goal, alternatives tried as equality / loop check / ancestor / facts /
// rules. Facts come from the store, rules from the program's TBox part.
class Interpreter {
public:
    Interpreter(const HornProgram& prog, const FactSource& store, InterpOptions opts = {});

    // Runs the conjunction `goals` over variables 0..num_vars-1 with the given
    // initial ancestors (ground or sharing those variables), newest first.
    // `on_solution` receives one value per variable.
    void interp(const std::vector<Literal>& goals, std::uint32_t num_vars, const std::vector<Literal>& ancestors,
                const std::function<void(std::span<const SymbolId>)>& on_solution);

    const InterpStats& stats() const { return stats_; }

private:
    struct State;
    const HornProgram& prog_;
    const FactSource& store_;
    InterpOptions opts_;
    std::map<PredName, std::vector<std::size_t>> rules_;
    InterpStats stats_;
};

struct RefResult {
    std::vector<Tuple> tuples;  // deduplicated, sorted by constant id
    InterpStats stats;
};

// Every constant the program, the store, or the query mentions, sorted.
std::vector<SymbolId> individuals(const HornProgram& prog, const FactSource& store, const ConjQuery* q = nullptr);

// Throws UnknownPredicate if q uses a predicate that is neither in the program
// signature nor in the store.
RefResult solve_query_ref(const HornProgram& prog, const FactSource& store, const ConjQuery& q, InterpOptions opts = {});

// Expands unbound columns over `universe` and appends the tuples.
void expand_solution(std::span<const SymbolId> row, const std::vector<SymbolId>& universe, std::vector<Tuple>& out);
void sort_unique(std::vector<Tuple>& t);

}  // namespace horndl
