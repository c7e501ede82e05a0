#pragma once

#include <map>
#include <random>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "horndl/frontend.hpp"
#include "horndl/interpreter.hpp"

// Brute-force reference semantics: ground every clause over the named
// individuals (unique names, no function symbols) and decide entailment by
// propositional satisfiability.
namespace oracle {

using horndl::KnowledgeBase;
using horndl::Literal;
using horndl::Tuple;

class Grounding {
public:
    explicit Grounding(const KnowledgeBase& kb, const std::vector<horndl::SymbolId>& extra_consts = {});

    bool consistent();
    // KB entails the ground literal (unary or binary, either polarity).
    bool entails(const Literal& ground);
    // All tuples over the individuals, one column per query variable, sorted.
    std::vector<Tuple> answers(const horndl::ConjQuery& q);

    const std::vector<horndl::SymbolId>& individuals() const { return consts_; }

private:
    int atom(horndl::PredName p, horndl::SymbolId a, horndl::SymbolId b);
    int lit(const Literal& l);
    bool sat(std::vector<int> assumptions);

    std::vector<horndl::SymbolId> consts_;
    std::vector<std::vector<int>> clauses_;
    std::map<std::tuple<horndl::SymbolId, int, horndl::SymbolId, horndl::SymbolId>, int> atoms_;
    std::map<std::pair<int, bool>, bool> memo_;
    int consistent_ = -1;
};

struct RandomKbParams {
    int max_clauses = 5;
    int unary_preds = 4;
    int binary_preds = 2;
    int individuals = 6;
    int max_facts = 10;
};

// Text of a random KB built from the supported axiom shapes. May be inconsistent.
std::string random_kb_text(std::mt19937_64& rng, const RandomKbParams& p = {});

}  // namespace oracle
