#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "horndl/optimizer.hpp"

namespace horndl {

struct Options {
    bool decompose = true;
    bool indexing = true;
    bool projection = true;
    bool filtering = true;
    bool ground_optim = true;
    OrphanMode orphan = OrphanMode::First;
    bool hashing = true;

    bool operator==(const Options&) const = default;
};

// Named settings: base, g(n), p(n), f(n), i(n), o(n), d(n), pd(n), od(n).
Options named_options(const std::string& name);
const std::vector<std::string>& option_menu();
std::string options_text(const Options& o);

// Det: head argument known to be bound. Choice: decided at run time.
// Plain: ground-goal optimisation off. Entry: called from a query.
enum class CallMode : std::uint8_t { Det, Choice, Plain, Entry };

struct PlanItem {
    enum class Kind : std::uint8_t {
        FactUnary,
        FactBinary,
        Call,
        Orphan,       // succeeds only against not_O on the ancestor context
        NonIdentity,
        Component,
        LoopPush,
        LoopPop,
        AncPush,
        AncPop,
    };
    Kind kind = Kind::Call;
    PredName pred;
    Term a1, a2;
    CallMode mode = CallMode::Choice;
    bool index = false;  // FactBinary: the inverted index may serve second-argument lookups
    std::uint8_t bound = 0;  // arguments known bound at compile time: bit 0 first, bit 1 second
    bool prune = false;  // Component
    std::vector<PlanItem> kids;
};

struct PlanClause {
    Literal head;
    std::vector<std::string> var_names;
    std::uint32_t num_vars = 0;
    std::vector<PlanItem> body;
    bool det_cut = false;
    int rule = -1;  // index into the rule program
};

struct VariantPlan {
    bool present = false;
    bool loop_guard = false;  // F1
    bool anc_guard = false;   // F2
    bool det = false;         // success of any alternative prunes the rest
    std::vector<PlanClause> clauses;
};

struct EntryPlan {
    enum class Kind : std::uint8_t { Dispatch, Lookup };
    Kind kind = Kind::Dispatch;
    bool use_superset = false;
    SupersetExpr superset;
};

struct CompiledPredicate {
    PredName pred;
    PredClass cls = PredClass::General;
    PredInfo info;
    std::vector<AboxLink> links;  // F3
    VariantPlan det, nondet, plain;
    EntryPlan entry;
};

struct CompiledProgram {
    VocabularyPtr vocab;
    Options opts;
    RuleProgram prog;  // after role rewriting and filtering
    CallGraph graph;
    Classification cls;
    RolePlan roles;
    MinisetGraph minisets;
    std::vector<HornClause> removed;
    std::map<PredName, CompiledPredicate> preds;
    std::set<PredName> inverted_needed;  // store relations read by second argument
    std::vector<SymbolId> constants;     // constants mentioned by the rules, sorted
    std::set<PredName> known;            // every predicate a query may name

    const CompiledPredicate* find(PredName p) const;
};

// Facts of `prog` and every relation in `fact_preds` are read from the store.
CompiledProgram compile_program(const HornProgram& prog, const std::set<PredName>& fact_preds, const Options& opts);

// Orders and lowers a conjunctive query body; all query variables are protected.
std::vector<PlanItem> plan_query(const CompiledProgram& cp, const ConjQuery& q);

std::string emit_readable(const CompiledProgram& cp);
// Variables are named A, B, ... by first occurrence.
std::string plan_items_text(const CompiledProgram& cp, const std::vector<PlanItem>& items);

}  // namespace horndl
