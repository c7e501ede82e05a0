#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "horndl/horn.hpp"

namespace horndl {

// F3 link: the predicate succeeds on facts of `source`, arguments swapped if set.
struct AboxLink {
    PredName source;
    bool swapped = false;
    auto operator<=>(const AboxLink&) const = default;
};

// The TBox rules plus, per predicate, the fact relations it reads directly.
struct RuleProgram {
    VocabularyPtr vocab;
    std::vector<HornClause> rules;
    std::map<PredName, std::vector<AboxLink>> links;

    std::set<PredName> predicates() const;  // heads, body goals and link owners
};

// Every predicate with facts gets a link to itself.
RuleProgram make_rule_program(const HornProgram& p, const std::set<PredName>& fact_preds);
std::set<PredName> fact_predicates(const std::vector<Fact>& facts);

class CallGraph {
public:
    static CallGraph build(const RuleProgram& p);

    const std::vector<PredName>& nodes() const { return nodes_; }
    bool has(PredName p) const { return index_.count(p) > 0; }
    bool directly_calls(PredName a, PredName b) const;
    // b reachable from a through one or more calls
    bool reaches(PredName a, PredName b) const;
    // b reachable from, or identical to, some predicate invoked by clause c
    bool clause_reaches(const HornClause& c, PredName b) const;
    std::vector<PredName> callees(PredName a) const;

private:
    std::vector<PredName> nodes_;
    std::map<PredName, std::size_t> index_;
    std::vector<std::vector<std::size_t>> calls_;
    std::vector<std::vector<char>> reach_;
};

enum class PredClass : std::uint8_t { Atomic, Query, Orphan, General };
const char* class_name(PredClass c);

struct PredInfo {
    PredClass cls = PredClass::Atomic;
    bool recursive = false;
    bool anr = false;
    bool dnr = false;
    bool invoked = false;
    std::size_t rules = 0;
    std::size_t links = 0;
};

struct Classification {
    std::map<PredName, PredInfo> info;
    PredClass class_of(PredName p) const;
    const PredInfo* find(PredName p) const;
};

Classification classify(const RuleProgram& p, const CallGraph& g);
Classification classify(const HornProgram& p);

struct FilterResult {
    RuleProgram prog;
    std::vector<HornClause> removed;
    int rounds = 0;
};

// Removes false-orphan, two-orphan and contra-two-orphan clauses until none is left.
FilterResult filter(RuleProgram p);
HornProgram filter(const HornProgram& p);

struct Analysis {
    RuleProgram prog;
    CallGraph graph;
    Classification cls;
    std::vector<HornClause> removed;
};

// Filtering (optional) and classification as one fixpoint.
Analysis analyze(RuleProgram p, bool filtering);

// ---- ordering and decomposition ----

enum class OrphanMode : std::uint8_t { First, General };

using VarSet = std::set<std::uint32_t>;

struct RankContext {
    const Classification* cls = nullptr;
    OrphanMode orphan = OrphanMode::First;
    std::optional<std::uint32_t> head_var;
};

// Goal categories 1..10 of the base ranking; 11 marks a non-ground inequality.
int rank_goal(const Literal& g, const VarSet& bound, const RankContext& ctx);
bool is_orphan_goal(const Literal& g, const RankContext& ctx);

struct BodyItem {
    bool component = false;
    std::size_t goal = 0;         // index into the source body
    std::vector<BodyItem> kids;   // component contents
    bool prune = false;           // first solution only
};
using BodyTree = std::vector<BodyItem>;

std::vector<std::size_t> order_body(const std::vector<Literal>& body, VarSet bound, const RankContext& ctx);
// `protected_vars` are variables whose values matter after the body (head
// variable, query answers); a component holding one of them unbound is not pruned.
BodyTree decompose(const std::vector<Literal>& body, VarSet bound, const VarSet& protected_vars, const RankContext& ctx,
                   bool enabled = true);
std::vector<std::size_t> flatten(const BodyTree& t);

// ---- projection and minisets ----

struct ProjAtom {
    enum class Kind : std::uint8_t { Const, Abox, Unary, First, Second, Diag };
    Kind kind = Kind::Unary;
    PredName pred;
    SymbolId constant = 0;  // Const only
    auto operator<=>(const ProjAtom&) const = default;
};
using ProjConj = std::vector<ProjAtom>;  // sorted, distinct

struct SupersetExpr {
    bool all = false;
    std::vector<ProjConj> disjuncts;
    bool operator==(const SupersetExpr&) const = default;
};

struct ProjectedLabel {
    enum class Kind : std::uint8_t { Set, Functor, All };
    Kind kind = Kind::Set;
    ProjConj conj;   // Set
    PredName functor;  // Functor
};

ProjectedLabel projected_label(const Vocabulary& v, const HornClause& c, const Classification& cls, const CallGraph& g);
ProjectedLabel link_label(PredName owner, const AboxLink& l);

struct MinisetGraph {
    struct Node {
        PredName owner;
        ProjectedLabel label;
        int rule = -1;  // index into the rule program, -1 for a link
    };
    std::vector<Node> clause_nodes;
    std::map<PredName, std::vector<std::size_t>> pred_clauses;  // unary predicates only
};

MinisetGraph build_miniset_graph(const RuleProgram& p, const Classification& cls, const CallGraph& g);
SupersetExpr miniset(PredName p, const MinisetGraph& g);
void simplify(SupersetExpr& e);

// ---- role axioms ----

struct RoleRefV {
    SymbolId role = 0;
    bool inverse = false;
    auto operator<=>(const RoleRefV&) const = default;
};

struct RolePlan {
    std::vector<std::pair<RoleRefV, RoleRefV>> axioms;  // sub, super
    std::map<SymbolId, SymbolId> repr;                  // atomic role -> representative
    std::map<SymbolId, bool> same_side;                 // role lies in the representative's component
    std::set<SymbolId> symmetric;                       // representatives of self-inverse classes
    std::vector<std::vector<RoleRefV>> components;      // SCCs of the role dependency graph
};

struct RoleTransformResult {
    RuleProgram prog;
    RolePlan plan;
};

// Role axioms are read off clauses S(X,Y) :- R(X,Y) and S(X,Y) :- R(Y,X).
RoleTransformResult transform_roles(const RuleProgram& p);

// ---- debug dumps ----

std::string dump_call_graph(const Vocabulary& v, const CallGraph& g);
std::string dump_classification(const Vocabulary& v, const Classification& c);
std::string dump_miniset_graph(const Vocabulary& v, const MinisetGraph& g);
std::string superset_text(const Vocabulary& v, const SupersetExpr& e);
std::string proj_atom_text(const Vocabulary& v, const ProjAtom& a);

}  // namespace horndl
