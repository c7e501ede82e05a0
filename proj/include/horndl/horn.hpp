#pragma once

#include <map>
#include <utility>
#include <vector>

#include "horndl/frontend.hpp"
#include "horndl/kb_core.hpp"

namespace horndl {

struct HornClause {
    Literal head;                  // unary or binary, canonical
    std::vector<Literal> body;     // unary, binary, inequality goals
    std::vector<std::string> var_names;
    std::uint32_t source = 0;      // index of the DL clause (or fact) it came from
    std::uint32_t contra = 0;      // which literal of the source became the head

    bool is_fact() const { return body.empty() && head.is_ground(); }
    std::uint32_t num_vars() const { return static_cast<std::uint32_t>(var_names.size()); }
    bool operator==(const HornClause&) const = default;
};

struct HornProgram {
    VocabularyPtr vocab;
    std::vector<HornClause> clauses;

    // Clause indices per head functor, in program order.
    std::map<PredName, std::vector<std::size_t>> by_functor() const;
    HornProgram tbox_part() const;
    HornProgram abox_part() const;
};

HornProgram pdl(const std::vector<DLClause>& clauses, VocabularyPtr vocab);
HornProgram prune_negated_binary_heads(HornProgram p);
HornClause order_binary_first(HornClause c);
HornProgram order_binary_first(HornProgram p);
std::pair<HornProgram, HornProgram> split_parts(const HornProgram& p);
Signature signature_of(const HornProgram& p);

HornClause fact_clause(const Fact& f);
// Ground empty-body clauses as facts, deduplicated, in program order.
std::vector<Fact> program_facts(const HornProgram& p);

// pdl over the TBox (role axioms included) plus the ABox facts, pruned and
// binary-first ordered. This is the program the interpreter runs.
HornProgram build_program(const KnowledgeBase& kb);

std::string render_horn(const Vocabulary& v, const HornClause& c);

}  // namespace horndl
