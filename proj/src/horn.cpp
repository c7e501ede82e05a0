#include "horndl/horn.hpp"

#include <algorithm>
#include <set>

namespace horndl {

std::map<PredName, std::vector<std::size_t>> HornProgram::by_functor() const {
    std::map<PredName, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < clauses.size(); ++i) out[clauses[i].head.pred].push_back(i);
    return out;
}

HornProgram HornProgram::tbox_part() const { return split_parts(*this).first; }
HornProgram HornProgram::abox_part() const { return split_parts(*this).second; }

HornProgram pdl(const std::vector<DLClause>& clauses, VocabularyPtr vocab) {
    HornProgram p;
    p.vocab = std::move(vocab);
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
        // a clause is a set: repeated literals contribute once
        std::vector<Literal> lits;
        for (const auto& l : clauses[ci].literals)
            if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
        const auto& c = clauses[ci];
        for (std::size_t h = 0; h < lits.size(); ++h) {
            if (lits[h].is_equality()) continue;
            HornClause hc;
            hc.head = canonical_literal(lits[h]);
            for (std::size_t j = 0; j < lits.size(); ++j)
                if (j != h) hc.body.push_back(canonical_literal(lits[j], true));
            hc.var_names = c.var_names;
            hc.source = static_cast<std::uint32_t>(ci);
            hc.contra = static_cast<std::uint32_t>(h);
            p.clauses.push_back(std::move(hc));
        }
    }
    return p;
}

HornProgram prune_negated_binary_heads(HornProgram p) {
    std::erase_if(p.clauses, [](const HornClause& c) { return c.head.is_binary() && c.head.pred.negated; });
    return p;
}

HornClause order_binary_first(HornClause c) {
    std::stable_partition(c.body.begin(), c.body.end(), [](const Literal& l) { return l.is_binary(); });
    return c;
}

HornProgram order_binary_first(HornProgram p) {
    for (auto& c : p.clauses) c = order_binary_first(std::move(c));
    return p;
}

std::pair<HornProgram, HornProgram> split_parts(const HornProgram& p) {
    HornProgram t, a;
    t.vocab = a.vocab = p.vocab;
    for (const auto& c : p.clauses) (c.is_fact() ? a : t).clauses.push_back(c);
    return {t, a};
}

Signature signature_of(const HornProgram& p) {
    Signature s;
    auto add = [&](const Literal& l) {
        if (l.is_unary()) s.unary.insert(l.pred);
        else if (l.is_binary()) s.binary.insert(l.pred);
    };
    for (const auto& c : p.clauses) {
        add(c.head);
        for (const auto& g : c.body) add(g);
    }
    return s;
}

HornClause fact_clause(const Fact& f) {
    HornClause c;
    c.head = f.pred.arity == 1 ? Literal::unary(f.pred, Term::constant(f.a1))
                               : Literal::binary(f.pred, Term::constant(f.a1), Term::constant(f.a2));
    return c;
}

std::vector<Fact> program_facts(const HornProgram& p) {
    std::vector<Fact> out;
    std::set<Fact> seen;
    for (const auto& c : p.clauses) {
        if (!c.is_fact()) continue;
        Fact f{c.head.pred, c.head.a1.id, c.head.is_binary() ? c.head.a2.id : 0};
        if (seen.insert(f).second) out.push_back(f);
    }
    return out;
}

HornProgram build_program(const KnowledgeBase& kb) {
    HornProgram p = pdl(all_dl_clauses(kb), kb.vocab);
    auto n = static_cast<std::uint32_t>(kb.tbox.size() + kb.role_axioms.size());
    for (std::size_t i = 0; i < kb.abox.size(); ++i) {
        HornClause c = fact_clause(kb.abox[i]);
        c.source = n + static_cast<std::uint32_t>(i);
        p.clauses.push_back(std::move(c));
    }
    return order_binary_first(prune_negated_binary_heads(std::move(p)));
}

std::string render_horn(const Vocabulary& v, const HornClause& c) {
    std::string s = literal_text(v, c.head, &c.var_names);
    for (std::size_t i = 0; i < c.body.size(); ++i)
        s += (i ? ", " : " :- ") + literal_text(v, c.body[i], &c.var_names);
    return s + ".";
}

}  // namespace horndl
