#include "horndl/kb_core.hpp"

#include <algorithm>
#include <cctype>

namespace horndl {

SymbolId SymbolTable::intern(std::string_view s) {
    if (auto it = ids_.find(s); it != ids_.end()) return it->second;
    auto id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(s);
    ids_.emplace(std::string(s), id);
    return id;
}

std::optional<SymbolId> SymbolTable::find(std::string_view s) const {
    if (auto it = ids_.find(s); it != ids_.end()) return it->second;
    return std::nullopt;
}

bool Literal::is_ground() const {
    if (a1.is_var()) return false;
    return kind == Kind::Unary || a2.is_const();
}

void Literal::collect_vars(std::vector<std::uint32_t>& out) const {
    auto add = [&](Term t) {
        if (t.is_var() && std::find(out.begin(), out.end(), t.id) == out.end()) out.push_back(t.id);
    };
    add(a1);
    if (kind != Kind::Unary) add(a2);
}

bool Literal::has_var(std::uint32_t v) const {
    if (a1.is_var() && a1.id == v) return true;
    return kind != Kind::Unary && a2.is_var() && a2.id == v;
}

bool ValidationReport::violates(int p) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.property == p; });
}

namespace {

std::string var_label(const DLClause& c, std::uint32_t v) {
    if (v < c.var_names.size()) return c.var_names[v];
    return "_V" + std::to_string(v);
}

std::string lit_label(const DLClause& c, const Literal& l, const Vocabulary* vocab) {
    if (vocab) return literal_text(*vocab, l, &c.var_names);
    return "literal";
}

}  // namespace

ValidationReport validate_dl_clause(const DLClause& c, const Vocabulary* vocab) {
    ValidationReport r;
    std::vector<std::uint32_t> vars;
    bool has_binary = false, has_const = false, has_eq = false;
    for (const auto& l : c.literals) {
        l.collect_vars(vars);
        has_binary |= l.is_binary();
        has_eq |= l.is_equality();
        has_const |= l.a1.is_const() || (!l.is_unary() && l.a2.is_const());
        if (!l.is_equality() && l.pred.arity != l.arity())
            r.violations.push_back({1, "arity mismatch in " + lit_label(c, l, vocab)});
    }
    bool ground = vars.empty();

    if (!has_binary && !ground && (has_const || has_eq || vars.size() != 1)) {
        std::string why = has_const ? "mixes constants and variables"
                          : has_eq  ? "contains an (in)equality"
                                    : "has " + std::to_string(vars.size()) + " variables";
        r.violations.push_back({2, "clause without binary literals is not ground and " + why});
    }

    if (has_binary) {
        for (auto v : vars) {
            bool covered = std::any_of(c.literals.begin(), c.literals.end(),
                                       [&](const Literal& l) { return l.is_binary() && l.has_var(v); });
            if (!covered) r.violations.push_back({3, "variable " + var_label(c, v) + " occurs in no binary literal"});
        }
    }

    for (std::size_t i = 0; i < c.literals.size(); ++i) {
        const auto& b = c.literals[i];
        if (!b.is_binary() || b.pred.negated) continue;
        std::vector<std::uint32_t> bv, rest;
        b.collect_vars(bv);
        for (std::size_t j = 0; j < c.literals.size(); ++j) {
            if (j == i) continue;
            const auto& l = c.literals[j];
            if (!(l.is_binary() && l.pred.negated))
                r.violations.push_back({4, "positive binary literal " + lit_label(c, b, vocab) +
                                               " occurs with non-negative-binary literal " + lit_label(c, l, vocab)});
            l.collect_vars(rest);
        }
        std::sort(bv.begin(), bv.end());
        std::sort(rest.begin(), rest.end());
        if (bv != rest)
            r.violations.push_back({4, "variables of " + lit_label(c, b, vocab) + " differ from those of the other literals"});
    }
    return r;
}

Literal canonical_literal(const Literal& lit, bool extra_negation) {
    Literal out = lit;
    if (!extra_negation) return out;
    if (out.is_equality())
        out.positive = !out.positive;
    else
        out.pred.negated = !out.pred.negated;
    return out;
}

Literal negate(const Literal& goal) { return canonical_literal(goal, true); }

Signature signature_of(const std::vector<DLClause>& clauses) {
    Signature s;
    for (const auto& c : clauses)
        for (const auto& l : c.literals) {
            if (l.is_unary()) s.unary.insert(l.pred);
            else if (l.is_binary()) s.binary.insert(l.pred);
        }
    return s;
}

bool is_plain_identifier(std::string_view s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

std::string const_text(const Vocabulary& v, SymbolId c) {
    const std::string& n = v.consts.name(c);
    if (is_plain_identifier(n)) return n;
    std::string out = "'";
    for (char ch : n) {
        if (ch == '\'') out += "''";
        else out += ch;
    }
    return out + "'";
}

std::string pred_text(const Vocabulary& v, PredName p) {
    return (p.negated ? "not_" : "") + v.preds.name(p.base);
}

std::string term_text(const Vocabulary& v, Term t, const std::vector<std::string>* var_names) {
    if (t.is_const()) return const_text(v, t.id);
    if (var_names && t.id < var_names->size()) return (*var_names)[t.id];
    return "_G" + std::to_string(t.id);
}

std::string literal_text(const Vocabulary& v, const Literal& l, const std::vector<std::string>* var_names) {
    if (l.is_equality())
        return term_text(v, l.a1, var_names) + (l.positive ? " = " : " \\= ") + term_text(v, l.a2, var_names);
    std::string s = pred_text(v, l.pred) + "(" + term_text(v, l.a1, var_names);
    if (l.is_binary()) s += ", " + term_text(v, l.a2, var_names);
    return s + ")";
}

}  // namespace horndl
