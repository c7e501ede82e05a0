#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "horndl/kb_core.hpp"

namespace horndl {

struct RoleRef {
    SymbolId role = 0;
    bool inverse = false;
    auto operator<=>(const RoleRef&) const = default;
};

struct RoleAxiom {
    RoleRef sub, super;
    auto operator<=>(const RoleAxiom&) const = default;
};

struct Concept {
    enum class Kind : std::uint8_t { Atomic, NegAtomic, And, Exists };
    Kind kind = Kind::Atomic;
    SymbolId name = 0;       // Atomic, NegAtomic
    RoleRef role;            // Exists
    std::vector<Concept> kids;  // And: conjuncts; Exists: exactly one filler
};

struct AxiomSugar {
    Concept lhs;
    SymbolId rhs = 0;
    bool rhs_negated = false;
};

struct Fact {
    PredName pred;
    SymbolId a1 = 0, a2 = 0;  // a2 unused for unary facts
    auto operator<=>(const Fact&) const = default;
};

struct ConjQuery {
    std::vector<Literal> goals;
    std::vector<std::string> var_names;  // index = variable id; also the answer column order
    bool operator==(const ConjQuery&) const = default;
};

struct KnowledgeBase {
    VocabularyPtr vocab;
    std::vector<DLClause> tbox;
    std::vector<Fact> abox;
    std::vector<RoleAxiom> role_axioms;
    std::vector<ConjQuery> declared_queries;
    std::vector<SymbolId> declared_top;
};

struct Diagnostic {
    int line = 0;
    int column = 0;
    std::string message;
    std::string str() const;
};

class KbError : public std::runtime_error {
public:
    explicit KbError(std::vector<Diagnostic> d);
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

struct ParseResult {
    std::optional<KnowledgeBase> kb;
    std::vector<Diagnostic> diagnostics;
};

// Parses the textual KB format. Passing an existing vocabulary extends it.
ParseResult parse_kb(std::string_view text, VocabularyPtr vocab = nullptr);
KnowledgeBase parse_kb_or_throw(std::string_view text, VocabularyPtr vocab = nullptr);

DLClause normalize_axiom(const AxiomSugar& ax);

// The DL clause {super(x,y), ~sub(x,y)} with inverses applied.
DLClause role_axiom_clause(const RoleAxiom& ax);

struct CsvSource {
    std::string name;
    std::string text;
};

// Throws KbError on malformed input.
std::vector<Fact> ingest_abox_csv(const std::vector<CsvSource>& files, Vocabulary& vocab);

// Accepts `~P(X)` and `not_P(X)` for negated unary atoms; throws KbError.
ConjQuery parse_query(std::string_view text, Vocabulary& vocab);

std::string render_kb(const KnowledgeBase& kb);
std::string render_clause(const Vocabulary& v, const DLClause& c);
std::string render_query(const Vocabulary& v, const ConjQuery& q);
std::string render_fact(const Vocabulary& v, const Fact& f);

// Structural equality by symbol names (vocabularies may differ).
bool same_kb(const KnowledgeBase& a, const KnowledgeBase& b);

// Every DL clause of the KB: TBox clauses followed by the role axioms as clauses.
std::vector<DLClause> all_dl_clauses(const KnowledgeBase& kb);

}  // namespace horndl
