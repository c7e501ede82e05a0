#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace horndl {

using SymbolId = std::uint32_t;

class SymbolTable {
public:
    SymbolId intern(std::string_view s);
    std::optional<SymbolId> find(std::string_view s) const;
    const std::string& name(SymbolId id) const { return names_[id]; }
    std::size_t size() const { return names_.size(); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId, Hash, std::equal_to<>> ids_;
};

// Predicate names and constants live in separate id spaces.
struct Vocabulary {
    SymbolTable preds;
    SymbolTable consts;
};
using VocabularyPtr = std::shared_ptr<Vocabulary>;

struct Term {
    enum class Kind : std::uint8_t { Var, Const };
    Kind kind = Kind::Const;
    std::uint32_t id = 0;  // clause-local variable index, or constant id

    static Term var(std::uint32_t i) { return {Kind::Var, i}; }
    static Term constant(SymbolId c) { return {Kind::Const, c}; }
    bool is_var() const { return kind == Kind::Var; }
    bool is_const() const { return kind == Kind::Const; }
    auto operator<=>(const Term&) const = default;
};

struct PredName {
    SymbolId base = 0;
    bool negated = false;
    std::uint8_t arity = 1;

    PredName negate() const { return {base, !negated, arity}; }
    auto operator<=>(const PredName&) const = default;
    std::uint64_t key() const { return (std::uint64_t(base) << 3) | (std::uint64_t(arity) << 1) | (negated ? 1 : 0); }
};

struct PredNameHash {
    std::size_t operator()(const PredName& p) const { return std::hash<std::uint64_t>{}(p.key()); }
};

struct Literal {
    enum class Kind : std::uint8_t { Unary, Binary, Equality };
    Kind kind = Kind::Unary;
    PredName pred;          // unused for equality
    bool positive = true;   // sign of an equality; predicates carry polarity in pred.negated
    Term a1, a2;

    static Literal unary(PredName p, Term t) { return {Kind::Unary, p, true, t, {}}; }
    static Literal binary(PredName p, Term t1, Term t2) { return {Kind::Binary, p, true, t1, t2}; }
    static Literal equality(bool positive, Term t1, Term t2) { return {Kind::Equality, {}, positive, t1, t2}; }

    bool is_unary() const { return kind == Kind::Unary; }
    bool is_binary() const { return kind == Kind::Binary; }
    bool is_equality() const { return kind == Kind::Equality; }
    int arity() const { return kind == Kind::Unary ? 1 : 2; }
    // A literal is negative when it is a negated predicate or an inequality.
    bool negative() const { return is_equality() ? !positive : pred.negated; }
    bool is_ground() const;
    void collect_vars(std::vector<std::uint32_t>& out) const;
    bool has_var(std::uint32_t v) const;
    auto operator<=>(const Literal&) const = default;
};

struct DLClause {
    std::vector<Literal> literals;
    std::vector<std::string> var_names;
    bool operator==(const DLClause&) const = default;
};

struct Violation {
    int property = 0;  // 1..4
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool violates(int p) const;
};

ValidationReport validate_dl_clause(const DLClause& c, const Vocabulary* vocab = nullptr);

// can(L) for L optionally preceded by one extra negation.
Literal canonical_literal(const Literal& lit, bool extra_negation = false);
Literal negate(const Literal& goal);
inline PredName negate(PredName p) { return p.negate(); }

struct Signature {
    std::set<PredName> unary;
    std::set<PredName> binary;
    bool contains(PredName p) const { return p.arity == 1 ? unary.count(p) > 0 : binary.count(p) > 0; }
    bool operator==(const Signature&) const = default;
};

Signature signature_of(const std::vector<DLClause>& clauses);

// Text rendering; the "not_" prefix exists only here and in the parsers.
std::string pred_text(const Vocabulary& v, PredName p);
std::string term_text(const Vocabulary& v, Term t, const std::vector<std::string>* var_names);
std::string literal_text(const Vocabulary& v, const Literal& l, const std::vector<std::string>* var_names);
std::string const_text(const Vocabulary& v, SymbolId c);
bool is_plain_identifier(std::string_view s);

// Raised by the executors when a configured step budget runs out.
struct StepLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a query names a predicate outside the program signature.
struct UnknownPredicate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace horndl
