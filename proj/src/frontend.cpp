#include "horndl/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace horndl {

std::string Diagnostic::str() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {
std::string join_diags(const std::vector<Diagnostic>& d) {
    std::string s;
    for (const auto& x : d) s += (s.empty() ? "" : "\n") + x.str();
    return s;
}
}  // namespace

KbError::KbError(std::vector<Diagnostic> d) : std::runtime_error(join_diags(d)), diags_(std::move(d)) {}

namespace {

enum class Tok { Word, Quoted, LParen, RParen, Comma, Dot, Bar, Tilde, Eq, Neq, Amp, Arrow, Turnstile, End, Bad };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> out;
        for (;;) {
            skip();
            Token t;
            t.line = line_;
            t.col = col_;
            if (i_ >= s_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = s_[i_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) t.text += get();
                t.kind = Tok::Word;
            } else if (c == '\'') {
                get();
                bool closed = false;
                while (i_ < s_.size()) {
                    char d = get();
                    if (d == '\'') {
                        if (i_ < s_.size() && s_[i_] == '\'') {
                            get();
                            t.text += '\'';
                            continue;
                        }
                        closed = true;
                        break;
                    }
                    t.text += d;
                }
                if (!closed) {
                    diags.push_back({t.line, t.col, "unterminated quoted constant"});
                    t.kind = Tok::Bad;
                } else {
                    t.kind = Tok::Quoted;
                }
            } else {
                get();
                t.text = std::string(1, c);
                switch (c) {
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '.': t.kind = Tok::Dot; break;
                    case '|': t.kind = Tok::Bar; break;
                    case '~': t.kind = Tok::Tilde; break;
                    case '&': t.kind = Tok::Amp; break;
                    case '=':
                        if (peek('>')) { get(); t.kind = Tok::Arrow; t.text = "=>"; }
                        else t.kind = Tok::Eq;
                        break;
                    case '!':
                    case '\\':
                        if (peek('=')) { get(); t.kind = Tok::Neq; t.text += "="; }
                        else t.kind = Tok::Bad;
                        break;
                    case ':':
                        if (peek('-')) { get(); t.kind = Tok::Turnstile; t.text = ":-"; }
                        else t.kind = Tok::Bad;
                        break;
                    default: t.kind = Tok::Bad;
                }
                if (t.kind == Tok::Bad) diags.push_back({t.line, t.col, "unexpected character '" + t.text + "'"});
            }
            out.push_back(t);
        }
    }

private:
    bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }
    char get() {
        char c = s_[i_++];
        if (c == '\n') { ++line_; col_ = 1; }
        else ++col_;
        return c;
    }
    void skip() {
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == '%') {
                while (i_ < s_.size() && s_[i_] != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }
    std::string_view s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

struct SyntaxError {
    Diagnostic d;
};

bool starts_upper(const std::string& w) {
    return !w.empty() && (std::isupper(static_cast<unsigned char>(w[0])) || w[0] == '_');
}

// Parses one statement's tokens (without the final dot).
class StatementParser {
public:
    StatementParser(const std::vector<Token>& toks, Vocabulary& vocab) : t_(toks), v_(vocab) {}

    const Token& cur() const { return t_[p_]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool at_end() const { return p_ >= t_.size() - 1; }  // last token is the sentinel
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError{{cur().line, cur().col, msg}}; }
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw SyntaxError{{t.line, t.col, msg}}; }
    const Token& expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what + (cur().text.empty() ? "" : " near '" + cur().text + "'"));
        return t_[p_++];
    }
    bool accept(Tok k) {
        if (at(k)) { ++p_; return true; }
        return false;
    }

    // Variables are scoped to one statement.
    Term term_from(const Token& tok) {
        if (tok.kind == Tok::Quoted) return Term::constant(v_.consts.intern(tok.text));
        if (tok.kind != Tok::Word) fail_at(tok, "expected a term");
        if (starts_upper(tok.text)) {
            if (tok.text == "_") {
                var_names.push_back("_" + std::to_string(var_names.size()));
                return Term::var(static_cast<std::uint32_t>(var_names.size() - 1));
            }
            auto it = std::find(var_names.begin(), var_names.end(), tok.text);
            if (it != var_names.end()) return Term::var(static_cast<std::uint32_t>(it - var_names.begin()));
            var_names.push_back(tok.text);
            return Term::var(static_cast<std::uint32_t>(var_names.size() - 1));
        }
        if (!std::islower(static_cast<unsigned char>(tok.text[0])))
            fail_at(tok, "constant '" + tok.text + "' must start with a lowercase letter or be single-quoted");
        return Term::constant(v_.consts.intern(tok.text));
    }

    SymbolId pred_symbol(const Token& tok, bool& negated) {
        std::string name = tok.text;
        negated = false;
        if (name.rfind("not_", 0) == 0) {
            if (!allow_not_prefix) fail_at(tok, "predicate names starting with 'not_' are reserved; use '~'");
            negated = true;
            name = name.substr(4);
        }
        if (name.rfind("base_", 0) == 0) fail_at(tok, "predicate names starting with 'base_' are reserved");
        if (name == "subrole" || name == "inv" || name == "some") fail_at(tok, "'" + name + "' is a reserved word");
        return v_.preds.intern(name);
    }

    // literal ::= ['~'] name '(' term [',' term] ')' | term ('=' | '!=' | '\=') term
    Literal literal(bool& neg_equality) {
        neg_equality = false;
        bool neg = false;
        while (accept(Tok::Tilde)) neg = !neg;
        const Token& first = cur();
        if ((first.kind == Tok::Word || first.kind == Tok::Quoted) && t_[p_ + 1].kind != Tok::LParen) {
            ++p_;
            Term a = term_from(first);
            bool positive;
            if (accept(Tok::Eq)) positive = true;
            else if (accept(Tok::Neq)) positive = false;
            else fail("expected '(' or '='");
            const Token& second = cur();
            ++p_;
            Term b = term_from(second);
            if (neg) positive = !positive;
            neg_equality = !positive;
            return Literal::equality(positive, a, b);
        }
        const Token& name = expect(Tok::Word, "predicate name");
        bool pneg;
        SymbolId base = pred_symbol(name, pneg);
        if (pneg) neg = !neg;
        expect(Tok::LParen, "'('");
        std::vector<Term> args;
        do {
            const Token& a = cur();
            if (a.kind != Tok::Word && a.kind != Tok::Quoted) fail("expected a term");
            ++p_;
            if (at(Tok::LParen)) fail_at(a, "p1: function term '" + a.text + "(...)' is not allowed");
            args.push_back(term_from(a));
        } while (accept(Tok::Comma));
        expect(Tok::RParen, "')'");
        if (args.size() > 2)
            fail_at(name, "p1: predicate '" + name.text + "' has arity " + std::to_string(args.size()) + " (only 1 or 2 allowed)");
        PredName p{base, neg, static_cast<std::uint8_t>(args.size())};
        check_arity(name, base, p.arity);
        return args.size() == 1 ? Literal::unary(p, args[0]) : Literal::binary(p, args[0], args[1]);
    }

    void check_arity(const Token& tok, SymbolId base, std::uint8_t arity) {
        auto [it, inserted] = arities->emplace(base, arity);
        if (!inserted && it->second != arity)
            fail_at(tok, "predicate '" + tok.text + "' used with arities " + std::to_string(it->second) + " and " +
                             std::to_string(arity));
    }

    RoleRef role_ref() {
        if (at(Tok::Word) && cur().text == "inv") {
            ++p_;
            expect(Tok::LParen, "'('");
            RoleRef r = role_ref();
            expect(Tok::RParen, "')'");
            r.inverse = !r.inverse;
            return r;
        }
        const Token& n = expect(Tok::Word, "role name");
        bool neg;
        SymbolId id = pred_symbol(n, neg);
        if (neg) fail_at(n, "a role cannot be negated");
        check_arity(n, id, 2);
        return {id, false};
    }

    Concept concept_conj() {
        Concept first = concept_factor();
        if (!at(Tok::Amp)) return first;
        Concept c;
        c.kind = Concept::Kind::And;
        c.kids.push_back(std::move(first));
        while (accept(Tok::Amp)) c.kids.push_back(concept_factor());
        return c;
    }

    Concept concept_factor() {
        Concept c;
        if (accept(Tok::LParen)) {
            c = concept_conj();
            expect(Tok::RParen, "')'");
            return c;
        }
        if (accept(Tok::Tilde)) {
            const Token& n = expect(Tok::Word, "concept name after '~'");
            c.kind = Concept::Kind::NegAtomic;
            c.name = concept_symbol(n);
            return c;
        }
        const Token& n = expect(Tok::Word, "concept");
        if (n.text == "some") {
            expect(Tok::LParen, "'('");
            c.kind = Concept::Kind::Exists;
            c.role = role_ref();
            expect(Tok::Comma, "','");
            c.kids.push_back(concept_conj());
            expect(Tok::RParen, "')'");
            return c;
        }
        if (n.text == "all" || n.text == "or" || n.text == "atleast" || n.text == "atmost")
            fail_at(n, "unsupported constructor '" + n.text + "' in axiom (write a raw DL clause instead)");
        if (at(Tok::LParen)) fail("unsupported constructor '" + n.text + "' in axiom");
        c.kind = Concept::Kind::Atomic;
        c.name = concept_symbol(n);
        return c;
    }

    SymbolId concept_symbol(const Token& n) {
        bool neg;
        SymbolId id = pred_symbol(n, neg);
        if (neg) fail_at(n, "use '~' for negated concepts");
        check_arity(n, id, 1);
        return id;
    }

    const std::vector<Token>& t_;
    Vocabulary& v_;
    std::size_t p_ = 0;
    std::vector<std::string> var_names;
    std::map<SymbolId, std::uint8_t>* arities = nullptr;
    bool allow_not_prefix = false;
};

void translate_negated(const Concept& c, std::uint32_t x, DLClause& out, std::uint32_t& next_var) {
    switch (c.kind) {
        case Concept::Kind::Atomic:
            out.literals.push_back(Literal::unary({c.name, true, 1}, Term::var(x)));
            break;
        case Concept::Kind::NegAtomic:
            out.literals.push_back(Literal::unary({c.name, false, 1}, Term::var(x)));
            break;
        case Concept::Kind::And:
            for (const auto& k : c.kids) translate_negated(k, x, out, next_var);
            break;
        case Concept::Kind::Exists: {
            std::uint32_t y = next_var++;
            PredName r{c.role.role, true, 2};
            out.literals.push_back(c.role.inverse ? Literal::binary(r, Term::var(y), Term::var(x))
                                                  : Literal::binary(r, Term::var(x), Term::var(y)));
            translate_negated(c.kids.at(0), y, out, next_var);
            break;
        }
    }
}

std::string fresh_var_name(std::uint32_t i) {
    static const char* base[] = {"X", "Y", "Z", "U", "V", "W"};
    if (i < 6) return base[i];
    return "X" + std::to_string(i);
}

}  // namespace

DLClause normalize_axiom(const AxiomSugar& ax) {
    DLClause c;
    c.literals.push_back(Literal::unary({ax.rhs, ax.rhs_negated, 1}, Term::var(0)));
    std::uint32_t next = 1;
    translate_negated(ax.lhs, 0, c, next);
    for (std::uint32_t i = 0; i < next; ++i) c.var_names.push_back(fresh_var_name(i));
    return c;
}

DLClause role_axiom_clause(const RoleAxiom& ax) {
    DLClause c;
    c.var_names = {"X", "Y"};
    auto lit = [](RoleRef r, bool neg) {
        PredName p{r.role, neg, 2};
        return r.inverse ? Literal::binary(p, Term::var(1), Term::var(0)) : Literal::binary(p, Term::var(0), Term::var(1));
    };
    c.literals.push_back(lit(ax.super, false));
    c.literals.push_back(lit(ax.sub, true));
    return c;
}

ParseResult parse_kb(std::string_view text, VocabularyPtr vocab) {
    ParseResult res;
    if (!vocab) vocab = std::make_shared<Vocabulary>();
    KnowledgeBase kb;
    kb.vocab = vocab;
    Lexer lx(text);
    std::vector<Token> toks = lx.run(res.diagnostics);
    std::map<SymbolId, std::uint8_t> arities;
    std::set<Fact> seen_facts;

    std::size_t i = 0;
    while (toks[i].kind != Tok::End) {
        std::vector<Token> stmt;
        while (toks[i].kind != Tok::Dot && toks[i].kind != Tok::End) stmt.push_back(toks[i++]);
        Token end_tok = toks[i];
        if (toks[i].kind == Tok::End) {
            res.diagnostics.push_back({end_tok.line, end_tok.col, "missing '.' at end of statement"});
            break;
        }
        ++i;
        if (stmt.empty()) {
            res.diagnostics.push_back({end_tok.line, end_tok.col, "empty statement"});
            continue;
        }
        if (std::any_of(stmt.begin(), stmt.end(), [](const Token& t) { return t.kind == Tok::Bad; })) continue;
        Token sentinel = end_tok;
        sentinel.kind = Tok::End;
        sentinel.text.clear();
        stmt.push_back(sentinel);

        StatementParser sp(stmt, *vocab);
        sp.arities = &arities;
        try {
            if (sp.accept(Tok::Turnstile)) {
                const Token& name = sp.expect(Tok::Word, "directive name");
                if (name.text == "query") {
                    sp.expect(Tok::LParen, "'('");
                    ConjQuery q;
                    sp.allow_not_prefix = true;
                    do {
                        bool neq;
                        Literal l = sp.literal(neq);
                        if (l.is_equality()) sp.fail_at(name, "(in)equalities are not allowed in queries");
                        if (l.is_binary() && l.pred.negated) sp.fail_at(name, "negated binary atoms are not allowed in queries");
                        q.goals.push_back(l);
                    } while (sp.accept(Tok::Comma));
                    sp.expect(Tok::RParen, "')'");
                    q.var_names = sp.var_names;
                    kb.declared_queries.push_back(std::move(q));
                } else if (name.text == "top") {
                    sp.expect(Tok::LParen, "'('");
                    const Token& n = sp.expect(Tok::Word, "concept name");
                    kb.declared_top.push_back(sp.concept_symbol(n));
                    sp.expect(Tok::RParen, "')'");
                } else {
                    sp.fail_at(name, "unknown directive '" + name.text + "'");
                }
            } else if (sp.at(Tok::Word) && sp.cur().text == "subrole" && stmt.size() > 1 && stmt[1].kind == Tok::LParen) {
                ++sp.p_;
                sp.expect(Tok::LParen, "'('");
                RoleAxiom ax;
                ax.sub = sp.role_ref();
                sp.expect(Tok::Comma, "','");
                ax.super = sp.role_ref();
                sp.expect(Tok::RParen, "')'");
                kb.role_axioms.push_back(ax);
            } else if (std::any_of(stmt.begin(), stmt.end(), [](const Token& t) { return t.kind == Tok::Arrow; })) {
                AxiomSugar ax;
                ax.lhs = sp.concept_conj();
                sp.expect(Tok::Arrow, "'=>'");
                ax.rhs_negated = sp.accept(Tok::Tilde);
                const Token& n = sp.expect(Tok::Word, "concept name");
                ax.rhs = sp.concept_symbol(n);
                if (!sp.at(Tok::End)) sp.fail("unexpected token after axiom");
                DLClause c = normalize_axiom(ax);
                kb.tbox.push_back(std::move(c));
            } else {
                DLClause c;
                bool any_neg_eq = false;
                do {
                    bool neq;
                    c.literals.push_back(sp.literal(neq));
                    any_neg_eq |= neq;
                } while (sp.accept(Tok::Bar));
                if (!sp.at(Tok::End)) sp.fail("expected '|' or '.'");
                c.var_names = sp.var_names;
                const Token& st = stmt.front();
                if (c.literals.size() == 1 && !c.literals[0].is_equality()) {
                    const Literal& l = c.literals[0];
                    if (!l.is_ground()) sp.fail_at(st, "fact not ground");
                    if (l.is_binary() && l.pred.negated)
                        sp.fail_at(st, "negated role assertions are not allowed in the ABox");
                    Fact f{l.pred, l.a1.id, l.is_binary() ? l.a2.id : 0};
                    if (seen_facts.insert(f).second) kb.abox.push_back(f);
                } else {
                    if (any_neg_eq)
                        sp.fail_at(st, "negative equality literals would produce equality body goals and are not supported");
                    auto rep = validate_dl_clause(c, vocab.get());
                    if (!rep.ok()) {
                        std::string msg = "not a DL clause:";
                        for (const auto& v : rep.violations) msg += " [p" + std::to_string(v.property) + "] " + v.message + ";";
                        sp.fail_at(st, msg);
                    }
                    kb.tbox.push_back(std::move(c));
                }
            }
            if (!sp.at(Tok::End)) sp.fail("unexpected token '" + sp.cur().text + "'");
        } catch (const SyntaxError& e) {
            res.diagnostics.push_back(e.d);
        }
    }
    if (res.diagnostics.empty()) res.kb = std::move(kb);
    return res;
}

KnowledgeBase parse_kb_or_throw(std::string_view text, VocabularyPtr vocab) {
    auto r = parse_kb(text, std::move(vocab));
    if (!r.kb) throw KbError(r.diagnostics);
    return std::move(*r.kb);
}

ConjQuery parse_query(std::string_view text, Vocabulary& vocab) {
    std::vector<Diagnostic> diags;
    Lexer lx(text);
    auto toks = lx.run(diags);
    if (!diags.empty()) throw KbError(diags);
    if (toks.size() >= 2 && toks[toks.size() - 2].kind == Tok::Dot) toks.erase(toks.end() - 2);
    std::map<SymbolId, std::uint8_t> arities;
    StatementParser sp(toks, vocab);
    sp.arities = &arities;
    sp.allow_not_prefix = true;
    ConjQuery q;
    try {
        if (sp.at(Tok::End)) sp.fail("empty query");
        do {
            bool neq;
            Literal l = sp.literal(neq);
            if (l.is_equality()) sp.fail("(in)equalities are not allowed in queries");
            if (l.is_binary() && l.pred.negated) sp.fail("negated binary atoms are not allowed in queries");
            q.goals.push_back(l);
        } while (sp.accept(Tok::Comma));
        if (!sp.at(Tok::End)) sp.fail("unexpected token '" + sp.cur().text + "'");
    } catch (const SyntaxError& e) {
        throw KbError({e.d});
    }
    q.var_names = sp.var_names;
    return q;
}

namespace {

// Splits one CSV line; fields may be single-quoted (with '' as an escaped quote).
std::vector<std::pair<std::string, bool>> split_csv(const std::string& line, int lineno, const std::string& file) {
    std::vector<std::pair<std::string, bool>> out;
    std::size_t i = 0;
    auto err = [&](const std::string& m) { throw KbError({{lineno, static_cast<int>(i + 1), file + ": " + m}}); };
    for (;;) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::string field;
        bool quoted = false;
        if (i < line.size() && line[i] == '\'') {
            quoted = true;
            ++i;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '\'') {
                    if (i + 1 < line.size() && line[i + 1] == '\'') { field += '\''; i += 2; continue; }
                    ++i;
                    closed = true;
                    break;
                }
                field += line[i++];
            }
            if (!closed) err("unterminated quoted field");
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        } else {
            while (i < line.size() && line[i] != ',') field += line[i++];
            while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.pop_back();
        }
        out.emplace_back(field, quoted);
        if (i >= line.size()) break;
        if (line[i] != ',') err("expected ',' after quoted field");
        ++i;
    }
    return out;
}

}  // namespace

std::vector<Fact> ingest_abox_csv(const std::vector<CsvSource>& files, Vocabulary& vocab) {
    std::vector<Fact> out;
    std::set<Fact> seen;
    for (const auto& f : files) {
        std::istringstream in(f.text);
        std::string line;
        int lineno = 0;
        bool have_header = false;
        PredName pred;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            auto fields = split_csv(line, lineno, f.name);
            if (!have_header) {
                if (fields.size() != 3) throw KbError({{lineno, 1, f.name + ": header must be 'pred,polarity,arity'"}});
                const std::string& name = fields[0].first;
                const std::string& pol = fields[1].first;
                const std::string& ar = fields[2].first;
                if (name.empty() || name.rfind("not_", 0) == 0 || name.rfind("base_", 0) == 0 ||
                    !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
                    throw KbError({{lineno, 1, f.name + ": invalid predicate name '" + name + "'"}});
                bool neg;
                if (pol == "+" || pol == "pos") neg = false;
                else if (pol == "-" || pol == "neg") neg = true;
                else throw KbError({{lineno, 1, f.name + ": polarity must be pos/neg or +/-"}});
                if (ar != "1" && ar != "2") throw KbError({{lineno, 1, f.name + ": arity must be 1 or 2"}});
                pred = {vocab.preds.intern(name), neg, static_cast<std::uint8_t>(ar == "1" ? 1 : 2)};
                if (neg && pred.arity == 2) throw KbError({{lineno, 1, f.name + ": negated role assertions are not allowed"}});
                have_header = true;
                continue;
            }
            if (fields.size() != pred.arity)
                throw KbError({{lineno, 1, f.name + ": arity mismatch: expected " + std::to_string(pred.arity) +
                                               " columns, got " + std::to_string(fields.size())}});
            SymbolId ids[2] = {0, 0};
            for (std::size_t k = 0; k < fields.size(); ++k) {
                const auto& [val, quoted] = fields[k];
                if (!quoted && !is_plain_identifier(val))
                    throw KbError({{lineno, 1, f.name + ": constant '" + val + "' must be quoted"}});
                ids[k] = vocab.consts.intern(val);
            }
            Fact fact{pred, ids[0], pred.arity == 2 ? ids[1] : 0};
            if (seen.insert(fact).second) out.push_back(fact);
        }
    }
    return out;
}

std::string render_clause(const Vocabulary& v, const DLClause& c) {
    std::string s;
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
        if (i) s += " | ";
        const Literal& l = c.literals[i];
        if (l.is_equality()) {
            s += literal_text(v, l, &c.var_names);
            continue;
        }
        if (l.pred.negated) s += "~";
        Literal pos = l;
        pos.pred.negated = false;
        s += literal_text(v, pos, &c.var_names);
    }
    return s + ".";
}

std::string render_fact(const Vocabulary& v, const Fact& f) {
    std::string s = (f.pred.negated ? "~" : "") + v.preds.name(f.pred.base) + "(" + const_text(v, f.a1);
    if (f.pred.arity == 2) s += ", " + const_text(v, f.a2);
    return s + ").";
}

std::string render_query(const Vocabulary& v, const ConjQuery& q) {
    std::string s;
    for (std::size_t i = 0; i < q.goals.size(); ++i) {
        if (i) s += ", ";
        Literal l = q.goals[i];
        if (l.pred.negated) s += "~";
        l.pred.negated = false;
        s += literal_text(v, l, &q.var_names);
    }
    return s;
}

std::string render_kb(const KnowledgeBase& kb) {
    const Vocabulary& v = *kb.vocab;
    std::string s;
    for (const auto& c : kb.tbox) s += render_clause(v, c) + "\n";
    auto rr = [&](RoleRef r) { return r.inverse ? "inv(" + v.preds.name(r.role) + ")" : v.preds.name(r.role); };
    for (const auto& a : kb.role_axioms) s += "subrole(" + rr(a.sub) + ", " + rr(a.super) + ").\n";
    for (const auto& t : kb.declared_top) s += ":- top(" + v.preds.name(t) + ").\n";
    for (const auto& f : kb.abox) s += render_fact(v, f) + "\n";
    for (const auto& q : kb.declared_queries) s += ":- query(" + render_query(v, q) + ").\n";
    return s;
}

bool same_kb(const KnowledgeBase& a, const KnowledgeBase& b) {
    if (a.tbox.size() != b.tbox.size() || a.abox.size() != b.abox.size() || a.role_axioms.size() != b.role_axioms.size() ||
        a.declared_queries.size() != b.declared_queries.size() || a.declared_top.size() != b.declared_top.size())
        return false;
    // Rendering is name-based and injective on the model, so compare renderings piecewise.
    for (std::size_t i = 0; i < a.tbox.size(); ++i)
        if (render_clause(*a.vocab, a.tbox[i]) != render_clause(*b.vocab, b.tbox[i])) return false;
    for (std::size_t i = 0; i < a.abox.size(); ++i)
        if (render_fact(*a.vocab, a.abox[i]) != render_fact(*b.vocab, b.abox[i])) return false;
    for (std::size_t i = 0; i < a.declared_queries.size(); ++i)
        if (render_query(*a.vocab, a.declared_queries[i]) != render_query(*b.vocab, b.declared_queries[i])) return false;
    for (std::size_t i = 0; i < a.role_axioms.size(); ++i) {
        const auto &x = a.role_axioms[i], &y = b.role_axioms[i];
        if (a.vocab->preds.name(x.sub.role) != b.vocab->preds.name(y.sub.role) || x.sub.inverse != y.sub.inverse ||
            a.vocab->preds.name(x.super.role) != b.vocab->preds.name(y.super.role) || x.super.inverse != y.super.inverse)
            return false;
    }
    for (std::size_t i = 0; i < a.declared_top.size(); ++i)
        if (a.vocab->preds.name(a.declared_top[i]) != b.vocab->preds.name(b.declared_top[i])) return false;
    return true;
}

std::vector<DLClause> all_dl_clauses(const KnowledgeBase& kb) {
    std::vector<DLClause> out = kb.tbox;
    for (const auto& a : kb.role_axioms) out.push_back(role_axiom_clause(a));
    return out;
}

}  // namespace horndl
