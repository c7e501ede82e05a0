#include "horndl/interpreter.hpp"

#include <algorithm>

namespace horndl {

namespace {

using Val = std::uint32_t;
constexpr Val kConst = 0x80000000u;

Val cval(SymbolId c) { return c | kConst; }
bool is_const(Val v) { return (v & kConst) != 0; }

struct GoalNode {
    Literal::Kind kind;
    PredName pred;
    bool positive;
    Val a1, a2;
    std::int32_t next;
    std::int32_t anc;
};

struct AncNode {
    PredName pred;
    Val a1, a2;
    std::int32_t next;
};

struct ChoicePoint {
    std::uint32_t trail, cells, goals, ancs;
    std::int32_t goal;
    std::uint8_t phase;  // 0 ancestor, 1 facts, 2 rules
    std::uint32_t idx;
};

}  // namespace

struct Interpreter::State {
    std::vector<Val> cells;
    std::vector<std::uint32_t> trail;
    std::vector<GoalNode> goals;
    std::vector<AncNode> ancs;
    std::vector<ChoicePoint> cps;

    Val deref(Val v) const {
        while (!is_const(v) && cells[v] != v) v = cells[v];
        return v;
    }
    void bind(Val cell, Val to) {
        cells[cell] = to;
        trail.push_back(cell);
    }
    bool unify(Val a, Val b) {
        a = deref(a);
        b = deref(b);
        if (a == b) return true;
        if (!is_const(a) && !is_const(b)) {
            if (a > b) bind(a, b);
            else bind(b, a);
            return true;
        }
        if (!is_const(a)) { bind(a, b); return true; }
        if (!is_const(b)) { bind(b, a); return true; }
        return false;
    }
    bool compatible(Val a, Val b) const {
        a = deref(a);
        b = deref(b);
        return a == b || !is_const(a) || !is_const(b);
    }
    void undo_to(const ChoicePoint& cp) {
        while (trail.size() > cp.trail) {
            cells[trail.back()] = trail.back();
            trail.pop_back();
        }
        cells.resize(cp.cells);
        goals.resize(cp.goals);
        ancs.resize(cp.ancs);
    }
    Val new_cell() {
        auto v = static_cast<Val>(cells.size());
        cells.push_back(v);
        return v;
    }
};

Interpreter::Interpreter(const HornProgram& prog, const FactSource& store, InterpOptions opts)
    : prog_(prog), store_(store), opts_(opts) {
    for (std::size_t i = 0; i < prog_.clauses.size(); ++i)
        if (!prog_.clauses[i].is_fact()) rules_[prog_.clauses[i].head.pred].push_back(i);
}

void Interpreter::interp(const std::vector<Literal>& goals, std::uint32_t num_vars, const std::vector<Literal>& ancestors,
                         const std::function<void(std::span<const SymbolId>)>& on_solution) {
    State st;
    for (std::uint32_t i = 0; i < num_vars; ++i) st.new_cell();
    auto term_val = [](Term t, std::uint32_t base) { return t.is_const() ? cval(t.id) : base + t.id; };

    std::int32_t anc_head = -1;
    for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it) {
        st.ancs.push_back({it->pred, term_val(it->a1, 0), it->is_unary() ? 0 : term_val(it->a2, 0), anc_head});
        anc_head = static_cast<std::int32_t>(st.ancs.size() - 1);
    }
    // Builds goal nodes for a body, linked to `cont`; returns the first node.
    auto push_body = [&](const std::vector<Literal>& body, std::uint32_t base, std::int32_t cont, std::int32_t anc) {
        std::int32_t next = cont;
        for (auto it = body.rbegin(); it != body.rend(); ++it) {
            GoalNode g{it->kind, it->pred, it->positive, term_val(it->a1, base),
                       it->is_unary() ? 0 : term_val(it->a2, base), next, anc};
            st.goals.push_back(g);
            next = static_cast<std::int32_t>(st.goals.size() - 1);
        }
        return next;
    };

    std::int32_t cur = push_body(goals, 0, -1, anc_head);
    std::vector<SymbolId> row(num_vars);
    bool failing = false;

    auto resume = [&]() -> bool {
        // Tries the next alternative of the newest choice point; false if none are left.
        while (!st.cps.empty()) {
            ChoicePoint& cp = st.cps.back();
            st.undo_to(cp);
            const GoalNode g = st.goals[cp.goal];
            if (cp.phase == 0) {
                cp.phase = 1;
                cp.idx = 0;
                if (g.kind == Literal::Kind::Unary) {
                    PredName neg = g.pred.negate();
                    std::int32_t first = -1;
                    int matches = 0;
                    for (std::int32_t a = g.anc; a != -1; a = st.ancs[a].next) {
                        const AncNode& n = st.ancs[a];
                        if (n.pred == neg && st.compatible(n.a1, g.a1)) {
                            if (first == -1) first = a;
                            ++matches;
                        }
                    }
                    if (first != -1) {
                        if (matches > 1) ++stats_.multi_match;
                        ++stats_.ancres;
                        st.unify(st.ancs[first].a1, g.a1);
                        cur = g.next;
                        return true;
                    }
                }
            }
            if (cp.phase == 1) {
                auto rel = store_.resolve(g.pred);
                if (rel) {
                    if (g.kind == Literal::Kind::Unary) {
                        Val a = st.deref(g.a1);
                        if (is_const(a)) {
                            if (cp.idx == 0 && store_.unary_contains(*rel, a & ~kConst)) {
                                cp.idx = 1;
                                cur = g.next;
                                return true;
                            }
                        } else {
                            auto span = store_.unary_scan(*rel);
                            if (cp.idx < span.size()) {
                                st.unify(a, cval(span[cp.idx++]));
                                cur = g.next;
                                return true;
                            }
                        }
                    } else {
                        auto pairs = store_.binary_scan(*rel);
                        while (cp.idx < pairs.size()) {
                            auto [x, y] = pairs[cp.idx++];
                            std::size_t mark = st.trail.size();
                            if (st.unify(g.a1, cval(x)) && st.unify(g.a2, cval(y))) {
                                cur = g.next;
                                return true;
                            }
                            while (st.trail.size() > mark) {
                                st.cells[st.trail.back()] = st.trail.back();
                                st.trail.pop_back();
                            }
                        }
                    }
                }
                cp.phase = 2;
                cp.idx = 0;
            }
            auto it = rules_.find(g.pred);
            std::size_t nrules = it == rules_.end() ? 0 : it->second.size();
            while (cp.idx < nrules) {
                const HornClause& c = prog_.clauses[it->second[cp.idx++]];
                auto base = static_cast<std::uint32_t>(st.cells.size());
                for (std::uint32_t v = 0; v < c.num_vars(); ++v) st.new_cell();
                bool ok = st.unify(g.a1, term_val(c.head.a1, base)) &&
                          (c.head.is_unary() || st.unify(g.a2, term_val(c.head.a2, base)));
                if (!ok) {
                    st.undo_to(cp);
                    continue;
                }
                st.ancs.push_back({g.pred, g.a1, g.a2, g.anc});
                auto anc = static_cast<std::int32_t>(st.ancs.size() - 1);
                cur = push_body(c.body, base, g.next, anc);
                if (cp.idx == nrules) st.cps.pop_back();
                return true;
            }
            st.cps.pop_back();
        }
        return false;
    };

    for (;;) {
        if (failing) {
            if (!resume()) return;
            failing = false;
        }
        if (opts_.step_limit && stats_.steps >= opts_.step_limit) throw StepLimitExceeded("interpreter step limit exceeded");
        ++stats_.steps;
        if (cur == -1) {
            for (std::uint32_t i = 0; i < num_vars; ++i) {
                Val v = st.deref(i);
                row[i] = is_const(v) ? (v & ~kConst) : kUnboundValue;
            }
            ++stats_.raw_solutions;
            on_solution(row);
            failing = true;
            continue;
        }
        const GoalNode g = st.goals[cur];
        if (g.kind == Literal::Kind::Equality) {
            Val a = st.deref(g.a1), b = st.deref(g.a2);
            if (!is_const(a) || !is_const(b)) throw std::logic_error("non-ground (in)equality reached at run time");
            if ((a == b) == g.positive) cur = g.next;
            else failing = true;
            continue;
        }
        bool looped = false;
        for (std::int32_t a = g.anc; a != -1 && !looped; a = st.ancs[a].next) {
            const AncNode& n = st.ancs[a];
            looped = n.pred == g.pred && st.deref(n.a1) == st.deref(g.a1) &&
                     (g.kind == Literal::Kind::Unary || st.deref(n.a2) == st.deref(g.a2));
        }
        if (looped) {
            ++stats_.loop;
            failing = true;
            continue;
        }
        st.cps.push_back({static_cast<std::uint32_t>(st.trail.size()), static_cast<std::uint32_t>(st.cells.size()),
                          static_cast<std::uint32_t>(st.goals.size()), static_cast<std::uint32_t>(st.ancs.size()), cur, 0,
                          0});
        failing = true;  // enter the choice point through resume()
    }
}

std::vector<SymbolId> individuals(const HornProgram& prog, const FactSource& store, const ConjQuery* q) {
    std::vector<SymbolId> u(store.universe().begin(), store.universe().end());
    auto add = [&](const Literal& l) {
        if (l.a1.is_const()) u.push_back(l.a1.id);
        if (!l.is_unary() && l.a2.is_const()) u.push_back(l.a2.id);
    };
    for (const auto& c : prog.clauses) {
        add(c.head);
        for (const auto& g : c.body) add(g);
    }
    if (q)
        for (const auto& g : q->goals) add(g);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

void expand_solution(std::span<const SymbolId> row, const std::vector<SymbolId>& universe, std::vector<Tuple>& out) {
    Tuple t(row.begin(), row.end());
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] == kUnboundValue) open.push_back(i);
    if (open.empty()) {
        out.push_back(std::move(t));
        return;
    }
    if (universe.empty()) return;
    std::vector<std::size_t> pos(open.size(), 0);
    for (;;) {
        for (std::size_t k = 0; k < open.size(); ++k) t[open[k]] = universe[pos[k]];
        out.push_back(t);
        std::size_t k = 0;
        while (k < pos.size() && ++pos[k] == universe.size()) pos[k++] = 0;
        if (k == pos.size()) break;
    }
}

void sort_unique(std::vector<Tuple>& t) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
}

RefResult solve_query_ref(const HornProgram& prog, const FactSource& store, const ConjQuery& q, InterpOptions opts) {
    Signature sig = signature_of(prog);
    for (const auto& g : q.goals) {
        if (g.is_equality()) continue;
        if (!sig.contains(g.pred) && !store.resolve(g.pred))
            throw UnknownPredicate("unknown predicate " + pred_text(*prog.vocab, g.pred) + "/" + std::to_string(g.pred.arity));
    }
    RefResult r;
    auto universe = individuals(prog, store, &q);
    Interpreter in(prog, store, opts);
    in.interp(q.goals, static_cast<std::uint32_t>(q.var_names.size()), {},
              [&](std::span<const SymbolId> row) { expand_solution(row, universe, r.tuples); });
    sort_unique(r.tuples);
    r.stats = in.stats();
    return r;
}

}  // namespace horndl
