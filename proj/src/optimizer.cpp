#include "horndl/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace horndl {

std::set<PredName> RuleProgram::predicates() const {
    std::set<PredName> out;
    for (const auto& c : rules) {
        out.insert(c.head.pred);
        for (const auto& g : c.body)
            if (!g.is_equality()) out.insert(g.pred);
    }
    for (const auto& [p, l] : links) out.insert(p);
    return out;
}

std::set<PredName> fact_predicates(const std::vector<Fact>& facts) {
    std::set<PredName> out;
    for (const auto& f : facts) out.insert(f.pred);
    return out;
}

RuleProgram make_rule_program(const HornProgram& p, const std::set<PredName>& fact_preds) {
    RuleProgram r;
    r.vocab = p.vocab;
    std::set<PredName> with_facts = fact_preds;
    for (const auto& c : p.clauses) {
        if (c.is_fact()) with_facts.insert(c.head.pred);
        else r.rules.push_back(c);
    }
    for (const auto& f : with_facts) r.links[f].push_back({f, false});
    return r;
}

// ---- call graph ----

CallGraph CallGraph::build(const RuleProgram& p) {
    CallGraph g;
    for (const auto& n : p.predicates()) {
        g.index_.emplace(n, g.nodes_.size());
        g.nodes_.push_back(n);
    }
    g.calls_.resize(g.nodes_.size());
    for (const auto& c : p.rules) {
        auto& out = g.calls_[g.index_.at(c.head.pred)];
        for (const auto& b : c.body)
            if (!b.is_equality()) out.push_back(g.index_.at(b.pred));
    }
    for (auto& v : g.calls_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::size_t n = g.nodes_.size();
    g.reach_.assign(n, std::vector<char>(n, 0));
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        auto& row = g.reach_[s];
        stack.assign(g.calls_[s].begin(), g.calls_[s].end());
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            if (row[x]) continue;
            row[x] = 1;
            for (auto y : g.calls_[x])
                if (!row[y]) stack.push_back(y);
        }
    }
    return g;
}

bool CallGraph::directly_calls(PredName a, PredName b) const {
    auto ia = index_.find(a), ib = index_.find(b);
    if (ia == index_.end() || ib == index_.end()) return false;
    const auto& v = calls_[ia->second];
    return std::binary_search(v.begin(), v.end(), ib->second);
}

bool CallGraph::reaches(PredName a, PredName b) const {
    auto ia = index_.find(a), ib = index_.find(b);
    if (ia == index_.end() || ib == index_.end()) return false;
    return reach_[ia->second][ib->second] != 0;
}

bool CallGraph::clause_reaches(const HornClause& c, PredName b) const {
    for (const auto& g : c.body) {
        if (g.is_equality()) continue;
        if (g.pred == b || reaches(g.pred, b)) return true;
    }
    return false;
}

std::vector<PredName> CallGraph::callees(PredName a) const {
    std::vector<PredName> out;
    auto it = index_.find(a);
    if (it == index_.end()) return out;
    for (auto i : calls_[it->second]) out.push_back(nodes_[i]);
    return out;
}

// ---- classification and filtering ----

const char* class_name(PredClass c) {
    switch (c) {
        case PredClass::Atomic: return "atomic";
        case PredClass::Query: return "query";
        case PredClass::Orphan: return "orphan";
        case PredClass::General: return "general";
    }
    return "?";
}

PredClass Classification::class_of(PredName p) const {
    auto it = info.find(p);
    return it == info.end() ? PredClass::Atomic : it->second.cls;
}

const PredInfo* Classification::find(PredName p) const {
    auto it = info.find(p);
    return it == info.end() ? nullptr : &it->second;
}

Classification classify(const RuleProgram& p, const CallGraph& g) {
    Classification c;
    for (const auto& n : g.nodes()) c.info[n];
    for (const auto& r : p.rules) {
        ++c.info[r.head.pred].rules;
        for (const auto& b : r.body)
            if (!b.is_equality()) c.info[b.pred].invoked = true;
    }
    for (const auto& [pred, ls] : p.links) c.info[pred].links = ls.size();

    for (auto& [pred, in] : c.info) {
        in.recursive = g.reaches(pred, pred);
        in.anr = g.reaches(pred, pred.negate());
        in.dnr = g.reaches(pred.negate(), pred);
        if (in.rules == 0) {
            auto it = p.links.find(pred);
            bool self_only = it != p.links.end() && it->second.size() == 1 && it->second[0].source == pred &&
                             !it->second[0].swapped;
            if (in.links == 0 && in.invoked) in.cls = PredClass::Orphan;
            // A DNR predicate may have to close against a not_P ancestor even
            // when only facts define it, so it cannot drop that check.
            else if ((in.links == 0 || self_only) && !in.dnr) in.cls = PredClass::Atomic;
            else in.cls = PredClass::General;  // several links: settled by the query fixpoint
        } else {
            in.cls = PredClass::General;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [pred, in] : c.info) {
            if (in.cls != PredClass::General || in.recursive || in.dnr) continue;
            bool ok = true;
            for (const auto& q : g.callees(pred)) {
                PredClass qc = c.class_of(q);
                if (qc != PredClass::Atomic && qc != PredClass::Query) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                in.cls = PredClass::Query;
                changed = true;
            }
        }
    }
    return c;
}

Classification classify(const HornProgram& p) {
    RuleProgram r = make_rule_program(p, {});
    return classify(r, CallGraph::build(r));
}

namespace {

std::set<PredName> orphans_of(const RuleProgram& p) {
    std::set<PredName> heads, invoked;
    for (const auto& c : p.rules) {
        heads.insert(c.head.pred);
        for (const auto& b : c.body)
            if (!b.is_equality()) invoked.insert(b.pred);
    }
    std::set<PredName> out;
    for (const auto& i : invoked)
        if (!heads.count(i) && !p.links.count(i)) out.insert(i);
    return out;
}

bool eliminable(const HornClause& c, const std::set<PredName>& orphans, const CallGraph& g) {
    PredName p = c.head.pred;
    std::vector<PredName> body_orphans;
    for (const auto& b : c.body)
        if (!b.is_equality() && orphans.count(b.pred)) body_orphans.push_back(b.pred);
    for (const auto& o : body_orphans)
        if (p != o.negate() && !g.reaches(o.negate(), p)) return true;  // false-orphan
    for (std::size_t i = 0; i < body_orphans.size(); ++i)
        for (std::size_t j = i + 1; j < body_orphans.size(); ++j)
            if (body_orphans[i] != body_orphans[j]) return true;  // two-orphan
    if (orphans.count(p.negate())) {
        PredName o1 = p.negate();
        bool has_o2 = std::any_of(body_orphans.begin(), body_orphans.end(), [&](PredName o) { return o != o1; });
        bool has_neg_o3 = std::any_of(c.body.begin(), c.body.end(), [&](const Literal& b) {
            return !b.is_equality() && orphans.count(b.pred.negate());
        });
        if (has_o2 && has_neg_o3) return true;  // contra-two-orphan
    }
    return false;
}

}  // namespace

FilterResult filter(RuleProgram p) {
    FilterResult r;
    for (;;) {
        ++r.rounds;
        auto g = CallGraph::build(p);
        auto orphans = orphans_of(p);
        std::vector<HornClause> kept;
        std::size_t before = p.rules.size();
        for (auto& c : p.rules) {
            if (eliminable(c, orphans, g)) r.removed.push_back(std::move(c));
            else kept.push_back(std::move(c));
        }
        p.rules = std::move(kept);
        if (p.rules.size() == before) break;
    }
    r.prog = std::move(p);
    return r;
}

HornProgram filter(const HornProgram& p) {
    auto r = filter(make_rule_program(p, {}));
    HornProgram out{p.vocab, {}};
    std::set<PredName> kept_facts;
    std::size_t ri = 0;
    // Keep the surviving rules in their original positions, facts untouched.
    for (const auto& c : p.clauses) {
        if (c.is_fact()) out.clauses.push_back(c);
        else if (ri < r.prog.rules.size() && r.prog.rules[ri] == c) out.clauses.push_back(r.prog.rules[ri++]);
    }
    return out;
}

Analysis analyze(RuleProgram p, bool filtering) {
    Analysis a;
    if (filtering) {
        auto f = filter(std::move(p));
        a.prog = std::move(f.prog);
        a.removed = std::move(f.removed);
    } else {
        a.prog = std::move(p);
    }
    a.graph = CallGraph::build(a.prog);
    a.cls = classify(a.prog, a.graph);
    return a;
}

// ---- ranking, ordering, decomposition ----

bool is_orphan_goal(const Literal& g, const RankContext& ctx) {
    return !g.is_equality() && ctx.cls && ctx.cls->class_of(g.pred) == PredClass::Orphan;
}

int rank_goal(const Literal& g, const VarSet& bound, const RankContext& ctx) {
    auto unbound = [&](Term t) { return t.is_var() && !bound.count(t.id); };
    if (g.is_equality()) return unbound(g.a1) || unbound(g.a2) ? 11 : 2;
    if (g.is_binary()) {
        VarSet ub;
        if (unbound(g.a1)) ub.insert(g.a1.id);
        if (unbound(g.a2)) ub.insert(g.a2.id);
        if (ub.empty()) return 3;
        if (ub.size() == 1) return 5;
        if (ctx.head_var && ub.count(*ctx.head_var)) return 6;
        return 7;
    }
    bool ground = !unbound(g.a1);
    PredClass c = ctx.cls ? ctx.cls->class_of(g.pred) : PredClass::General;
    if (c == PredClass::Orphan && ctx.orphan == OrphanMode::First) return 1;
    if (c == PredClass::Atomic || c == PredClass::Query) return ground ? 4 : 8;
    return ground ? 9 : 10;
}

namespace {

void add_vars(const Literal& l, VarSet& v) {
    if (l.a1.is_var()) v.insert(l.a1.id);
    if (!l.is_unary() && l.a2.is_var()) v.insert(l.a2.id);
}

VarSet free_vars(const Literal& l, const VarSet& bound) {
    VarSet v;
    add_vars(l, v);
    for (auto b : bound) v.erase(b);
    return v;
}

std::vector<std::vector<std::size_t>> partition(const std::vector<Literal>& body, const std::vector<std::size_t>& idx,
                                                const VarSet& bound) {
    std::vector<std::size_t> parent(idx.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::map<std::uint32_t, std::size_t> owner;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (auto v : free_vars(body[idx[i]], bound)) {
            auto [it, fresh] = owner.emplace(v, i);
            if (!fresh) parent[find(i)] = find(it->second);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < idx.size(); ++i) groups[find(i)].push_back(idx[i]);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

BodyTree order_rec(const std::vector<Literal>& body, std::vector<std::size_t> rest, VarSet bound,
                   const VarSet& protected_vars, const RankContext& ctx, bool decomp) {
    BodyTree out;
    while (!rest.empty()) {
        if (decomp && rest.size() > 1) {
            auto parts = partition(body, rest, bound);
            if (parts.size() > 1) {
                struct Comp {
                    int min_rank, max_rank;
                    std::size_t first;
                    std::vector<std::size_t> goals;
                };
                std::vector<Comp> comps;
                for (auto& part : parts) {
                    Comp c{100, 0, part.front(), part};
                    for (auto i : part) {
                        int r = rank_goal(body[i], bound, ctx);
                        c.min_rank = std::min(c.min_rank, r);
                        c.max_rank = std::max(c.max_rank, r);
                    }
                    comps.push_back(std::move(c));
                }
                std::stable_sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
                    return std::tie(a.min_rank, a.max_rank, a.first) < std::tie(b.min_rank, b.max_rank, b.first);
                });
                for (auto& c : comps) {
                    VarSet fv;
                    for (auto i : c.goals) {
                        auto f = free_vars(body[i], bound);
                        fv.insert(f.begin(), f.end());
                    }
                    bool prune = std::none_of(fv.begin(), fv.end(), [&](auto v) { return protected_vars.count(v) > 0; });
                    if (c.goals.size() == 1 && (fv.empty() || !prune)) {
                        out.push_back({false, c.goals.front(), {}, false});
                        continue;
                    }
                    BodyItem item;
                    item.component = true;
                    item.prune = prune;
                    item.kids = order_rec(body, c.goals, bound, protected_vars, ctx, decomp);
                    out.push_back(std::move(item));
                }
                return out;
            }
        }
        std::size_t best = 0;
        int best_rank = 1000;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            int r = rank_goal(body[rest[k]], bound, ctx);
            if (r < best_rank) {
                best_rank = r;
                best = k;
            }
        }
        std::size_t gi = rest[best];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
        out.push_back({false, gi, {}, false});
        if (!is_orphan_goal(body[gi], ctx)) add_vars(body[gi], bound);
    }
    return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

std::vector<std::size_t> flatten(const BodyTree& t) {
    std::vector<std::size_t> out;
    for (const auto& i : t) {
        if (i.component) {
            auto k = flatten(i.kids);
            out.insert(out.end(), k.begin(), k.end());
        } else {
            out.push_back(i.goal);
        }
    }
    return out;
}

std::vector<std::size_t> order_body(const std::vector<Literal>& body, VarSet bound, const RankContext& ctx) {
    return flatten(order_rec(body, all_indices(body.size()), std::move(bound), {}, ctx, false));
}

BodyTree decompose(const std::vector<Literal>& body, VarSet bound, const VarSet& protected_vars, const RankContext& ctx,
                   bool enabled) {
    return order_rec(body, all_indices(body.size()), std::move(bound), protected_vars, ctx, enabled);
}

// ---- projection and minisets ----

ProjectedLabel link_label(PredName, const AboxLink& l) {
    ProjectedLabel out;
    out.conj.push_back({ProjAtom::Kind::Abox, l.source, 0});
    return out;
}

ProjectedLabel projected_label(const Vocabulary& v, const HornClause& c, const Classification& cls,
                               const CallGraph& g) {
    ProjectedLabel out;
    if (c.head.a1.is_const()) {
        out.conj.push_back({ProjAtom::Kind::Const, {}, c.head.a1.id});
        return out;
    }
    const std::uint32_t x = c.head.a1.id;
    auto is_x = [&](Term t) { return t.is_var() && t.id == x; };
    for (const auto& b : c.body) {
        if (b.is_equality()) continue;
        PredClass k = cls.class_of(b.pred);
        if (k != PredClass::Atomic && k != PredClass::Query) continue;
        if (b.is_unary()) {
            if (is_x(b.a1)) out.conj.push_back({ProjAtom::Kind::Unary, b.pred, 0});
        } else if (is_x(b.a1) && is_x(b.a2)) {
            out.conj.push_back({ProjAtom::Kind::Diag, b.pred, 0});
        } else if (is_x(b.a1)) {
            out.conj.push_back({ProjAtom::Kind::First, b.pred, 0});
        } else if (is_x(b.a2)) {
            out.conj.push_back({ProjAtom::Kind::Second, b.pred, 0});
        }
    }
    if (!out.conj.empty()) {
        std::sort(out.conj.begin(), out.conj.end());
        out.conj.erase(std::unique(out.conj.begin(), out.conj.end()), out.conj.end());
        return out;
    }
    const PredName p = c.head.pred;
    const Literal* pick = nullptr;
    auto key = [&](const Literal* l) { return std::make_pair(l->pred.negated, v.preds.name(l->pred.base)); };
    for (const auto& b : c.body) {
        if (!b.is_unary() || !is_x(b.a1)) continue;
        if (cls.class_of(b.pred) != PredClass::General) continue;
        PredName nb = b.pred.negate();
        if (nb == p || g.reaches(nb, p)) continue;  // DNR invocation
        if (!pick || key(&b) < key(pick)) pick = &b;
    }
    if (pick) {
        out.kind = ProjectedLabel::Kind::Functor;
        out.functor = pick->pred;
    } else {
        out.kind = ProjectedLabel::Kind::All;
    }
    return out;
}

MinisetGraph build_miniset_graph(const RuleProgram& p, const Classification& cls, const CallGraph& g) {
    MinisetGraph m;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const auto& c = p.rules[i];
        if (!c.head.is_unary()) continue;
        m.pred_clauses[c.head.pred].push_back(m.clause_nodes.size());
        m.clause_nodes.push_back({c.head.pred, projected_label(*p.vocab, c, cls, g), static_cast<int>(i)});
    }
    for (const auto& [pred, ls] : p.links) {
        if (pred.arity != 1) continue;
        for (const auto& l : ls) {
            m.pred_clauses[pred].push_back(m.clause_nodes.size());
            m.clause_nodes.push_back({pred, link_label(pred, l), -1});
        }
    }
    return m;
}

void simplify(SupersetExpr& e) {
    if (e.all) {
        e.disjuncts.clear();
        return;
    }
    std::vector<ProjConj> kept;
    for (std::size_t i = 0; i < e.disjuncts.size(); ++i) {
        const auto& d = e.disjuncts[i];
        bool drop = false;
        for (std::size_t j = 0; j < e.disjuncts.size() && !drop; ++j) {
            if (i == j) continue;
            const auto& o = e.disjuncts[j];
            bool sub = std::includes(d.begin(), d.end(), o.begin(), o.end());
            // o is contained in d: d is the more specific branch; equal ones keep the first
            if (sub && (o.size() < d.size() || j < i)) drop = true;
        }
        if (!drop) kept.push_back(d);
    }
    e.disjuncts = std::move(kept);
}

SupersetExpr miniset(PredName p, const MinisetGraph& g) {
    SupersetExpr e;
    std::set<PredName> seen{p};
    std::vector<PredName> todo{p};
    while (!todo.empty()) {
        PredName q = todo.back();
        todo.pop_back();
        auto it = g.pred_clauses.find(q);
        if (it == g.pred_clauses.end()) continue;
        for (auto ni : it->second) {
            const auto& l = g.clause_nodes[ni].label;
            switch (l.kind) {
                case ProjectedLabel::Kind::Set:
                    if (std::find(e.disjuncts.begin(), e.disjuncts.end(), l.conj) == e.disjuncts.end())
                        e.disjuncts.push_back(l.conj);
                    break;
                case ProjectedLabel::Kind::All: e.all = true; break;
                case ProjectedLabel::Kind::Functor:
                    if (seen.insert(l.functor).second) todo.push_back(l.functor);
                    break;
            }
        }
    }
    simplify(e);
    return e;
}

// ---- role axioms ----

namespace {

std::optional<std::pair<RoleRefV, RoleRefV>> as_role_axiom(const HornClause& c) {
    if (!c.head.is_binary() || c.head.pred.negated || c.body.size() != 1) return std::nullopt;
    const Literal& b = c.body[0];
    if (!b.is_binary() || b.pred.negated) return std::nullopt;
    const Term x = c.head.a1, y = c.head.a2;
    if (!x.is_var() || !y.is_var() || x.id == y.id) return std::nullopt;
    RoleRefV super{c.head.pred.base, false};
    if (b.a1 == x && b.a2 == y) return std::make_pair(RoleRefV{b.pred.base, false}, super);
    if (b.a1 == y && b.a2 == x) return std::make_pair(RoleRefV{b.pred.base, true}, super);
    return std::nullopt;
}

// Tarjan over a small explicit graph.
struct Scc {
    std::vector<std::vector<std::size_t>> adj;
    std::vector<int> index, low, comp;
    std::vector<char> on;
    std::vector<std::size_t> st;
    int counter = 0, ncomp = 0;

    void run() {
        std::size_t n = adj.size();
        index.assign(n, -1);
        low.assign(n, 0);
        comp.assign(n, -1);
        on.assign(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            if (index[v] < 0) visit(v);
    }
    void visit(std::size_t v) {
        index[v] = low[v] = counter++;
        st.push_back(v);
        on[v] = 1;
        for (auto w : adj[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            for (;;) {
                auto w = st.back();
                st.pop_back();
                on[w] = 0;
                comp[w] = ncomp;
                if (w == v) break;
            }
            ++ncomp;
        }
    }
};

}  // namespace

RoleTransformResult transform_roles(const RuleProgram& p) {
    RoleTransformResult res;
    RolePlan& plan = res.plan;
    const Vocabulary& voc = *p.vocab;

    std::set<SymbolId> roles;
    for (const auto& pr : p.predicates())
        if (pr.arity == 2 && !pr.negated) roles.insert(pr.base);
    std::vector<char> is_axiom(p.rules.size(), 0);
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        if (auto ax = as_role_axiom(p.rules[i])) {
            plan.axioms.push_back(*ax);
            is_axiom[i] = 1;
        }
    }
    if (plan.axioms.empty()) {
        res.prog = p;
        for (auto r : roles) {
            plan.repr[r] = r;
            plan.same_side[r] = true;
        }
        return res;
    }

    std::vector<RoleRefV> verts;
    std::map<RoleRefV, std::size_t> vid;
    for (auto r : roles)
        for (bool inv : {false, true}) {
            vid[{r, inv}] = verts.size();
            verts.push_back({r, inv});
        }
    Scc scc;
    scc.adj.resize(verts.size());
    for (const auto& [sub, sup] : plan.axioms) {
        scc.adj[vid.at(sub)].push_back(vid.at(sup));
        scc.adj[vid.at({sub.role, !sub.inverse})].push_back(vid.at({sup.role, !sup.inverse}));
    }
    scc.run();
    plan.components.assign(static_cast<std::size_t>(scc.ncomp), {});
    for (std::size_t v = 0; v < verts.size(); ++v) plan.components[static_cast<std::size_t>(scc.comp[v])].push_back(verts[v]);
    auto comp_of = [&](RoleRefV r) { return scc.comp[vid.at(r)]; };

    // class of a role: its component together with the inverse component
    for (auto r : roles) {
        if (plan.repr.count(r)) continue;
        int c1 = comp_of({r, false}), c2 = comp_of({r, true});
        std::vector<SymbolId> members;
        for (const auto& m : plan.components[static_cast<std::size_t>(c1)]) members.push_back(m.role);
        for (const auto& m : plan.components[static_cast<std::size_t>(c2)]) members.push_back(m.role);
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        SymbolId rep = *std::min_element(members.begin(), members.end(), [&](SymbolId a, SymbolId b) {
            return voc.preds.name(a) < voc.preds.name(b);
        });
        int rc = comp_of({rep, false});
        bool sym = rc == comp_of({rep, true});
        if (sym) plan.symmetric.insert(rep);
        for (auto m : members) {
            plan.repr[m] = rep;
            plan.same_side[m] = comp_of({m, false}) == rc;
        }
    }

    const auto vocab = p.vocab;
    std::map<SymbolId, PredName> base_pred;
    std::set<SymbolId> used;
    for (const auto& q : p.predicates()) used.insert(q.base);
    for (auto rep : plan.symmetric) {
        std::string name = "base_" + voc.preds.name(rep);
        // The parsers reserve the prefix, so a clash can only come from a hand-built program.
        auto existing = voc.preds.find(name);
        if (existing && used.count(*existing)) throw std::runtime_error("role name collides with reserved " + name);
        base_pred[rep] = PredName{vocab->preds.intern(name), false, 2};
    }
    auto rewrite = [&](Literal l, bool head) {
        if (!l.is_binary() || l.pred.negated) return l;
        SymbolId orig = l.pred.base;
        SymbolId rep = plan.repr.at(orig);
        if (head && plan.symmetric.count(rep)) l.pred = base_pred.at(rep);
        else l.pred.base = rep;
        if (!plan.same_side.at(orig)) std::swap(l.a1, l.a2);
        return l;
    };

    RuleProgram& out = res.prog;
    out.vocab = p.vocab;
    auto push_unique = [&](HornClause c) {
        for (const auto& e : out.rules)
            if (e.head == c.head && e.body == c.body) return;
        out.rules.push_back(std::move(c));
    };
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const auto& c = p.rules[i];
        if (is_axiom[i]) {
            auto [sub, sup] = *as_role_axiom(c);
            if (plan.repr.at(sub.role) == plan.repr.at(sup.role)) continue;
        }
        HornClause n = c;
        n.head = rewrite(n.head, true);
        for (auto& b : n.body) b = rewrite(b, false);
        push_unique(std::move(n));
    }
    auto role_clause = [&](PredName head, PredName body, bool swap, std::uint32_t src) {
        HornClause c;
        c.head = Literal::binary(head, Term::var(0), Term::var(1));
        c.body.push_back(swap ? Literal::binary(body, Term::var(1), Term::var(0))
                              : Literal::binary(body, Term::var(0), Term::var(1)));
        c.var_names = {"X", "Y"};
        c.source = src;
        return c;
    };
    for (auto rep : plan.symmetric) {
        PredName rr{rep, false, 2};
        push_unique(role_clause(rr, base_pred.at(rep), false, 0));
        push_unique(role_clause(rr, base_pred.at(rep), true, 0));
    }
    for (auto r : roles) {
        SymbolId rep = plan.repr.at(r);
        if (rep == r) continue;
        push_unique(role_clause({r, false, 2}, {rep, false, 2}, !plan.same_side.at(r), 0));
    }
    for (const auto& [pred, ls] : p.links) {
        if (pred.arity != 2 || pred.negated || !roles.count(pred.base)) {
            auto& dst = out.links[pred];
            dst.insert(dst.end(), ls.begin(), ls.end());
            continue;
        }
        SymbolId rep = plan.repr.at(pred.base);
        PredName owner = plan.symmetric.count(rep) ? base_pred.at(rep) : PredName{rep, false, 2};
        for (const auto& l : ls) {
            AboxLink nl{l.source, l.swapped != !plan.same_side.at(pred.base)};
            auto& dst = out.links[owner];
            if (std::find(dst.begin(), dst.end(), nl) == dst.end()) dst.push_back(nl);
        }
    }
    return res;
}

// ---- dumps ----

std::string proj_atom_text(const Vocabulary& v, const ProjAtom& a) {
    std::string n = a.kind == ProjAtom::Kind::Const ? "" : pred_text(v, a.pred);
    switch (a.kind) {
        case ProjAtom::Kind::Const: return "X=" + const_text(v, a.constant);
        case ProjAtom::Kind::Abox: return "abox:" + n + (a.pred.arity == 1 ? "(X)" : "(X,_)");
        case ProjAtom::Kind::Unary: return n + "(X)";
        case ProjAtom::Kind::First: return n + "(X,_)";
        case ProjAtom::Kind::Second: return n + "(_,X)";
        case ProjAtom::Kind::Diag: return n + "(X,X)";
    }
    return "?";
}

std::string superset_text(const Vocabulary& v, const SupersetExpr& e) {
    if (e.all) return "all";
    if (e.disjuncts.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < e.disjuncts.size(); ++i) {
        if (i) out += " ; ";
        for (std::size_t j = 0; j < e.disjuncts[i].size(); ++j) {
            if (j) out += ", ";
            out += proj_atom_text(v, e.disjuncts[i][j]);
        }
    }
    return out;
}

std::string dump_call_graph(const Vocabulary& v, const CallGraph& g) {
    std::ostringstream os;
    for (const auto& n : g.nodes()) {
        os << "calls " << pred_text(v, n) << "/" << int(n.arity) << " :";
        for (const auto& c : g.callees(n)) os << " " << pred_text(v, c) << "/" << int(c.arity);
        os << "\n";
    }
    for (const auto& a : g.nodes()) {
        os << "reach " << pred_text(v, a) << "/" << int(a.arity) << " :";
        for (const auto& b : g.nodes())
            if (g.reaches(a, b)) os << " " << pred_text(v, b) << "/" << int(b.arity);
        os << "\n";
    }
    return os.str();
}

std::string dump_classification(const Vocabulary& v, const Classification& c) {
    std::ostringstream os;
    for (const auto& [p, in] : c.info) {
        os << pred_text(v, p) << "/" << int(p.arity) << " " << class_name(in.cls);
        if (in.cls == PredClass::General) {
            if (in.recursive) os << " recursive";
            if (in.anr) os << " anr";
            if (in.dnr) os << " dnr";
        }
        os << " rules=" << in.rules << " links=" << in.links << "\n";
    }
    return os.str();
}

std::string dump_miniset_graph(const Vocabulary& v, const MinisetGraph& g) {
    std::ostringstream os;
    for (const auto& [pred, nodes] : g.pred_clauses) {
        os << "pred " << pred_text(v, pred) << "/1 :";
        for (auto n : nodes) os << " c" << n;
        os << "\n";
    }
    for (std::size_t i = 0; i < g.clause_nodes.size(); ++i) {
        const auto& n = g.clause_nodes[i];
        os << "clause c" << i << " " << pred_text(v, n.owner) << " ";
        if (n.rule >= 0) os << "rule " << n.rule;
        else os << "link";
        os << " -> ";
        switch (n.label.kind) {
            case ProjectedLabel::Kind::Set: {
                SupersetExpr e;
                e.disjuncts.push_back(n.label.conj);
                os << "set " << superset_text(v, e);
                break;
            }
            case ProjectedLabel::Kind::Functor: os << "functor " << pred_text(v, n.label.functor) << "/1"; break;
            case ProjectedLabel::Kind::All: os << "all"; break;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace horndl
