#include "horndl/planner.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace horndl {

Options named_options(const std::string& name) {
    Options o;
    if (name == "base") return o;
    if (name == "g(n)") o.ground_optim = false;
    else if (name == "p(n)") o.projection = false;
    else if (name == "f(n)") o.filtering = false;
    else if (name == "i(n)") o.indexing = false;
    else if (name == "o(n)") o.orphan = OrphanMode::General;
    else if (name == "d(n)") o.decompose = false;
    else if (name == "pd(n)") o.projection = o.decompose = false;
    else if (name == "od(n)") {
        o.orphan = OrphanMode::General;
        o.decompose = false;
    } else {
        throw std::invalid_argument("unknown option setting " + name);
    }
    return o;
}

const std::vector<std::string>& option_menu() {
    static const std::vector<std::string> menu{"base", "g(n)", "p(n)", "f(n)", "i(n)",
                                               "o(n)", "d(n)", "pd(n)", "od(n)"};
    return menu;
}

std::string options_text(const Options& o) {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream os;
    os << "decompose=" << yn(o.decompose) << " indexing=" << yn(o.indexing) << " projection=" << yn(o.projection)
       << " filtering=" << yn(o.filtering) << " ground_optim=" << yn(o.ground_optim)
       << " orphan=" << (o.orphan == OrphanMode::First ? "first" : "general") << " hashing=" << yn(o.hashing);
    return os.str();
}

const CompiledPredicate* CompiledProgram::find(PredName p) const {
    auto it = preds.find(p);
    return it == preds.end() ? nullptr : &it->second;
}

namespace {

bool term_bound(Term t, const VarSet& v) { return t.is_const() || v.count(t.id) > 0; }

void add_vars(const Literal& l, VarSet& v) {
    if (l.a1.is_var()) v.insert(l.a1.id);
    if (!l.is_unary() && l.a2.is_var()) v.insert(l.a2.id);
}

struct Lowering {
    const CompiledProgram& cp;
    bool query = false;  // goals run with an empty ancestor context

    PlanItem goal(const Literal& g, VarSet& v) const {
        PlanItem it;
        it.a1 = g.a1;
        it.a2 = g.a2;
        it.pred = g.pred;
        it.bound = static_cast<std::uint8_t>((term_bound(g.a1, v) ? 1 : 0) |
                                             (!g.is_unary() && term_bound(g.a2, v) ? 2 : 0));
        if (g.is_equality()) {
            it.kind = PlanItem::Kind::NonIdentity;
            return it;
        }
        PredClass c = cp.cls.class_of(g.pred);
        bool has_plan = cp.preds.count(g.pred) > 0;
        if (g.is_binary()) {
            if (has_plan) {
                it.kind = PlanItem::Kind::Call;
                it.mode = CallMode::Plain;
            } else {
                it.kind = PlanItem::Kind::FactBinary;
                it.index = cp.opts.indexing;
            }
            add_vars(g, v);
            return it;
        }
        if (c == PredClass::Orphan) {
            it.kind = PlanItem::Kind::Orphan;
            return it;  // may bind its argument only at run time
        }
        if (!has_plan) {
            it.kind = PlanItem::Kind::FactUnary;
        } else {
            it.kind = PlanItem::Kind::Call;
            bool ground = it.bound & 1;
            if (query) it.mode = CallMode::Entry;
            else if (!cp.opts.ground_optim) it.mode = CallMode::Plain;
            else it.mode = ground ? CallMode::Det : CallMode::Choice;
        }
        add_vars(g, v);
        return it;
    }

    std::vector<PlanItem> tree(const std::vector<Literal>& body, const BodyTree& t, VarSet& v) const {
        std::vector<PlanItem> out;
        for (const auto& b : t) {
            if (!b.component) {
                out.push_back(goal(body[b.goal], v));
                continue;
            }
            PlanItem c;
            c.kind = PlanItem::Kind::Component;
            c.prune = b.prune;
            VarSet inner = v;
            c.kids = tree(body, b.kids, inner);
            v = std::move(inner);
            out.push_back(std::move(c));
        }
        return out;
    }
};

bool uses(const PlanItem& it, PredName target, const CallGraph& g) {
    switch (it.kind) {
        case PlanItem::Kind::Call: return it.pred == target || g.reaches(it.pred, target);
        case PlanItem::Kind::Orphan: return it.pred == target;
        case PlanItem::Kind::Component:
            return std::any_of(it.kids.begin(), it.kids.end(), [&](const PlanItem& k) { return uses(k, target, g); });
        default: return false;
    }
}

// Whether goals on Q consult the ancestor context for not_Q.
bool consults_ancestors(const CompiledProgram& cp, PredName q) {
    if (q.arity != 1) return false;
    const PredInfo* in = cp.cls.find(q);
    if (!in) return false;
    return in->cls == PredClass::Orphan || (in->cls == PredClass::General && in->dnr);
}

enum class Variant { Det, Nondet, Plain };

PlanClause compile_clause(const CompiledProgram& cp, const HornClause& c, int rule, Variant variant) {
    PlanClause pc;
    pc.head = c.head;
    pc.var_names = c.var_names;
    pc.num_vars = c.num_vars();
    pc.rule = rule;
    pc.det_cut = variant == Variant::Det;

    const PredName p = c.head.pred;
    VarSet bound, prot;
    RankContext ctx{&cp.cls, cp.opts.orphan, std::nullopt};
    if (c.head.a1.is_var()) ctx.head_var = c.head.a1.id;
    if (variant == Variant::Det) {
        add_vars(c.head, bound);
    } else {
        add_vars(c.head, prot);
    }
    BodyTree t = decompose(c.body, bound, prot, ctx, cp.opts.decompose);
    Lowering low{cp, false};
    VarSet v = bound;
    std::vector<PlanItem> items = low.tree(c.body, t, v);

    const PredInfo* in = cp.cls.find(p);
    bool loop_push = in && in->recursive && cp.graph.clause_reaches(c, p);
    bool anc_push = consults_ancestors(cp, p.negate()) && cp.graph.clause_reaches(c, p.negate());

    auto place = [&](PlanItem::Kind kind, PredName target) {
        PlanItem push;
        push.kind = kind;
        push.pred = p;
        push.a1 = c.head.a1;
        push.a2 = c.head.a2;
        auto at = std::find_if(items.begin(), items.end(), [&](const PlanItem& it) { return uses(it, target, cp.graph); });
        items.insert(at, push);
    };
    if (loop_push) place(PlanItem::Kind::LoopPush, p);
    if (anc_push) place(PlanItem::Kind::AncPush, p.negate());
    // pops in reverse push order
    std::vector<PlanItem::Kind> pops;
    for (const auto& it : items) {
        if (it.kind == PlanItem::Kind::LoopPush) pops.push_back(PlanItem::Kind::LoopPop);
        if (it.kind == PlanItem::Kind::AncPush) pops.push_back(PlanItem::Kind::AncPop);
    }
    for (auto k = pops.rbegin(); k != pops.rend(); ++k) {
        PlanItem pop;
        pop.kind = *k;
        pop.pred = p;
        items.push_back(pop);
    }
    pc.body = std::move(items);
    return pc;
}

bool dead_at_entry(const CompiledProgram& cp, const HornClause& c) {
    for (const auto& g : c.body) {
        if (g.is_equality() || !g.is_unary()) continue;
        // at entry the only ancestor an orphan goal can see is the clause head
        if (cp.cls.class_of(g.pred) == PredClass::Orphan && g.pred.negate() != c.head.pred) return true;
    }
    return false;
}

void collect_inverted(const std::vector<PlanItem>& items, std::set<PredName>& out) {
    for (const auto& it : items) {
        if (it.kind == PlanItem::Kind::FactBinary && it.index && it.bound == 2) out.insert(it.pred);
        if (it.kind == PlanItem::Kind::Component) collect_inverted(it.kids, out);
    }
}

}  // namespace

CompiledProgram compile_program(const HornProgram& prog, const std::set<PredName>& fact_preds, const Options& opts) {
    CompiledProgram cp;
    cp.vocab = prog.vocab;
    cp.opts = opts;

    RuleProgram rp = make_rule_program(prog, fact_preds);
    auto rt = transform_roles(rp);
    cp.roles = std::move(rt.plan);
    Analysis an = analyze(std::move(rt.prog), opts.filtering);
    cp.prog = std::move(an.prog);
    cp.graph = std::move(an.graph);
    cp.cls = std::move(an.cls);
    cp.removed = std::move(an.removed);
    cp.minisets = build_miniset_graph(cp.prog, cp.cls, cp.graph);

    Signature sig = signature_of(prog);
    cp.known.insert(sig.unary.begin(), sig.unary.end());
    cp.known.insert(sig.binary.begin(), sig.binary.end());
    cp.known.insert(fact_preds.begin(), fact_preds.end());
    for (const auto& p : cp.prog.predicates()) cp.known.insert(p);

    for (const auto& c : cp.prog.rules) {
        for (const Literal* l : {&c.head}) {
            if (l->a1.is_const()) cp.constants.push_back(l->a1.id);
            if (!l->is_unary() && l->a2.is_const()) cp.constants.push_back(l->a2.id);
        }
        for (const auto& l : c.body) {
            if (l.a1.is_const()) cp.constants.push_back(l.a1.id);
            if (!l.is_unary() && l.a2.is_const()) cp.constants.push_back(l.a2.id);
        }
    }
    std::sort(cp.constants.begin(), cp.constants.end());
    cp.constants.erase(std::unique(cp.constants.begin(), cp.constants.end()), cp.constants.end());

    std::map<PredName, std::vector<int>> rules_of;
    for (std::size_t i = 0; i < cp.prog.rules.size(); ++i) rules_of[cp.prog.rules[i].head.pred].push_back(int(i));

    // First create every compiled predicate so that lowering sees which goals are calls.
    for (const auto& [p, in] : cp.cls.info) {
        if (in.cls != PredClass::General && in.cls != PredClass::Query) continue;
        CompiledPredicate& c = cp.preds[p];
        c.pred = p;
        c.cls = in.cls;
        c.info = in;
        if (auto it = cp.prog.links.find(p); it != cp.prog.links.end()) c.links = it->second;
    }
    for (auto& [p, c] : cp.preds) {
        const auto& rules = rules_of[p];
        bool general = c.cls == PredClass::General;
        auto build = [&](VariantPlan& vp, Variant variant) {
            vp.present = true;
            vp.loop_guard = general && c.info.recursive;
            vp.anc_guard = general && c.info.dnr && p.arity == 1;
            vp.det = variant == Variant::Det;
            for (int r : rules) vp.clauses.push_back(compile_clause(cp, cp.prog.rules[std::size_t(r)], r, variant));
        };
        if (p.arity == 1 && opts.ground_optim) {
            build(c.det, Variant::Det);
            build(c.nondet, Variant::Nondet);
        } else {
            build(c.plain, Variant::Plain);
        }
        if (p.arity != 1) continue;

        bool live = false, only_atomic = true;
        for (int r : rules) {
            const auto& hc = cp.prog.rules[std::size_t(r)];
            if (!opts.projection || !dead_at_entry(cp, hc)) live = true;
            for (const auto& g : hc.body)
                if (!g.is_equality() && cp.cls.class_of(g.pred) != PredClass::Atomic) only_atomic = false;
        }
        if (!live) {
            c.entry.kind = EntryPlan::Kind::Lookup;
            continue;
        }
        if (opts.projection && !only_atomic) {
            SupersetExpr e = miniset(p, cp.minisets);
            if (!e.all) {
                c.entry.use_superset = true;
                c.entry.superset = std::move(e);
            }
        }
    }
    for (const auto& [p, c] : cp.preds)
        for (const VariantPlan* vp : {&c.det, &c.nondet, &c.plain})
            for (const auto& cl : vp->clauses) collect_inverted(cl.body, cp.inverted_needed);
    if (opts.indexing)
        for (const auto& [p, c] : cp.preds)
            for (const auto& l : c.links)
                if (l.source.arity == 2) cp.inverted_needed.insert(l.source);
    return cp;
}

std::vector<PlanItem> plan_query(const CompiledProgram& cp, const ConjQuery& q) {
    VarSet prot;
    for (std::uint32_t i = 0; i < q.var_names.size(); ++i) prot.insert(i);
    RankContext ctx{&cp.cls, cp.opts.orphan, std::nullopt};
    BodyTree t = decompose(q.goals, {}, prot, ctx, cp.opts.decompose);
    Lowering low{cp, true};
    VarSet v;
    return low.tree(q.goals, t, v);
}

// ---- readable output ----

namespace {

class Namer {
public:
    std::string term(const Vocabulary& v, Term t) {
        if (t.is_const()) return const_text(v, t.id);
        auto it = names_.find(t.id);
        if (it != names_.end()) return it->second;
        return names_[t.id] = fresh();
    }
    std::string fresh() {
        std::size_t k = next_++;
        std::string s(1, char('A' + k % 26));
        if (k >= 26) s += std::to_string(k / 26);
        return s;
    }

private:
    std::map<std::uint32_t, std::string> names_;
    std::size_t next_ = 0;
};

// Names are handed out by first occurrence, so every call below is sequenced.
std::string args(const Vocabulary& v, Namer& n, PredName p, Term a1, Term a2, bool swap = false) {
    if (p.arity == 1) return "(" + n.term(v, a1) + ")";
    if (swap) std::swap(a1, a2);
    std::string first = n.term(v, a1);
    std::string second = n.term(v, a2);
    return "(" + first + "," + second + ")";
}

const char* mode_prefix(CallMode m) {
    switch (m) {
        case CallMode::Det: return "det_";
        case CallMode::Choice: return "choice_";
        case CallMode::Plain: return "";
        case CallMode::Entry: return "entry_";
    }
    return "";
}

std::string items_text(const Vocabulary& v, Namer& n, const std::vector<PlanItem>& items) {
    std::string out;
    for (const auto& it : items) {
        if (!out.empty()) out += ", ";
        std::string name = pred_text(v, it.pred);
        switch (it.kind) {
            case PlanItem::Kind::FactUnary: out += name + args(v, n, it.pred, it.a1, it.a2); break;
            case PlanItem::Kind::FactBinary:
                if (it.index && it.bound == 2) out += "idx_" + name + args(v, n, it.pred, it.a1, it.a2, true);
                else out += name + args(v, n, it.pred, it.a1, it.a2);
                break;
            case PlanItem::Kind::Call:
                out += (it.pred.arity == 1 ? mode_prefix(it.mode) : "") + name + args(v, n, it.pred, it.a1, it.a2);
                break;
            case PlanItem::Kind::Orphan:
                out += "anc_member(" + pred_text(v, it.pred.negate()) + args(v, n, it.pred, it.a1, it.a2) + ")";
                break;
            case PlanItem::Kind::NonIdentity: out += n.term(v, it.a1) + " \\= " + n.term(v, it.a2); break;
            case PlanItem::Kind::Component:
                out += "( " + items_text(v, n, it.kids) + (it.prune ? " -> true )" : " )");
                break;
            case PlanItem::Kind::LoopPush: out += "loop_push(" + name + args(v, n, it.pred, it.a1, it.a2) + ")"; break;
            case PlanItem::Kind::LoopPop: out += "loop_pop"; break;
            case PlanItem::Kind::AncPush: out += "anc_push(" + name + args(v, n, it.pred, it.a1, it.a2) + ")"; break;
            case PlanItem::Kind::AncPop: out += "anc_pop"; break;
        }
    }
    return out;
}

std::string superset_goal(const Vocabulary& v, const SupersetExpr& e) {
    std::vector<std::string> ds;
    for (const auto& d : e.disjuncts) {
        std::string s;
        int fresh = 0;
        auto fv = [&]() { return std::string(1, char('B' + fresh++)); };
        for (const auto& a : d) {
            if (!s.empty()) s += ", ";
            std::string nm = a.kind == ProjAtom::Kind::Const ? "" : pred_text(v, a.pred);
            switch (a.kind) {
                case ProjAtom::Kind::Const: s += "A = " + const_text(v, a.constant); break;
                case ProjAtom::Kind::Abox: s += "abox:" + nm + (a.pred.arity == 1 ? "(A)" : "(A," + fv() + ")"); break;
                case ProjAtom::Kind::Unary: s += nm + "(A)"; break;
                case ProjAtom::Kind::First: s += nm + "(A," + fv() + ")"; break;
                case ProjAtom::Kind::Second: s += nm + "(" + fv() + ",A)"; break;
                case ProjAtom::Kind::Diag: s += nm + "(A,A)"; break;
            }
        }
        ds.push_back(s);
    }
    if (ds.size() == 1) return ds[0];
    std::string out = "( ";
    for (std::size_t i = 0; i < ds.size(); ++i) out += (i ? " ; " : "") + ds[i];
    return out + " )";
}

void emit_variant(std::ostream& os, const Vocabulary& v, const CompiledPredicate& c, const VariantPlan& vp,
                  const std::string& prefix) {
    if (!vp.present) return;
    const std::string name = prefix + pred_text(v, c.pred);
    const std::string cut = vp.det ? ", !" : "";
    Term x = Term::var(0), y = Term::var(1);
    auto head = [&](Namer& n) { return name + args(v, n, c.pred, x, y); };
    if (vp.loop_guard) {
        Namer n;
        std::string h = head(n);
        os << h << " :- loop_member(" << pred_text(v, c.pred) << args(v, n, c.pred, x, y) << "), !, fail.\n";
    }
    if (vp.anc_guard) {
        Namer n;
        std::string h = head(n);
        os << h << " :- anc_member(" << pred_text(v, c.pred.negate()) << args(v, n, c.pred, x, y) << ")" << cut
           << ".\n";
    }
    for (const auto& l : c.links) {
        Namer n;
        std::string h = head(n);
        os << h << " :- abox:" << pred_text(v, l.source) << args(v, n, l.source, x, y, l.swapped) << cut << ".\n";
    }
    for (const auto& cl : vp.clauses) {
        Namer n;
        std::string h = name + args(v, n, c.pred, cl.head.a1, cl.head.a2);
        std::string b = items_text(v, n, cl.body);
        os << h;
        if (!b.empty() || vp.det) os << " :- " << (b.empty() ? "true" : b) << cut;
        os << ".\n";
    }
}

}  // namespace

std::string plan_items_text(const CompiledProgram& cp, const std::vector<PlanItem>& items) {
    Namer n;
    return items_text(*cp.vocab, n, items);
}

std::string emit_readable(const CompiledProgram& cp) {
    const Vocabulary& v = *cp.vocab;
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : cp.preds) {
        if (!first) os << "\n";
        first = false;
        const std::string pn = pred_text(v, p);
        if (p.arity == 1 && c.entry.kind == EntryPlan::Kind::Lookup) {
            if (c.links.empty()) os << "entry_" << pn << "(A) :- fail.\n";
            for (const auto& l : c.links) os << "entry_" << pn << "(A) :- abox:" << pred_text(v, l.source) << "(A).\n";
        } else if (p.arity == 1 && c.entry.use_superset) {
            std::string callee = cp.opts.ground_optim ? "det_" + pn : pn;
            os << "entry_" << pn << "(A) :- ( nonvar(A) -> " << callee << "(A) ; setof(A, "
               << superset_goal(v, c.entry.superset) << ", S), member(A, S), once(" << callee << "(A)) ).\n";
        }
        if (c.det.present)
            os << "choice_" << pn << "(A) :- ( nonvar(A) -> det_" << pn << "(A) ; nondet_" << pn << "(A) ).\n";
        emit_variant(os, v, c, c.det, "det_");
        emit_variant(os, v, c, c.nondet, "nondet_");
        emit_variant(os, v, c, c.plain, "");
    }
    return os.str();
}

}  // namespace horndl
