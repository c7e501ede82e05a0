#include "horndl/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace horndl {

// ---- ancestor context ----

Cell AncestorContext::deref(Cell v) const {
    const auto& c = *cells_;
    while (!(v & kConstBit) && c[v] != v) v = c[v];
    return v;
}

void AncestorContext::push(PredName p, Cell v1, Cell v2) {
    Entry e{p, deref(v1), p.arity == 2 ? deref(v2) : 0, false};
    bool ground = (e.v1 & kConstBit) && (p.arity == 1 || (e.v2 & kConstBit));
    if (hashing_ && ground) {
        e.hashed = true;
        ++counts_[{p.key(), e.v1, e.v2}];
    } else {
        side_.push_back(static_cast<std::uint32_t>(stack_.size()));
    }
    stack_.push_back(e);
}

AncestorContext::Entry AncestorContext::pop() {
    Entry e = stack_.back();
    stack_.pop_back();
    if (e.hashed) {
        auto it = counts_.find({e.pred.key(), e.v1, e.v2});
        if (--it->second == 0) counts_.erase(it);
    } else {
        side_.pop_back();
    }
    return e;
}

void AncestorContext::restore(const Entry& e) {
    if (e.hashed) ++counts_[{e.pred.key(), e.v1, e.v2}];
    else side_.push_back(static_cast<std::uint32_t>(stack_.size()));
    stack_.push_back(e);
}

bool AncestorContext::same(const Entry& e, PredName p, Cell v1, Cell v2) const {
    return e.pred == p && deref(e.v1) == v1 && (p.arity == 1 || deref(e.v2) == v2);
}

bool AncestorContext::contains(PredName p, Cell v1, Cell v2) const {
    v1 = deref(v1);
    v2 = p.arity == 2 ? deref(v2) : 0;
    bool ground = (v1 & kConstBit) && (p.arity == 1 || (v2 & kConstBit));
    if (hashing_ && ground && counts_.count({p.key(), v1, v2})) return true;
    for (auto it = side_.rbegin(); it != side_.rend(); ++it)
        if (same(stack_[*it], p, v1, v2)) return true;
    return false;
}

void AncestorContext::matches(PredName p, Cell v, std::vector<Cell>& out) const {
    v = deref(v);
    auto add = [&](Cell x) {
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    };
    if (v & kConstBit) {
        if (hashing_ && counts_.count({p.key(), v, 0})) add(v);
        for (auto it = side_.rbegin(); it != side_.rend(); ++it) {
            const Entry& e = stack_[*it];
            if (e.pred != p) continue;
            Cell ev = deref(e.v1);
            if (ev == v || !(ev & kConstBit)) add(ev);
        }
        return;
    }
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
        if (it->pred == p) add(deref(it->v1));
}

// ---- machine ----

namespace {

Cell cval(SymbolId c) { return c | kConstBit; }
bool is_const(Cell v) { return (v & kConstBit) != 0; }

struct Cursor {
    enum class Kind : std::uint8_t { None, Single, Units, Firsts, Seconds, Pairs };
    Kind kind = Kind::None;
    const SymbolId* ids = nullptr;
    const ConstPair* pairs = nullptr;
    std::uint32_t n = 0, i = 0;
    SymbolId f1 = 0, f2 = 0;
    bool filter2 = false;

    bool next(SymbolId& x, SymbolId& y) {
        switch (kind) {
            case Kind::None: return false;
            case Kind::Single:
                kind = Kind::None;
                x = f1;
                y = f2;
                return true;
            case Kind::Units:
                if (i >= n) return false;
                x = ids[i++];
                return true;
            case Kind::Firsts:
                if (i >= n) return false;
                x = ids[i++];
                y = f2;
                return true;
            case Kind::Seconds:
                if (i >= n) return false;
                x = f1;
                y = ids[i++];
                return true;
            case Kind::Pairs:
                while (i < n) {
                    const ConstPair& p = pairs[i++];
                    if (filter2 && p.second != f2) continue;
                    x = p.first;
                    y = p.second;
                    return true;
                }
                return false;
        }
        return false;
    }
    bool done() const { return kind == Kind::None || (kind != Kind::Single && i >= n); }
    bool one_left() const {
        return kind == Kind::Units || kind == Kind::Firsts || kind == Kind::Seconds ? n - i == 1 : false;
    }
};

// s1 and s2 are dereferenced values of the relation's own argument order.
Cursor open_cursor(const FactSource& s, PredName rel, Cell s1, Cell s2, bool use_index) {
    Cursor c;
    auto r = s.resolve(rel);
    if (!r) return c;
    if (rel.arity == 1) {
        if (is_const(s1)) {
            if (s.unary_contains(*r, s1 & ~kConstBit)) {
                c.kind = Cursor::Kind::Single;
                c.f1 = s1 & ~kConstBit;
            }
            return c;
        }
        auto sp = s.unary_scan(*r);
        c.kind = Cursor::Kind::Units;
        c.ids = sp.data();
        c.n = static_cast<std::uint32_t>(sp.size());
        return c;
    }
    bool c1 = is_const(s1), c2 = is_const(s2);
    SymbolId x = s1 & ~kConstBit, y = s2 & ~kConstBit;
    if (c1 && c2) {
        if (s.binary_contains(*r, x, y)) {
            c.kind = Cursor::Kind::Single;
            c.f1 = x;
            c.f2 = y;
        }
        return c;
    }
    if (c1) {
        auto sp = s.successors(*r, x);
        c.kind = Cursor::Kind::Seconds;
        c.f1 = x;
        c.ids = sp.data();
        c.n = static_cast<std::uint32_t>(sp.size());
        return c;
    }
    if (c2 && use_index && s.has_inverted(*r)) {
        auto sp = s.predecessors(*r, y);
        c.kind = Cursor::Kind::Firsts;
        c.f2 = y;
        c.ids = sp.data();
        c.n = static_cast<std::uint32_t>(sp.size());
        return c;
    }
    auto sp = s.binary_scan(*r);
    c.kind = Cursor::Kind::Pairs;
    c.pairs = sp.data();
    c.n = static_cast<std::uint32_t>(sp.size());
    c.filter2 = c2;
    c.f2 = y;
    return c;
}

struct Frame {
    const PlanItem* items;
    std::uint32_t n;
    std::uint32_t base;
    std::int32_t parent;
    std::uint32_t parent_pc;
    std::uint32_t barrier;
    bool cut;
};

enum class CpKind : std::uint8_t { Alts, Facts, Anc, Superset };

struct ChoicePoint {
    CpKind kind;
    std::uint32_t trail, cells, frames, scratch;
    std::int32_t cont_frame;
    std::uint32_t cont_pc;
    Cell a1 = 0, a2 = 0;
    const CompiledPredicate* pred = nullptr;
    const VariantPlan* vp = nullptr;  // Alts: nullptr means links only; Superset: the callee
    std::uint8_t phase = 0;
    bool open = false;
    std::uint32_t idx = 0;
    std::uint32_t link = 0;
    Cursor cur;
    std::uint32_t moff = 0, mlen = 0;
    const SymbolId* cands = nullptr;
};

enum class TrailKind : std::uint8_t { Bind, LoopPush, LoopPop, AncPush, AncPop };

struct TrailEntry {
    TrailKind kind;
    Cell cell;
    AncestorContext::Entry entry;
};

class Machine {
public:
    Machine(const CompiledProgram& cp, const FactSource& store, EngineOptions eo)
        : cp_(cp), store_(store), eo_(eo), loop_(cp.opts.hashing, &cells_), anc_(cp.opts.hashing, &cells_) {}

    template <class F>
    void run(const std::vector<PlanItem>& items, std::uint32_t nvars, F&& on_solution);

    Stats stats;

private:
    Cell deref(Cell v) const {
        while (!is_const(v) && cells_[v] != v) v = cells_[v];
        return v;
    }
    void bind(Cell c, Cell to) {
        cells_[c] = to;
        trail_.push_back({TrailKind::Bind, c, {}});
    }
    bool unify(Cell a, Cell b) {
        a = deref(a);
        b = deref(b);
        if (a == b) return true;
        if (!is_const(a) && !is_const(b)) {
            if (a > b) bind(a, b);
            else bind(b, a);
            return true;
        }
        if (!is_const(a)) {
            bind(a, b);
            return true;
        }
        if (!is_const(b)) {
            bind(b, a);
            return true;
        }
        return false;
    }
    Cell new_cell() {
        auto v = static_cast<Cell>(cells_.size());
        cells_.push_back(v);
        return v;
    }
    static Cell val(Term t, std::uint32_t base) { return t.is_const() ? cval(t.id) : base + t.id; }

    void undo_trail(std::size_t mark) {
        while (trail_.size() > mark) {
            const TrailEntry& t = trail_.back();
            switch (t.kind) {
                case TrailKind::Bind: cells_[t.cell] = t.cell; break;
                case TrailKind::LoopPush: loop_.pop(); break;
                case TrailKind::LoopPop: loop_.restore(t.entry); break;
                case TrailKind::AncPush: anc_.pop(); break;
                case TrailKind::AncPop: anc_.restore(t.entry); break;
            }
            trail_.pop_back();
        }
    }
    void undo_to(const ChoicePoint& cp) {
        undo_trail(cp.trail);
        cells_.resize(cp.cells);
        frames_.resize(cp.frames);
        scratch_.resize(cp.scratch);
    }
    ChoicePoint& push_cp(CpKind k, std::int32_t cont_frame, std::uint32_t cont_pc) {
        ChoicePoint c;
        c.kind = k;
        c.trail = static_cast<std::uint32_t>(trail_.size());
        c.cells = static_cast<std::uint32_t>(cells_.size());
        c.frames = static_cast<std::uint32_t>(frames_.size());
        c.scratch = static_cast<std::uint32_t>(scratch_.size());
        c.cont_frame = cont_frame;
        c.cont_pc = cont_pc;
        cps_.push_back(c);
        return cps_.back();
    }
    void tick() {
        ++stats.steps;
        if (eo_.step_limit && stats.steps > eo_.step_limit) throw StepLimitExceeded("engine step limit exceeded");
    }

    void enter(const CompiledPredicate* c, const VariantPlan* vp, Cell a1, Cell a2, std::int32_t cf, std::uint32_t cpc);
    void enter_entry(const CompiledPredicate* c, Cell a1, std::int32_t cf, std::uint32_t cpc);
    const std::vector<SymbolId>& superset_for(const CompiledPredicate* c);

    bool backtrack();
    bool try_alts(std::size_t k);
    bool try_facts(std::size_t k);
    bool try_anc(std::size_t k);
    bool succeed(std::size_t k) {
        const ChoicePoint& c = cps_[k];
        cur_ = c.cont_frame;
        pc_ = c.cont_pc;
        if (c.vp && c.vp->det) cps_.resize(k);
        return true;
    }

    const CompiledProgram& cp_;
    const FactSource& store_;
    EngineOptions eo_;
    std::vector<Cell> cells_;
    std::vector<TrailEntry> trail_;
    std::vector<Frame> frames_;
    std::vector<ChoicePoint> cps_;
    std::vector<Cell> scratch_;
    std::vector<Cell> tmp_;
    AncestorContext loop_;
    AncestorContext anc_;
    std::map<PredName, std::vector<SymbolId>> supersets_;
    std::int32_t cur_ = 0;
    std::uint32_t pc_ = 0;
};

void Machine::enter(const CompiledPredicate* c, const VariantPlan* vp, Cell a1, Cell a2, std::int32_t cf,
                    std::uint32_t cpc) {
    if (vp && vp->loop_guard && loop_.contains(c->pred, a1, a2)) {
        ++stats.loop;
        return;
    }
    ChoicePoint& ch = push_cp(CpKind::Alts, cf, cpc);
    ch.pred = c;
    ch.vp = vp;
    ch.a1 = a1;
    ch.a2 = a2;
    ch.phase = vp && vp->anc_guard ? 0 : 1;
}

const std::vector<SymbolId>& Machine::superset_for(const CompiledPredicate* c) {
    auto it = supersets_.find(c->pred);
    if (it != supersets_.end()) return it->second;
    return supersets_[c->pred] = enumerate_superset(cp_, store_, c->entry.superset);
}

void Machine::enter_entry(const CompiledPredicate* c, Cell a1, std::int32_t cf, std::uint32_t cpc) {
    if (c->entry.kind == EntryPlan::Kind::Lookup) {
        enter(c, nullptr, a1, 0, cf, cpc);
        return;
    }
    const VariantPlan* bound = cp_.opts.ground_optim ? &c->det : &c->plain;
    const VariantPlan* free = cp_.opts.ground_optim ? &c->nondet : &c->plain;
    if (is_const(deref(a1))) {
        enter(c, bound, a1, 0, cf, cpc);
    } else if (c->entry.use_superset) {
        const auto& cands = superset_for(c);
        ChoicePoint& ch = push_cp(CpKind::Superset, cf, cpc);
        ch.pred = c;
        ch.vp = bound;
        ch.a1 = a1;
        ch.cands = cands.data();
        ch.mlen = static_cast<std::uint32_t>(cands.size());
    } else {
        enter(c, free, a1, 0, cf, cpc);
    }
}

bool Machine::try_alts(std::size_t k) {
    ChoicePoint* c = &cps_[k];
    const PredName p = c->pred->pred;
    if (c->phase == 0) {
        if (!c->open) {
            tmp_.clear();
            anc_.matches(p.negate(), c->a1, tmp_);
            if (tmp_.size() > 1) ++stats.multi_match;
            c->moff = static_cast<std::uint32_t>(scratch_.size());
            c->mlen = static_cast<std::uint32_t>(tmp_.size());
            scratch_.insert(scratch_.end(), tmp_.begin(), tmp_.end());
            c->scratch = static_cast<std::uint32_t>(scratch_.size());
            c->open = true;
            c->idx = 0;
        }
        while (c->idx < c->mlen) {
            Cell v = scratch_[c->moff + c->idx++];
            if (unify(c->a1, v)) {
                ++stats.ancres;
                return succeed(k);
            }
            undo_trail(c->trail);
        }
        c->phase = 1;
        c->open = false;
        c->link = 0;
    }
    if (c->phase == 1) {
        const auto& links = c->pred->links;
        const bool binary = p.arity == 2;
        while (c->link < links.size()) {
            const AboxLink& l = links[c->link];
            if (!c->open) {
                Cell d1 = deref(c->a1), d2 = binary ? deref(c->a2) : 0;
                c->cur = l.swapped ? open_cursor(store_, l.source, d2, d1, cp_.opts.indexing)
                                   : open_cursor(store_, l.source, d1, d2, cp_.opts.indexing);
                c->open = true;
            }
            SymbolId x = 0, y = 0;
            while (c->cur.next(x, y)) {
                bool ok = binary ? (l.swapped ? unify(c->a2, cval(x)) && unify(c->a1, cval(y))
                                              : unify(c->a1, cval(x)) && unify(c->a2, cval(y)))
                                 : unify(c->a1, cval(x));
                if (ok) return succeed(k);
                undo_trail(c->trail);
            }
            ++c->link;
            c->open = false;
        }
        c->phase = 2;
        c->idx = 0;
    }
    if (!c->vp) return false;
    const auto& clauses = c->vp->clauses;
    while (c->idx < clauses.size()) {
        const PlanClause& pc = clauses[c->idx++];
        auto base = static_cast<std::uint32_t>(cells_.size());
        for (std::uint32_t i = 0; i < pc.num_vars; ++i) new_cell();
        bool ok = unify(c->a1, val(pc.head.a1, base)) && (p.arity == 1 || unify(c->a2, val(pc.head.a2, base)));
        if (!ok) {
            undo_to(*c);
            continue;
        }
        frames_.push_back({pc.body.data(), static_cast<std::uint32_t>(pc.body.size()), base, c->cont_frame,
                           c->cont_pc, static_cast<std::uint32_t>(k), pc.det_cut});
        if (c->idx == clauses.size()) cps_.resize(k);
        cur_ = static_cast<std::int32_t>(frames_.size() - 1);
        pc_ = 0;
        return true;
    }
    return false;
}

bool Machine::try_facts(std::size_t k) {
    ChoicePoint& c = cps_[k];
    SymbolId x = 0, y = 0;
    while (c.cur.next(x, y)) {
        bool ok = unify(c.a1, cval(x)) && (c.cur.kind == Cursor::Kind::Units || unify(c.a2, cval(y)));
        if (ok) {
            cur_ = c.cont_frame;
            pc_ = c.cont_pc;
            if (c.cur.done()) cps_.resize(k);
            return true;
        }
        undo_trail(c.trail);
    }
    return false;
}

bool Machine::try_anc(std::size_t k) {
    ChoicePoint& c = cps_[k];
    while (c.idx < c.mlen) {
        Cell v = scratch_[c.moff + c.idx++];
        if (unify(c.a1, v)) {
            ++stats.orphan_ancres;
            cur_ = c.cont_frame;
            pc_ = c.cont_pc;
            return true;
        }
        undo_trail(c.trail);
    }
    return false;
}

bool Machine::backtrack() {
    while (!cps_.empty()) {
        std::size_t k = cps_.size() - 1;
        undo_to(cps_[k]);
        tick();
        switch (cps_[k].kind) {
            case CpKind::Alts:
                if (try_alts(k)) return true;
                break;
            case CpKind::Facts:
                if (try_facts(k)) return true;
                break;
            case CpKind::Anc:
                if (try_anc(k)) return true;
                break;
            case CpKind::Superset: {
                ChoicePoint& c = cps_[k];
                if (c.idx >= c.mlen) break;
                SymbolId cand = c.cands[c.idx++];
                const CompiledPredicate* pred = c.pred;
                const VariantPlan* vp = c.vp;
                Cell a1 = c.a1;
                std::int32_t cf = c.cont_frame;
                std::uint32_t cpc = c.cont_pc;
                unify(a1, cval(cand));
                // once/1 around the call: a frame with no items that cuts back to here
                frames_.push_back({nullptr, 0, 0, cf, cpc, static_cast<std::uint32_t>(cps_.size()), true});
                enter(pred, vp, a1, 0, static_cast<std::int32_t>(frames_.size() - 1), 0);
                continue;
            }
        }
        if (cps_.size() == k + 1) cps_.pop_back();
    }
    return false;
}

template <class F>
void Machine::run(const std::vector<PlanItem>& items, std::uint32_t nvars, F&& on_solution) {
    for (std::uint32_t i = 0; i < nvars; ++i) new_cell();
    frames_.push_back({items.data(), static_cast<std::uint32_t>(items.size()), 0, -1, 0, 0, false});
    cur_ = 0;
    pc_ = 0;
    std::vector<SymbolId> row(nvars);
    bool failing = false;
    for (;;) {
        if (failing) {
            if (!backtrack()) return;
            failing = false;
        }
        tick();
        const Frame f = frames_[static_cast<std::size_t>(cur_)];
        if (pc_ == f.n) {
            if (f.cut && cps_.size() > f.barrier) cps_.resize(f.barrier);
            if (f.parent < 0) {
                for (std::uint32_t i = 0; i < nvars; ++i) {
                    Cell v = deref(i);
                    row[i] = is_const(v) ? (v & ~kConstBit) : kUnboundValue;
                }
                ++stats.raw_solutions;
                on_solution(row);
                failing = true;
                continue;
            }
            cur_ = f.parent;
            pc_ = f.parent_pc;
            continue;
        }
        const PlanItem& it = f.items[pc_];
        const bool binary = it.pred.arity == 2;
        switch (it.kind) {
            case PlanItem::Kind::NonIdentity: {
                Cell a = deref(val(it.a1, f.base)), b = deref(val(it.a2, f.base));
                if (!is_const(a) || !is_const(b)) throw std::logic_error("non-ground inequality reached at run time");
                if (a != b) ++pc_;
                else failing = true;
                break;
            }
            case PlanItem::Kind::FactUnary:
            case PlanItem::Kind::FactBinary: {
                Cell a1 = val(it.a1, f.base), a2 = binary ? val(it.a2, f.base) : 0;
                Cursor c = open_cursor(store_, it.pred, deref(a1), binary ? deref(a2) : 0, it.index);
                if (c.kind == Cursor::Kind::None || c.done()) {
                    failing = true;
                } else if (c.kind == Cursor::Kind::Single) {
                    ++pc_;
                } else if (c.one_left()) {
                    SymbolId x = 0, y = 0;
                    c.next(x, y);
                    if (unify(a1, cval(x)) && (!binary || unify(a2, cval(y)))) ++pc_;
                    else failing = true;
                } else {
                    ChoicePoint& ch = push_cp(CpKind::Facts, cur_, pc_ + 1);
                    ch.a1 = a1;
                    ch.a2 = a2;
                    ch.cur = c;
                    failing = true;
                }
                break;
            }
            case PlanItem::Kind::Orphan: {
                Cell a1 = val(it.a1, f.base);
                tmp_.clear();
                anc_.matches(it.pred.negate(), a1, tmp_);
                if (tmp_.empty()) {
                    failing = true;
                } else if (tmp_.size() == 1) {
                    if (unify(a1, tmp_[0])) {
                        ++stats.orphan_ancres;
                        ++pc_;
                    } else {
                        failing = true;
                    }
                } else {
                    ++stats.multi_match;
                    ChoicePoint& ch = push_cp(CpKind::Anc, cur_, pc_ + 1);
                    ch.a1 = a1;
                    ch.moff = static_cast<std::uint32_t>(scratch_.size());
                    ch.mlen = static_cast<std::uint32_t>(tmp_.size());
                    scratch_.insert(scratch_.end(), tmp_.begin(), tmp_.end());
                    ch.scratch = static_cast<std::uint32_t>(scratch_.size());
                    failing = true;
                }
                break;
            }
            case PlanItem::Kind::Call: {
                const CompiledPredicate* c = cp_.find(it.pred);
                if (!c) throw std::logic_error("call to an uncompiled predicate");
                Cell a1 = val(it.a1, f.base), a2 = binary ? val(it.a2, f.base) : 0;
                std::int32_t cf = cur_;
                std::uint32_t cpc = pc_ + 1;
                if (binary) {
                    enter(c, &c->plain, a1, a2, cf, cpc);
                } else {
                    switch (it.mode) {
                        // A goal expected to be ground can still arrive unbound after
                        // resolving against a non-ground ancestor, so Det also checks.
                        case CallMode::Det:
                            if (!c->det.present) {
                                enter(c, &c->plain, a1, 0, cf, cpc);
                                break;
                            }
                            [[fallthrough]];
                        case CallMode::Choice:
                            enter(c, is_const(deref(a1)) ? &c->det : &c->nondet, a1, 0, cf, cpc);
                            break;
                        case CallMode::Plain: enter(c, &c->plain, a1, 0, cf, cpc); break;
                        case CallMode::Entry: enter_entry(c, a1, cf, cpc); break;
                    }
                }
                failing = true;
                break;
            }
            case PlanItem::Kind::Component:
                frames_.push_back({it.kids.data(), static_cast<std::uint32_t>(it.kids.size()), f.base, cur_, pc_ + 1,
                                   static_cast<std::uint32_t>(cps_.size()), it.prune});
                cur_ = static_cast<std::int32_t>(frames_.size() - 1);
                pc_ = 0;
                break;
            case PlanItem::Kind::LoopPush:
                loop_.push(it.pred, val(it.a1, f.base), binary ? val(it.a2, f.base) : 0);
                trail_.push_back({TrailKind::LoopPush, 0, {}});
                ++pc_;
                break;
            case PlanItem::Kind::LoopPop:
                trail_.push_back({TrailKind::LoopPop, 0, loop_.pop()});
                ++pc_;
                break;
            case PlanItem::Kind::AncPush:
                anc_.push(it.pred, val(it.a1, f.base), binary ? val(it.a2, f.base) : 0);
                trail_.push_back({TrailKind::AncPush, 0, {}});
                ++pc_;
                break;
            case PlanItem::Kind::AncPop:
                trail_.push_back({TrailKind::AncPop, 0, anc_.pop()});
                ++pc_;
                break;
        }
    }
}

std::vector<SymbolId> universe_of(const CompiledProgram& cp, const FactSource& store, const ConjQuery* q) {
    std::vector<SymbolId> u(store.universe().begin(), store.universe().end());
    u.insert(u.end(), cp.constants.begin(), cp.constants.end());
    if (q)
        for (const auto& g : q->goals) {
            if (g.a1.is_const()) u.push_back(g.a1.id);
            if (!g.is_unary() && g.a2.is_const()) u.push_back(g.a2.id);
        }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

std::vector<SymbolId> eval_atom(const CompiledProgram& cp, const FactSource& store, const ProjAtom& a) {
    using K = ProjAtom::Kind;
    if (a.kind == K::Const) return {a.constant};
    if (a.kind != K::Abox && cp.find(a.pred)) {
        ConjQuery q;
        Term x = Term::var(0), y = Term::var(1);
        if (a.pred.arity == 1) {
            q.goals.push_back(Literal::unary(a.pred, x));
            q.var_names = {"X"};
        } else {
            q.goals.push_back(a.kind == K::Diag ? Literal::binary(a.pred, x, x)
                              : a.kind == K::First ? Literal::binary(a.pred, x, y)
                                                   : Literal::binary(a.pred, y, x));
            q.var_names = a.kind == K::Diag ? std::vector<std::string>{"X"} : std::vector<std::string>{"X", "Y"};
        }
        auto r = run_query(cp, store, q);
        std::vector<SymbolId> out;
        for (const auto& t : r.tuples) out.push_back(t[0]);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    auto r = store.resolve(a.pred);
    if (!r) return {};
    if (a.pred.arity == 1) return store.project(*r, 1);
    if (a.kind == K::Diag) {
        std::vector<SymbolId> out;
        for (const auto& [x, y] : store.binary_scan(*r))
            if (x == y) out.push_back(x);
        return out;
    }
    return store.project(*r, a.kind == K::Second ? 2 : 1);
}

}  // namespace

std::uint64_t step_limit_from_env() {
    const char* s = std::getenv("HORNDL_STEP_LIMIT");
    if (!s || !*s) return 0;
    return std::strtoull(s, nullptr, 10);
}

std::vector<SymbolId> enumerate_superset(const CompiledProgram& cp, const FactSource& store, const SupersetExpr& e) {
    if (e.all) return universe_of(cp, store, nullptr);
    std::vector<SymbolId> out;
    for (const auto& d : e.disjuncts) {
        std::vector<SymbolId> acc;
        bool first = true;
        for (const auto& a : d) {
            auto s = eval_atom(cp, store, a);
            if (first) {
                acc = std::move(s);
                first = false;
            } else {
                std::vector<SymbolId> both;
                std::set_intersection(acc.begin(), acc.end(), s.begin(), s.end(), std::back_inserter(both));
                acc = std::move(both);
            }
            if (acc.empty()) break;
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QueryResult run_query(const CompiledProgram& cp, const FactSource& store, const ConjQuery& q, EngineOptions eo) {
    for (const auto& g : q.goals) {
        if (g.is_equality()) continue;
        if (!cp.known.count(g.pred) && !store.resolve(g.pred))
            throw UnknownPredicate("unknown predicate " + pred_text(*cp.vocab, g.pred) + "/" +
                                   std::to_string(g.pred.arity));
    }
    auto t0 = std::chrono::steady_clock::now();
    QueryResult r;
    auto items = plan_query(cp, q);
    auto universe = universe_of(cp, store, &q);
    Machine m(cp, store, eo);
    m.run(items, static_cast<std::uint32_t>(q.var_names.size()),
          [&](std::span<const SymbolId> row) { expand_solution(row, universe, r.tuples); });
    sort_unique(r.tuples);
    r.stats = m.stats;
    r.stats.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string stats_text(const Stats& s) {
    std::ostringstream os;
    os << "loop=" << s.loop << "\nancres=" << s.ancres << "\norphancres=" << s.orphan_ancres << "\nruntime_ms=";
    os.setf(std::ios::fixed);
    os.precision(3);
    os << s.runtime_ms << "\n";
    return os.str();
}

}  // namespace horndl
