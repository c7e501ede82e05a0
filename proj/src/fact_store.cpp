#include "horndl/fact_store.hpp"

#include <algorithm>

namespace horndl {

std::span<const SymbolId> MemoryStore::Adjacency::find(SymbolId k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) return {};
    auto i = static_cast<std::size_t>(it - keys.begin());
    return {vals.data() + off[i], vals.data() + off[i + 1]};
}

MemoryStore::Adjacency MemoryStore::make_adjacency(std::vector<ConstPair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    Adjacency a;
    a.vals.reserve(pairs.size());
    for (const auto& [k, v] : pairs) {
        if (a.keys.empty() || a.keys.back() != k) {
            a.keys.push_back(k);
            a.off.push_back(static_cast<std::uint32_t>(a.vals.size()));
        }
        a.vals.push_back(v);
    }
    a.off.push_back(static_cast<std::uint32_t>(a.vals.size()));
    return a;
}

MemoryStore MemoryStore::build(const std::vector<Fact>& facts, const std::set<PredName>& needed_inverted) {
    MemoryStore s;
    for (const auto& f : facts) {
        auto [it, inserted] = s.ids_.emplace(f.pred, static_cast<RelId>(s.rels_.size()));
        if (inserted) s.rels_.push_back(Relation{f.pred, {}, {}, {}, {}, false});
        Relation& r = s.rels_[it->second];
        if (f.pred.arity == 1) r.unary.push_back(f.a1);
        else r.pairs.emplace_back(f.a1, f.a2);
        s.universe_.push_back(f.a1);
        if (f.pred.arity == 2) s.universe_.push_back(f.a2);
    }
    for (auto& r : s.rels_) {
        std::sort(r.unary.begin(), r.unary.end());
        r.unary.erase(std::unique(r.unary.begin(), r.unary.end()), r.unary.end());
        std::sort(r.pairs.begin(), r.pairs.end());
        r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
        s.fact_count_ += r.unary.size() + r.pairs.size();
        if (r.pred.arity == 2) {
            r.fwd = make_adjacency(r.pairs);
            if (needed_inverted.count(r.pred)) {
                std::vector<ConstPair> sw;
                sw.reserve(r.pairs.size());
                for (const auto& [a, b] : r.pairs) sw.emplace_back(b, a);
                r.inv = make_adjacency(std::move(sw));
                r.inverted = true;
            }
        }
    }
    std::sort(s.universe_.begin(), s.universe_.end());
    s.universe_.erase(std::unique(s.universe_.begin(), s.universe_.end()), s.universe_.end());
    return s;
}

MemoryStore MemoryStore::build_all_inverted(const std::vector<Fact>& facts) {
    std::set<PredName> all;
    for (const auto& f : facts)
        if (f.pred.arity == 2) all.insert(f.pred);
    return build(facts, all);
}

std::optional<RelId> MemoryStore::resolve(PredName p) const {
    if (auto it = ids_.find(p); it != ids_.end()) return it->second;
    return std::nullopt;
}

bool MemoryStore::unary_contains(RelId r, SymbolId c) const {
    const auto& u = rels_[r].unary;
    return std::binary_search(u.begin(), u.end(), c);
}

std::span<const SymbolId> MemoryStore::unary_scan(RelId r) const { return rels_[r].unary; }

bool MemoryStore::binary_contains(RelId r, SymbolId a, SymbolId b) const {
    auto s = rels_[r].fwd.find(a);
    return std::binary_search(s.begin(), s.end(), b);
}

std::span<const SymbolId> MemoryStore::successors(RelId r, SymbolId a) const { return rels_[r].fwd.find(a); }

std::span<const SymbolId> MemoryStore::predecessors(RelId r, SymbolId b) const {
    if (!rels_[r].inverted) return {};
    return rels_[r].inv.find(b);
}

bool MemoryStore::has_inverted(RelId r) const { return rels_[r].inverted; }

std::span<const ConstPair> MemoryStore::binary_scan(RelId r) const { return rels_[r].pairs; }

std::vector<SymbolId> MemoryStore::project(RelId r, int argpos) const {
    const Relation& rel = rels_[r];
    if (rel.pred.arity == 1) return rel.unary;
    if (argpos == 1) return rel.fwd.keys;
    std::vector<SymbolId> out;
    out.reserve(rel.pairs.size());
    for (const auto& p : rel.pairs) out.push_back(p.second);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<PredName> MemoryStore::predicates() const {
    std::vector<PredName> out;
    for (const auto& r : rels_) out.push_back(r.pred);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace horndl
