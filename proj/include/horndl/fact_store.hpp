#pragma once

#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "horndl/frontend.hpp"
#include "horndl/kb_core.hpp"

namespace horndl {

using RelId = std::uint32_t;
using ConstPair = std::pair<SymbolId, SymbolId>;

// Read-only access to ABox facts. Every span returned is sorted and
// duplicate-free, and stays valid for the lifetime of the source.
class FactSource {
public:
    virtual ~FactSource() = default;

    virtual std::optional<RelId> resolve(PredName p) const = 0;

    virtual bool unary_contains(RelId r, SymbolId c) const = 0;
    virtual std::span<const SymbolId> unary_scan(RelId r) const = 0;

    virtual bool binary_contains(RelId r, SymbolId a, SymbolId b) const = 0;
    // bf: all b with r(a, b)
    virtual std::span<const SymbolId> successors(RelId r, SymbolId a) const = 0;
    // fb: all a with r(a, b); only meaningful when has_inverted(r)
    virtual std::span<const SymbolId> predecessors(RelId r, SymbolId b) const = 0;
    virtual bool has_inverted(RelId r) const = 0;
    // ff: all pairs sorted by (a, b)
    virtual std::span<const ConstPair> binary_scan(RelId r) const = 0;

    // argpos is 1 or 2; for unary relations only 1 is valid.
    virtual std::vector<SymbolId> project(RelId r, int argpos) const = 0;
    virtual std::span<const SymbolId> universe() const = 0;
};

class MemoryStore final : public FactSource {
public:
    // Inverted indexes are built only for the binary predicates listed.
    static MemoryStore build(const std::vector<Fact>& facts, const std::set<PredName>& needed_inverted = {});
    static MemoryStore build_all_inverted(const std::vector<Fact>& facts);

    std::optional<RelId> resolve(PredName p) const override;
    bool unary_contains(RelId r, SymbolId c) const override;
    std::span<const SymbolId> unary_scan(RelId r) const override;
    bool binary_contains(RelId r, SymbolId a, SymbolId b) const override;
    std::span<const SymbolId> successors(RelId r, SymbolId a) const override;
    std::span<const SymbolId> predecessors(RelId r, SymbolId b) const override;
    bool has_inverted(RelId r) const override;
    std::span<const ConstPair> binary_scan(RelId r) const override;
    std::vector<SymbolId> project(RelId r, int argpos) const override;
    std::span<const SymbolId> universe() const override { return universe_; }

    std::size_t fact_count() const { return fact_count_; }
    std::vector<PredName> predicates() const;

private:
    struct Adjacency {
        std::vector<SymbolId> keys;      // sorted distinct keys
        std::vector<std::uint32_t> off;  // keys.size() + 1 offsets into vals
        std::vector<SymbolId> vals;
        std::span<const SymbolId> find(SymbolId k) const;
    };
    struct Relation {
        PredName pred;
        std::vector<SymbolId> unary;     // sorted
        std::vector<ConstPair> pairs;    // sorted by (a, b)
        Adjacency fwd;
        Adjacency inv;
        bool inverted = false;
    };
    static Adjacency make_adjacency(std::vector<ConstPair> pairs);

    std::unordered_map<PredName, RelId, PredNameHash> ids_;
    std::vector<Relation> rels_;
    std::vector<SymbolId> universe_;
    std::size_t fact_count_ = 0;
};

}  // namespace horndl
