#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "horndl/bench.hpp"
#include "horndl/session.hpp"

namespace testutil {

using namespace horndl;

inline const char* kIocasteTbox = "some(hasChild, Patricide & some(hasChild, ~Patricide)) => Ans.\n";
inline const char* kIocaste2 =
    "some(hasChild, Patricide & some(hasChild, ~Patricide)) => Ans.\n"
    "hasChild(i, o). hasChild(i, p). hasChild(o, p). hasChild(p, t).\n"
    "Patricide(o). ~Patricide(t).\n";
inline const char* kHappy =
    "some(hasChild, some(hasChild, Clever) & some(hasChild, Pretty)) => Happy.\n"
    "Clever(lisa). Pretty(lisa). hasChild(kate, bob). hasChild(bob, lisa).\n";

// "not_P" names the negated predicate.
inline PredName pred(const Vocabulary& v, const std::string& name, int arity = 1) {
    bool neg = name.rfind("not_", 0) == 0;
    std::string base = neg ? name.substr(4) : name;
    auto id = v.preds.find(base);
    if (!id) throw std::runtime_error("no predicate " + base);
    return PredName{*id, neg, static_cast<std::uint8_t>(arity)};
}

inline SymbolId cst(const Vocabulary& v, const std::string& name) {
    auto id = v.consts.find(name);
    if (!id) throw std::runtime_error("no constant " + name);
    return *id;
}

// Sorted constant names of single-column answers.
inline std::set<std::string> names(const Vocabulary& v, const std::vector<Tuple>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts) {
        std::string s;
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + v.consts.name(t[i]);
        out.insert(s);
    }
    return out;
}

inline std::vector<std::string> rendered(const HornProgram& p) {
    std::vector<std::string> out;
    for (const auto& c : p.clauses) out.push_back(render_horn(*p.vocab, c));
    return out;
}

inline std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::size_t a = 0;
    while (a < s.size()) {
        auto b = s.find('\n', a);
        if (b == std::string::npos) b = s.size();
        out.push_back(s.substr(a, b - a));
        a = b + 1;
    }
    return out;
}

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

// Iocaste TBox over i with children e1..ek forming a k-cycle; optionally
// Patricide(e1) and ~Patricide(e2).
inline std::string iocaste_cycle(int k, bool labelled) {
    std::string s = kIocasteTbox;
    for (int j = 1; j <= k; ++j)
        s += "hasChild(i, e" + std::to_string(j) + "). hasChild(e" + std::to_string(j) + ", e" +
             std::to_string(j % k + 1) + ").\n";
    if (labelled) s += "Patricide(e1). ~Patricide(e2).\n";
    return s;
}

inline std::vector<Options> option_subsets() {
    std::vector<Options> out;
    for (int mask = 0; mask < 32; ++mask) {
        Options o;
        o.filtering = mask & 1;
        o.projection = mask & 2;
        o.decompose = mask & 4;
        o.ground_optim = mask & 8;
        o.indexing = mask & 16;
        out.push_back(o);
    }
    return out;
}

}  // namespace testutil
