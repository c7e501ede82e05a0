#include "horndl/session.hpp"

namespace horndl {

Session make_session(KnowledgeBase kb, const Options& opts, const std::vector<Fact>& extra_facts) {
    Session s;
    kb.abox.insert(kb.abox.end(), extra_facts.begin(), extra_facts.end());
    s.prog = build_program(kb);
    auto facts = program_facts(s.prog);
    s.cp = compile_program(s.prog, fact_predicates(facts), opts);
    s.store = MemoryStore::build(facts, s.cp.inverted_needed);
    s.kb = std::move(kb);
    return s;
}

Session make_session(const std::string& kb_text, const Options& opts) {
    return make_session(parse_kb_or_throw(kb_text), opts);
}

QueryResult Session::query(const std::string& text, EngineOptions eo) const {
    auto q = parse_query(text, *prog.vocab);
    return run_query(cp, store, q, eo);
}

std::string tuples_text(const Vocabulary& v, const std::vector<Tuple>& tuples) {
    std::string out;
    for (const auto& t : tuples) {
        if (t.empty()) out += "true";  // a ground query that holds
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out += ",";
            out += v.consts.name(t[i]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace horndl
