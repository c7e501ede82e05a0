#pragma once

#include <string>
#include <vector>

#include "horndl/engine.hpp"

namespace horndl {

// A KB compiled under one option set, with its fact store.
struct Session {
    KnowledgeBase kb;
    HornProgram prog;
    CompiledProgram cp;
    MemoryStore store;

    QueryResult query(const std::string& text, EngineOptions eo = {}) const;
};

// extra_facts come from CSV or other side inputs and join the KB's own ABox.
Session make_session(KnowledgeBase kb, const Options& opts, const std::vector<Fact>& extra_facts = {});
Session make_session(const std::string& kb_text, const Options& opts);

// Answers as lines of comma-separated constant names; a ground query that holds prints `true`.
std::string tuples_text(const Vocabulary& v, const std::vector<Tuple>& tuples);

}  // namespace horndl
