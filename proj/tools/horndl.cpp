#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "horndl/bench.hpp"
#include "horndl/session.hpp"

using namespace horndl;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct OptionFlags {
    std::string setting = "base";
    std::string decompose, indexing, projection, filtering, ground_optim, orphan, hashing;

    void add(CLI::App* app) {
        auto yn = CLI::IsMember({"yes", "no"});
        app->add_option("--setting", setting, "named setting: base, g(n), p(n), f(n), i(n), o(n), d(n), pd(n), od(n)");
        app->add_option("--decompose", decompose)->check(yn);
        app->add_option("--indexing", indexing)->check(yn);
        app->add_option("--projection", projection)->check(yn);
        app->add_option("--filtering", filtering)->check(yn);
        app->add_option("--ground-optim", ground_optim)->check(yn);
        app->add_option("--orphan", orphan)->check(CLI::IsMember({"first", "general"}));
        app->add_option("--hashing", hashing)->check(yn);
    }
    Options resolve() const {
        Options o = named_options(setting);
        auto set = [](const std::string& v, bool& b) {
            if (!v.empty()) b = v == "yes";
        };
        set(decompose, o.decompose);
        set(indexing, o.indexing);
        set(projection, o.projection);
        set(filtering, o.filtering);
        set(ground_optim, o.ground_optim);
        set(hashing, o.hashing);
        if (!orphan.empty()) o.orphan = orphan == "first" ? OrphanMode::First : OrphanMode::General;
        return o;
    }
};

Session load(const std::string& path, const Options& o, const std::vector<std::string>& csvs) {
    KnowledgeBase kb = parse_kb_or_throw(read_file(path));
    std::vector<CsvSource> src;
    for (const auto& c : csvs) src.push_back({c, read_file(c)});
    auto extra = ingest_abox_csv(src, *kb.vocab);
    return make_session(std::move(kb), o, extra);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"horndl: a compiler and engine for Horn-translated description logic KBs"};
    app.require_subcommand(1);

    // compile
    auto* compile = app.add_subcommand("compile", "translate and compile a KB");
    std::string kb_path;
    bool emit = false, dump = false;
    std::vector<std::string> csvs;
    OptionFlags cflags;
    compile->add_option("kb", kb_path)->required();
    compile->add_flag("--emit", emit, "print the compiled program as readable Prolog-like text");
    compile->add_flag("--dump", dump, "print call graph, classification and miniset graph");
    compile->add_option("--abox-csv", csvs);
    cflags.add(compile);

    // query
    auto* query = app.add_subcommand("query", "answer a conjunctive query");
    std::string q_kb, q_text;
    std::vector<std::string> q_csvs;
    OptionFlags qflags;
    bool no_stats = false;
    query->add_option("kb", q_kb)->required();
    query->add_option("query", q_text)->required();
    query->add_option("--abox-csv", q_csvs);
    query->add_flag("--no-stats", no_stats);
    qflags.add(query);

    // bench
    auto* bench = app.add_subcommand("bench", "time a generated KB family");
    std::string b_spec, b_query;
    std::vector<std::string> b_settings;
    int runs = 3;
    bench->add_option("spec", b_spec, "e.g. iocaste_clean(1000)")->required();
    bench->add_option("--settings", b_settings, "named settings, default: the whole menu");
    bench->add_option("--query", b_query);
    bench->add_option("--runs", runs)->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "print a generated KB");
    std::string g_spec;
    gen->add_option("spec", g_spec)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        EngineOptions eo{step_limit_from_env()};
        if (*compile) {
            Session s = load(kb_path, cflags.resolve(), csvs);
            const auto& v = *s.prog.vocab;
            std::cout << "options " << options_text(s.cp.opts) << "\n";
            std::cout << "clauses " << s.prog.clauses.size() << " rules " << s.cp.prog.rules.size() << " removed "
                      << s.cp.removed.size() << " facts " << s.store.fact_count() << "\n";
            if (dump) {
                std::cout << dump_call_graph(v, s.cp.graph) << dump_classification(v, s.cp.cls)
                          << dump_miniset_graph(v, s.cp.minisets);
            }
            if (emit) std::cout << emit_readable(s.cp);
            return 0;
        }
        if (*query) {
            Session s = load(q_kb, qflags.resolve(), q_csvs);
            auto r = s.query(q_text, eo);
            std::cout << tuples_text(*s.prog.vocab, r.tuples);
            if (!no_stats) std::cout << stats_text(r.stats);
            return 0;
        }
        if (*gen) {
            std::cout << generate_kb(GenSpec::parse(g_spec));
            return 0;
        }
        if (*bench) {
            GenSpec spec = GenSpec::parse(b_spec);
            std::string qt = b_query.empty() ? default_query(spec) : b_query;
            std::string text = generate_kb(spec);
            if (b_settings.empty()) b_settings = option_menu();
            std::cout << "# " << spec.text() << " query " << qt << " runs " << runs << "\n";
            for (const auto& name : b_settings) {
                Options o = named_options(name);
                std::vector<double> compile_ms, query_ms;
                QueryResult last;
                for (int i = 0; i < runs + 1; ++i) {
                    auto t0 = std::chrono::steady_clock::now();
                    Session s = make_session(text, o);
                    auto t1 = std::chrono::steady_clock::now();
                    last = s.query(qt, eo);
                    if (i == 0) continue;  // warm-up
                    compile_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                    query_ms.push_back(last.stats.runtime_ms);
                }
                std::printf("%-6s answers=%zu load_compile_ms=%.3f runtime_ms=%.3f loop=%llu ancres=%llu orphancres=%llu\n",
                            name.c_str(), last.tuples.size(), median(compile_ms), median(query_ms),
                            static_cast<unsigned long long>(last.stats.loop),
                            static_cast<unsigned long long>(last.stats.ancres),
                            static_cast<unsigned long long>(last.stats.orphan_ancres));
            }
            return 0;
        }
    } catch (const StepLimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
