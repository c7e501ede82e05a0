#include "horndl/bench.hpp"

#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace horndl {

namespace {

const char* kIocasteTbox = "some(hasChild, Patricide & some(hasChild, ~Patricide)) => Ans.\n";

void clean_abox(std::ostringstream& os, std::uint64_t n) {
    for (std::uint64_t j = 1; j <= n; ++j) os << "hasChild(i, e" << j << ").\n";
    for (std::uint64_t j = 1; j < n; ++j) os << "hasChild(e" << j << ", e" << j + 1 << ").\n";
    os << "hasChild(e" << n << ", t).\n";
    os << "Patricide(e1).\n~Patricide(t).\n";
}

}  // namespace

GenSpec GenSpec::parse(const std::string& text) {
    static const std::regex re(R"(\s*([a-z_]+)\s*(?:\(([0-9,\s]*)\))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw std::invalid_argument("bad generator spec: " + text);
    GenSpec s;
    std::string name = m[1];
    std::string args = m[2];
    std::stringstream ss(args);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok.find_first_not_of(" \t") == std::string::npos) throw std::invalid_argument("empty argument in " + text);
        s.params.push_back(std::stoull(tok));
    }
    std::size_t want = 0;
    if (name == "iocaste_clean") {
        s.family = Family::IocasteClean;
        want = 1;
    } else if (name == "iocaste_noisy") {
        s.family = Family::IocasteNoisy;
        want = 4;
    } else if (name == "happy") {
        s.family = Family::Happy;
    } else if (name == "happy_large") {
        s.family = Family::HappyLarge;
        want = 1;
    } else if (name == "alcoholic") {
        s.family = Family::Alcoholic;
        want = 1;
    } else {
        throw std::invalid_argument("unknown generator family: " + name);
    }
    if (s.params.size() != want)
        throw std::invalid_argument(name + " takes " + std::to_string(want) + " argument(s)");
    if (want == 1 && s.params[0] == 0) throw std::invalid_argument(name + " needs n >= 1");
    return s;
}

std::string GenSpec::text() const {
    static const char* names[] = {"iocaste_clean", "iocaste_noisy", "happy", "happy_large", "alcoholic"};
    std::string out = names[static_cast<int>(family)];
    if (params.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + std::to_string(params[i]);
    return out + ")";
}

std::string iocaste_clean(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("iocaste_clean needs n >= 1");
    std::ostringstream os;
    os << "% iocaste_clean(" << n << ")\n" << kIocasteTbox;
    clean_abox(os, n);
    return os.str();
}

// A clean pattern of size 2 plus noise over fresh constants f1..f_nodes. Only
// positive Patricide facts are added there, so making every fresh constant a
// patricide is a model in which none of them is an answer.
std::string iocaste_noisy(std::uint64_t seed, std::uint64_t nodes, std::uint64_t extra_edges,
                          std::uint64_t extra_concepts) {
    std::ostringstream os;
    os << "% iocaste_noisy seed=" << seed << " nodes=" << nodes << " extra_edges=" << extra_edges
       << " extra_concepts=" << extra_concepts << "\n"
       << kIocasteTbox;
    clean_abox(os, 2);
    if (nodes == 0) return os.str();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, nodes);
    for (std::uint64_t k = 0; k < extra_edges; ++k)
        os << "hasChild(f" << pick(rng) << ", f" << pick(rng) << ").\n";
    for (std::uint64_t k = 0; k < extra_concepts; ++k) os << "Patricide(f" << pick(rng) << ").\n";
    return os.str();
}

std::string happy_kb() {
    return "% happy\n"
           "some(hasChild, some(hasChild, Clever) & some(hasChild, Pretty)) => Happy.\n"
           "Clever(lisa). Pretty(lisa). hasChild(kate, bob). hasChild(bob, lisa).\n";
}

std::string happy_large(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("happy_large needs n >= 1");
    std::ostringstream os;
    os << "% happy_large(" << n << ")\n"
       << "some(hasChild, some(hasChild, Clever) & some(hasChild, Pretty)) => Happy.\n"
       << "hasChild(kate, bob).\n";
    for (std::uint64_t i = 1; i <= n; ++i) os << "hasChild(bob, lisa" << i << ").\n";
    for (std::uint64_t i = 1; i <= n; ++i) os << "Clever(lisa" << i << ").\n";
    return os.str();
}

std::string alcoholic(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("alcoholic needs n >= 1");
    std::ostringstream os;
    os << "% alcoholic(" << n << ")\n"
       << "some(hasFriend, Alcoholic) => ~Alcoholic.\n"
       << "some(hasParent, ~Alcoholic) => ~Alcoholic.\n";
    for (std::uint64_t k = 1; k <= n; ++k) os << "hasParent(i" << k << ", i" << k + 1 << ").\n";
    os << "hasFriend(i" << n + 1 << ", i" << n + 2 << ").\n";
    for (std::uint64_t t = 1; t <= n; ++t) os << "hasParent(i" << n + 2 + t << ", i" << n + 1 + t << ").\n";
    return os.str();
}

std::string generate_kb(const GenSpec& s) {
    switch (s.family) {
        case GenSpec::Family::IocasteClean: return iocaste_clean(s.params[0]);
        case GenSpec::Family::IocasteNoisy: return iocaste_noisy(s.params[0], s.params[1], s.params[2], s.params[3]);
        case GenSpec::Family::Happy: return happy_kb();
        case GenSpec::Family::HappyLarge: return happy_large(s.params[0]);
        case GenSpec::Family::Alcoholic: return alcoholic(s.params[0]);
    }
    return {};
}

std::string default_query(const GenSpec& s) {
    switch (s.family) {
        case GenSpec::Family::IocasteClean:
        case GenSpec::Family::IocasteNoisy: return "Ans(X)";
        case GenSpec::Family::Happy:
        case GenSpec::Family::HappyLarge: return "Happy(X)";
        case GenSpec::Family::Alcoholic: return "not_Alcoholic(X)";
    }
    return {};
}

}  // namespace horndl
