#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace horndl {

// KB families used for benchmarks and tests.
struct GenSpec {
    enum class Family { IocasteClean, IocasteNoisy, Happy, HappyLarge, Alcoholic };
    Family family = Family::IocasteClean;
    // clean: n; noisy: seed, nodes, extra_edges, extra_concepts; happy_large, alcoholic: n
    std::vector<std::uint64_t> params;

    // "iocaste_clean(10)", "iocaste_noisy(1,50,200,20)", "happy", "happy_large(5)", "alcoholic(3)".
    static GenSpec parse(const std::string& text);
    std::string text() const;
};

std::string generate_kb(const GenSpec& spec);

// The query each family is built around.
std::string default_query(const GenSpec& spec);

std::string iocaste_clean(std::uint64_t n);
std::string iocaste_noisy(std::uint64_t seed, std::uint64_t nodes, std::uint64_t extra_edges,
                          std::uint64_t extra_concepts);
std::string happy_kb();
std::string happy_large(std::uint64_t n);
std::string alcoholic(std::uint64_t n);

}  // namespace horndl
