// Timing sweeps over the exponential searches. Wall-clock only; run on a
// quiet machine and compare trends, not absolute numbers.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>

#include "kstar/completeness.hpp"
#include "kstar/families.hpp"
#include "kstar/frobenius.hpp"
#include "kstar/srw.hpp"
#include "kstar/words.hpp"

using namespace kstar;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
void bench(const char* name, F&& body) {
    const auto t0 = Clock::now();
    const std::uint64_t payload = body();
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    std::printf("%-44s %10.3f ms   (checksum %llu)\n", name, ms,
                static_cast<unsigned long long>(payload));
}

Dictionary random_dictionary(std::mt19937& rng) {
    std::vector<Word> words;
    std::size_t sum = 0;
    while (sum < 14) {
        const std::size_t len = 1 + rng() % 4;
        if (sum + len > 14) break;
        std::vector<Symbol> syms(len);
        for (auto& s : syms) s = static_cast<Symbol>(rng() & 1);
        words.emplace_back(std::move(syms));
        sum += len;
    }
    if (words.empty()) words.push_back(Word({0}));
    return Dictionary(Alphabet::binary(), std::move(words));
}

}  // namespace

int main(int argc, char** argv) {
    const char* filter = argc > 1 ? argv[1] : "";
    auto wants = [&](const char* tag) { return std::strstr(tag, filter) != nullptr; };
    char label[96];

    for (std::size_t n = 8; n <= 16; n += 2) {
        std::snprintf(label, sizeof label, "counter longest-sequence n=%zu", n);
        if (wants(label))
            bench(label, [n] {
                return longest_legal_sequence(immortality_counter(n), Bitset::with_bit(n, 0))
                    .length;
            });
        std::snprintf(label, sizeof label, "counter shortest-emptying n=%zu", n);
        if (wants(label))
            bench(label, [n] { return shortest_emptying_sequence(emptying_counter(n))->size(); });
    }

    for (std::size_t n = 2; n <= 5; ++n) {
        std::snprintf(label, sizeof label, "cofiniteness of the hard family n=%zu", n);
        if (wants(label))
            bench(label, [n] {
                const auto report = analyze_cofiniteness(frobenius_hard_family(n));
                return report.subsets_visited + report.longest_omitted->size();
            });
        std::snprintf(label, sizeof label, "completeness of the hard family n=%zu", n);
        if (wants(label))
            bench(label, [n] {
                const auto report = analyze_completeness(incompletable_hard_family(n));
                return report.subsets_visited + report.shortest_incompletable->size();
            });
    }

    if (wants("random-dictionary batch, 500 analyses")) {
        bench("random-dictionary batch, 500 analyses", [] {
            std::mt19937 rng(42);
            std::uint64_t acc = 0;
            for (int i = 0; i < 500; ++i) {
                const Dictionary dict = random_dictionary(rng);
                acc += analyze_cofiniteness(dict).subsets_visited;
                acc += analyze_completeness(dict).subsets_visited;
            }
            return acc;
        });
    }
    return 0;
}
