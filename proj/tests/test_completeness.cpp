#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kstar/completeness.hpp"
#include "kstar/families.hpp"
#include "kstar/frobenius.hpp"
#include "kstar/oracle.hpp"
#include "test_support.hpp"

using namespace kstar;
using namespace kstar::test;

TEST_CASE("the factor automaton keeps complete sets alive and kills gaps") {
    const auto complete_dict = make_dict("00\n01\n10\n11\n");
    const KleeneNfa nfa = factor_nfa(complete_dict);
    // Exhaustively: no word up to length 8 empties the full state set.
    std::vector<Bitset> frontier{nfa.full_set()};
    for (int depth = 0; depth < 8; ++depth) {
        std::vector<Bitset> next;
        for (const Bitset& subset : frontier)
            for (std::uint32_t a = 0; a < 2; ++a) {
                Bitset stepped = nfa.step(subset, static_cast<Symbol>(a));
                CHECK(stepped.any());
                next.push_back(std::move(stepped));
            }
        frontier = std::move(next);
    }

    const auto lonely = make_dict("#alphabet: 01\n0\n");
    const KleeneNfa lonely_nfa = factor_nfa(lonely);
    CHECK(lonely_nfa.run(lonely_nfa.full_set(), word(lonely, "1")).none());

    const auto gapped = make_dict("01\n10\n11\n000\n");
    const KleeneNfa gapped_nfa = factor_nfa(gapped);
    CHECK(gapped_nfa.run(gapped_nfa.full_set(), word(gapped, "100010001")).none());
}

TEST_CASE("completeness worked examples") {
    CHECK_FALSE(is_complete(make_dict("01\n10\n11\n000\n")));
    CHECK(is_complete(make_dict("00\n01\n10\n11\n")));
    CHECK(is_complete(make_dict("0\n1\n")));
}

TEST_CASE("shortest incompletable words: trivial gap and oracle agreement") {
    const auto lonely = make_dict("#alphabet: 01\n0\n");
    const auto one = shortest_incompletable_word(lonely);
    REQUIRE(one.has_value());
    CHECK(one->to_glyphs(lonely.alphabet()) == "1");

    const auto gapped = make_dict("01\n10\n11\n000\n");
    const auto witness = shortest_incompletable_word(gapped);
    REQUIRE(witness.has_value());
    CHECK(witness->size() <= 9);
    CHECK_FALSE(is_completable(gapped, *witness));
    const auto scan = oracle_shortest_incompletable(gapped, 12);
    REQUIRE(scan.conclusive);
    CHECK(scan.shortest_incompletable->size() == witness->size());
    CHECK(*scan.shortest_incompletable == *witness);  // both take the least shortest

    CHECK_FALSE(shortest_incompletable_word(make_dict("00\n01\n10\n11\n")).has_value());
}

TEST_CASE("the incompletable family needs long witnesses") {
    const auto report = analyze_completeness(incompletable_hard_family(2));
    REQUIRE_FALSE(report.complete);
    CHECK(report.shortest_incompletable->size() >= 8);
}

TEST_CASE("completability worked examples") {
    const auto dict = make_dict("01\n10\n11\n000\n");
    CHECK_FALSE(is_completable(dict, word(dict, "100010001")));
    CHECK(is_completable(dict, Word{}));
    CHECK(is_completable(dict, word(dict, "0001")));
    CHECK_THROWS_AS(is_completable(dict, Word({9})), std::invalid_argument);
}

TEST_CASE("a completable word really is a factor of some star word") {
    // Exhibit u, v with u . 0001 . v in the star by bounded search.
    const auto dict = make_dict("01\n10\n11\n000\n");
    const Word middle = word(dict, "0001");
    bool found = false;
    for (std::size_t mask_u = 0; mask_u < 64 && !found; ++mask_u) {
        for (std::size_t len_u = 0; len_u <= 5 && !found; ++len_u) {
            std::vector<Symbol> u;
            for (std::size_t i = 0; i < len_u; ++i)
                u.push_back(static_cast<Symbol>((mask_u >> i) & 1));
            for (std::size_t mask_v = 0; mask_v < 64 && !found; ++mask_v) {
                for (std::size_t len_v = 0; len_v <= 5 && !found; ++len_v) {
                    std::vector<Symbol> v;
                    for (std::size_t i = 0; i < len_v; ++i)
                        v.push_back(static_cast<Symbol>((mask_v >> i) & 1));
                    if (is_member_dp(dict, Word(u) + middle + Word(v))) found = true;
                }
            }
        }
    }
    CHECK(found);
}

TEST_CASE("incompletable witnesses absorb arbitrary context") {
    std::mt19937 rng(7501);
    int incomplete_cases = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const auto witness = shortest_incompletable_word(dict);
        if (!witness) continue;
        ++incomplete_cases;
        for (int i = 0; i < 20; ++i) {
            const Word u = random_word(rng, 4);
            const Word v = random_word(rng, 4);
            CHECK_FALSE(is_completable(dict, u + *witness + v));
        }
    }
    CHECK(incomplete_cases > 10);
}

TEST_CASE("factors of completable words stay completable") {
    std::mt19937 rng(7502);
    for (int trial = 0; trial < 40; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const Word w = random_word(rng, 8);
        if (!is_completable(dict, w)) continue;
        for (std::size_t from = 0; from < w.size(); ++from) {
            for (std::size_t len = 0; len + from <= w.size(); ++len) {
                std::vector<Symbol> factor;
                for (std::size_t i = 0; i < len; ++i) factor.push_back(w[from + i]);
                CHECK(is_completable(dict, Word(std::move(factor))));
            }
        }
    }
}

TEST_CASE("shortest incompletable words match the exhaustive scan on small inputs") {
    std::mt19937 rng(7503);
    for (int trial = 0; trial < 50; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const auto witness = shortest_incompletable_word(dict);
        CAPTURE(serialize_dictionary(dict));
        if (witness && witness->size() <= 11) {
            const auto scan = oracle_shortest_incompletable(dict, 12);
            REQUIRE(scan.conclusive);
            CHECK(scan.shortest_incompletable->size() == witness->size());
        } else if (!witness) {
            const auto scan = oracle_shortest_incompletable(dict, 10);
            CHECK_FALSE(scan.conclusive);
        }
    }
}

TEST_CASE("incompletable-word lengths respect the subset bound") {
    std::mt19937 rng(7504);
    for (int trial = 0; trial < 60; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const auto witness = shortest_incompletable_word(dict);
        if (!witness) continue;
        const std::uint64_t bound = dict.norm_max() + 1 +
                                    (dict.norm_sum() + 1) *
                                        (std::uint64_t{1} << dict.norm_max());
        CHECK(witness->size() <= bound);
    }
}
