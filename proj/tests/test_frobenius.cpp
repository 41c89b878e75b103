#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kstar/families.hpp"
#include "kstar/frobenius.hpp"
#include "kstar/oracle.hpp"
#include "test_support.hpp"

using namespace kstar;
using namespace kstar::test;

TEST_CASE("cofiniteness worked examples") {
    CHECK(is_cofinite(make_dict("000\n00000\n")));
    CHECK_FALSE(is_cofinite(make_dict("0\n01\n10\n11\n")));
}

TEST_CASE("adding 111 to {0,01,10,11} still leaves the star non-cofinite") {
    // 1(01)^k has no factorization for any k: the only dictionary word
    // that can start it is 10, which peels back to the same shape, down
    // to the bare non-member 1. The exhaustive scan agrees.
    const auto dict = make_dict("0\n01\n10\n11\n111\n");
    CHECK_FALSE(is_member_dp(dict, word(dict, "1")));
    CHECK_FALSE(is_member_dp(dict, word(dict, "101")));
    CHECK_FALSE(is_member_dp(dict, word(dict, "10101")));
    CHECK_FALSE(is_member_dp(dict, word(dict, "1010101")));
    const auto scan = oracle_cofinite(dict, 12);
    CHECK_FALSE(scan.window_all_member);
    CHECK_FALSE(is_cofinite(dict));
    CHECK_THROWS_AS(longest_omitted_word(dict), std::logic_error);
}

TEST_CASE("longest omitted words: unary example and the covered star") {
    const auto unary = make_dict("000\n00000\n");
    const auto longest = longest_omitted_word(unary);
    REQUIRE(longest.has_value());
    CHECK(longest->size() == 7);
    CHECK(longest->to_glyphs(unary.alphabet()) == "0000000");

    CHECK_FALSE(longest_omitted_word(make_dict("0\n1\n")).has_value());
}

TEST_CASE("the hard family's longest omitted word matches the exhaustive scan") {
    const Dictionary family = frobenius_hard_family(2);
    const auto report = analyze_cofiniteness(family);
    REQUIRE(report.cofinite);
    REQUIRE(report.longest_omitted.has_value());
    const std::size_t len = report.longest_omitted->size();
    CHECK(len >= 8);
    const auto scan = oracle_cofinite(family, len + family.norm_max() + 1);
    CHECK(scan.window_all_member);
    REQUIRE(scan.longest_nonmember.has_value());
    CHECK(scan.longest_nonmember->size() == len);
}

TEST_CASE("non-cofinite dictionaries yield a verified pump") {
    std::mt19937 rng(7401);
    int pumped = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const auto report = analyze_cofiniteness(dict);
        if (report.cofinite) continue;
        ++pumped;
        Word w = *report.witness_prefix;
        for (int k = 0; k < 4; ++k) {
            CHECK_FALSE(is_member_dp(dict, w));
            w = w + *report.pump;
        }
    }
    CHECK(pumped > 5);
}

TEST_CASE("every word beyond the longest omitted one is a member") {
    std::mt19937 rng(7402);
    auto check_dict = [&](const Dictionary& dict) {
        const auto report = analyze_cofiniteness(dict);
        if (!report.cofinite || !report.longest_omitted) return false;
        const std::size_t len = report.longest_omitted->size();
        CHECK_FALSE(is_member_dp(dict, *report.longest_omitted));
        const std::size_t sigma = dict.alphabet().size();
        for (int i = 0; i < 100; ++i) {
            std::vector<Symbol> syms(len + 1 + (rng() % 4));
            for (auto& s : syms) s = static_cast<Symbol>(rng() % sigma);
            CHECK(is_member_dp(dict, Word(std::move(syms))));
        }
        return true;
    };
    CHECK(check_dict(make_dict("000\n00000\n")));
    CHECK(check_dict(frobenius_hard_family(2)));
    int random_hits = 0;
    for (int trial = 0; trial < 150; ++trial)
        if (check_dict(random_dictionary(rng))) ++random_hits;
    MESSAGE("random cofinite dictionaries with a non-empty complement: ", random_hits);
}

TEST_CASE("omitted-word lengths respect the subset bound") {
    std::mt19937 rng(7403);
    for (int trial = 0; trial < 60; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const auto report = analyze_cofiniteness(dict);
        if (!report.cofinite || !report.longest_omitted) continue;
        const std::uint64_t bound =
            1 + (dict.norm_sum() + 1) * (std::uint64_t{1} << dict.norm_max());
        CHECK(report.longest_omitted->size() <= bound);
    }
}

TEST_CASE("subset membership worked examples") {
    const auto dict = make_dict("0\n01\n10\n11\n");
    CHECK(is_member(dict, word(dict, "110")));
    CHECK(is_member(dict, Word{}));
    CHECK_FALSE(is_member(dict, word(dict, "111")));
    CHECK_THROWS_AS(is_member(dict, Word({7})), std::invalid_argument);
}

TEST_CASE("subset and positional membership agree on random inputs") {
    std::mt19937 rng(7404);
    for (int trial = 0; trial < 25; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        if (dict.norm_sum() > 12) continue;
        for (int i = 0; i < 30; ++i) {
            const Word w = random_word(rng, 10);
            CHECK(is_member(dict, w) == is_member_dp(dict, w));
        }
    }
}
