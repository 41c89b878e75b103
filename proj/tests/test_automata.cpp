#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kstar/automata.hpp"
#include "kstar/words.hpp"
#include "test_support.hpp"

using namespace kstar;
using namespace kstar::test;

namespace {

SubsetDfa determinize_dict(const Dictionary& dict) {
    const KleeneNfa nfa = kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
    DeterminizeOptions options;
    options.cap = default_subset_cap(dict.norm_sum(), dict.norm_max());
    options.check_levels = true;
    return determinize_reachable(nfa, nfa.initial_set(), options);
}

}  // namespace

TEST_CASE("the star automaton rejects 111 over {0,01,10,11}") {
    const auto dict = make_dict("0\n01\n10\n11\n");
    const KleeneNfa nfa = kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
    CHECK_FALSE(nfa.is_final_subset(nfa.run(nfa.initial_set(), word(dict, "111"))));
    CHECK(nfa.is_final_subset(nfa.run(nfa.initial_set(), word(dict, "110"))));
    CHECK(nfa.is_final_subset(nfa.initial_set()));  // the empty word
}

TEST_CASE("the star automaton of {0} accepts every power of 0") {
    const auto dict = make_dict("0\n");
    const KleeneNfa nfa = kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
    Bitset subset = nfa.initial_set();
    for (int i = 0; i < 6; ++i) {
        subset = nfa.step(subset, 0);
        CHECK(nfa.is_final_subset(subset));
    }
}

TEST_CASE("a star automaton cannot be built over the empty word") {
    Dfa dfa;
    dfa.state_count = 2;
    dfa.alphabet_size = 1;
    dfa.initial = 0;
    dfa.transitions = {1, 1};
    dfa.finals = {true, false};
    dfa.sink = 1;
    CHECK_THROWS_AS(kleene_star_nfa(dfa), std::invalid_argument);
}

TEST_CASE("subset stepping: defining case and the dead configuration") {
    const auto dict = make_dict("0\n01\n");
    const KleeneNfa nfa = kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
    // From the root on 0 the child is a word, so the root re-activates.
    const Bitset after = nfa.step(nfa.initial_set(), 0);
    CHECK(after.test(nfa.initial()));
    CHECK(after.count() == 2);
    // The empty subset absorbs.
    const Bitset dead(nfa.state_count());
    CHECK(nfa.step(dead, 0).none());
    CHECK(nfa.step(dead, 1).none());
}

TEST_CASE("reachable subsets stay within the structural bound") {
    const auto dict = make_dict("0\n01\n10\n11\n");
    const SubsetDfa sd = determinize_dict(dict);
    CHECK(sd.subsets.size() <= (dict.norm_sum() + 1) * (1u << dict.norm_max()) + 1);
    CHECK(sd.subsets.size() <= 33);
}

TEST_CASE("the single-word dictionary over {0,1} yields a chain plus the dead subset") {
    const auto dict = make_dict("#alphabet: 01\n0\n");
    const SubsetDfa sd = determinize_dict(dict);
    CHECK(sd.subsets.size() == 3);
    REQUIRE(sd.empty_index.has_value());
    // The dead subset self-loops.
    CHECK(sd.next(*sd.empty_index, 0) == *sd.empty_index);
    CHECK(sd.next(*sd.empty_index, 1) == *sd.empty_index);
    CHECK_FALSE(sd.final_subset[*sd.empty_index]);
}

TEST_CASE("the cap aborts oversized searches") {
    const auto dict = make_dict("0\n01\n10\n11\n");
    const KleeneNfa nfa = kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
    DeterminizeOptions options;
    options.cap = 2;
    try {
        determinize_reachable(nfa, nfa.initial_set(), options);
        FAIL("expected the cap to trigger");
    } catch (const CapExceededError& e) {
        CHECK(e.reached() == 2);
    }
}

TEST_CASE("non-final cycles: worked examples") {
    CHECK(has_nonfinal_cycle(determinize_dict(make_dict("0\n01\n10\n11\n"))));
    CHECK_FALSE(has_nonfinal_cycle(determinize_dict(make_dict("0\n"))));
    // {00,01,10,11}* holds exactly the even-length words, so odd-length
    // words are omitted forever: the subset {prefix 0} sits on a cycle.
    CHECK(has_nonfinal_cycle(determinize_dict(make_dict("00\n01\n10\n11\n"))));
}

TEST_CASE("a found cycle witness pumps rejected words") {
    const auto dict = make_dict("0\n01\n10\n11\n");
    const SubsetDfa sd = determinize_dict(dict);
    const auto witness = find_nonfinal_cycle(sd);
    REQUIRE(witness.has_value());
    CHECK_FALSE(witness->pump.empty());
    const KleeneNfa nfa = kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
    Bitset at = nfa.run(nfa.initial_set(), sd.path_word(witness->subset_index));
    CHECK(at == sd.subsets[witness->subset_index]);
    for (int k = 0; k < 3; ++k) {
        CHECK_FALSE(nfa.is_final_subset(at));
        at = nfa.run(at, witness->pump);
        CHECK(at == sd.subsets[witness->subset_index]);
    }
}

TEST_CASE("longest path to a non-final subset: worked examples") {
    const auto unary = make_dict("000\n00000\n");
    const auto longest = longest_path_to_nonfinal(determinize_dict(unary));
    REQUIRE(longest.has_value());
    CHECK(longest->size() == 7);

    // {0,1} covers everything; there is nothing to omit.
    CHECK_FALSE(longest_path_to_nonfinal(determinize_dict(make_dict("0\n1\n"))).has_value());
}

TEST_CASE("subset stepping is union-linear") {
    std::mt19937 rng(7101);
    for (int trial = 0; trial < 25; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const KleeneNfa nfa =
            kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
        for (int i = 0; i < 20; ++i) {
            Bitset s1(nfa.state_count()), s2(nfa.state_count());
            for (std::size_t q = 0; q < nfa.state_count(); ++q) {
                if (rng() % 3 == 0) s1.set(q);
                if (rng() % 3 == 0) s2.set(q);
            }
            const Symbol a = static_cast<Symbol>(rng() % nfa.alphabet_size());
            Bitset joined = s1;
            joined |= s2;
            Bitset expected = nfa.step(s1, a);
            expected |= nfa.step(s2, a);
            CHECK(nfa.step(joined, a) == expected);
        }
    }
}

TEST_CASE("subset counts respect the bound on random dictionaries") {
    std::mt19937 rng(7102);
    for (int trial = 0; trial < 40; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const SubsetDfa sd = determinize_dict(dict);
        CHECK(sd.subsets.size() <=
              (dict.norm_sum() + 1) * (std::uint64_t{1} << dict.norm_max()) + 1);
    }
}

TEST_CASE("both infinite-complement criteria coincide on the reachable subset graph") {
    // The headline algorithm looks for a cycle through a non-final
    // subset; the textbook criterion looks for a cycle that can still
    // reach one. They agree on every star subset graph we generate.
    std::mt19937 rng(7103);
    for (int trial = 0; trial < 120; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        const SubsetDfa sd = determinize_dict(dict);
        CAPTURE(serialize_dictionary(dict));
        CHECK(has_nonfinal_cycle(sd) == cycle_reaches_nonfinal(sd));
    }
}

TEST_CASE("subset membership agrees with the positional program") {
    std::mt19937 rng(7104);
    for (int trial = 0; trial < 20; ++trial) {
        const Dictionary dict = random_dictionary(rng);
        if (dict.norm_sum() > 12) continue;
        const KleeneNfa nfa =
            kleene_star_nfa(build_trie_dfa(dict), KleeneNfa::Levels::from_trie);
        for (int i = 0; i < 30; ++i) {
            const Word w = random_word(rng, 10);
            CHECK(nfa.is_final_subset(nfa.run(nfa.initial_set(), w)) == is_member_dp(dict, w));
        }
    }
}

TEST_CASE("the automaton dump format lists stanzas then transitions") {
    const Dfa trie = build_trie_dfa(make_dict("#alphabet: 01\n0\n"));
    const std::string text = trie.to_text();
    CHECK(text.find("initial 0") != std::string::npos);
    CHECK(text.find("final 1") != std::string::npos);
    CHECK(text.find("sink 2") != std::string::npos);
    CHECK(text.find("0 0 1") != std::string::npos);
}

TEST_CASE("graphviz export names subsets and marks finals") {
    const auto dict = make_dict("#alphabet: 01\n0\n");
    const SubsetDfa sd = determinize_dict(dict);
    const std::string dot = subset_dfa_to_dot(sd, &dict.alphabet());
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("{0}") != std::string::npos);
}
