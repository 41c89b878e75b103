#pragma once

#include <cstdint>
#include <optional>

#include "kstar/automata.hpp"
#include "kstar/words.hpp"

namespace kstar {

struct CofinitenessReport {
    bool cofinite = false;
    /// Cofinite side: a maximum-length word outside the star,
    /// lexicographically least among those; absent when the star already
    /// covers everything.
    std::optional<Word> longest_omitted;
    /// Non-cofinite side: prefix + pump with prefix . pump^k outside the
    /// star for every k.
    std::optional<Word> witness_prefix;
    std::optional<Word> pump;
    std::uint64_t subsets_visited = 0;
};

/// Decides whether the star of the dictionary is cofinite: trie automaton
/// -> Kleene-star NFA -> reachable subset automaton -> no cycle through a
/// non-final subset. `cap` overrides the default subset cap when nonzero.
CofinitenessReport analyze_cofiniteness(const Dictionary& dict, std::uint64_t cap = 0);

bool is_cofinite(const Dictionary& dict);

/// Maximum-length word outside the star; requires a cofinite dictionary
/// (throws std::logic_error otherwise). Absent when the complement of the
/// star is empty.
std::optional<Word> longest_omitted_word(const Dictionary& dict);

/// Membership in the star by iterated subset stepping from the initial
/// state; the cross-check partner of is_member_dp.
bool is_member(const Dictionary& dict, const Word& w);

}  // namespace kstar
