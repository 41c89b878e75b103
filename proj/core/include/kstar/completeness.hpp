#pragma once

#include <cstdint>
#include <optional>

#include "kstar/automata.hpp"
#include "kstar/words.hpp"

namespace kstar {

/// The Kleene-star NFA of the dictionary trie read with every state both
/// initial and final: it recognizes exactly the factors of star words. A
/// word is completable iff stepping the full state set through it leaves
/// at least one state active.
KleeneNfa factor_nfa(const Dictionary& dict);

struct CompletenessReport {
    bool complete = false;
    std::optional<Word> shortest_incompletable;  // present iff not complete
    std::uint64_t subsets_visited = 0;
};

/// Decides completeness: the dictionary is complete iff the empty subset
/// is unreachable from the full state set. The search runs breadth-first
/// from the full set, so the witness is a shortest incompletable word
/// (lexicographically least among shortest).
CompletenessReport analyze_completeness(const Dictionary& dict, std::uint64_t cap = 0);

bool is_complete(const Dictionary& dict);

std::optional<Word> shortest_incompletable_word(const Dictionary& dict);

bool is_completable(const Dictionary& dict, const Word& w);

}  // namespace kstar
