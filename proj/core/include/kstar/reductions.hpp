#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kstar/automata.hpp"
#include "kstar/srw.hpp"
#include "kstar/words.hpp"

namespace kstar {

enum class GadgetVariant {
    frobenius,            // forcing chain f_0..f_ell
    factor_universality,  // forcing chain shortened to f_0..f_{ell-1}
};

/// The simulation DFA built from a set rewriting system. Symbol 0 is the
/// tick letter (alpha); symbols 1..m are the rule letters. State layout,
/// in order: the initial state, the element states p_1..p_ell, the
/// forcing chain, one setting chain of length ell per non-forbidden
/// (element, rule) pair in lexicographic order, the guard, the sink.
struct GadgetDfa {
    Dfa dfa;
    GadgetVariant variant = GadgetVariant::frobenius;
    std::uint32_t ell = 0;
    std::uint32_t rule_count = 0;

    std::uint32_t initial_state() const { return 0; }
    std::uint32_t element_state(std::uint32_t i) const { return i; }  // 1-based i
    std::uint32_t forcing_count() const {
        return variant == GadgetVariant::frobenius ? ell + 1 : ell;
    }
    std::uint32_t forcing_state(std::uint32_t x) const { return 1 + ell + x; }  // 0-based x
    /// s^{i,j}_x (1-based i, j, x); absent when rule j forbids element i.
    std::optional<std::uint32_t> setting_state(std::uint32_t i, std::uint32_t j,
                                               std::uint32_t x) const;
    std::uint32_t guard_state() const;
    std::uint32_t sink_state() const;

    /// Base index of the setting chain for (i, j), or kNoState.
    std::vector<std::uint32_t> chain_base;  // (i-1) * rule_count + (j-1)
};

/// Rewriting system whose immortality mirrors NFA non-universality: one
/// element per NFA state plus a binary counter, rules that advance the
/// NFA while forcing counter increments, and a reset rule that is legal
/// only when no final state is active. The counter has max(2, |Q|) bits
/// (a single bit cannot count past the length-1 rejected words a
/// one-state NFA can have). The result is always non-emptiable.
SetRewritingSystem nfa_to_srs(const Nfa& nfa);

/// Builds the simulation DFA. The frobenius variant requires a
/// non-emptiable system, the factor-universality variant a permissive
/// one; throws std::invalid_argument on a mismatch.
GadgetDfa srs_to_dfa(const SetRewritingSystem& srs, GadgetVariant variant);

/// Binary encoding of the gadget alphabet: the tick letter becomes 0 and
/// rule letter j becomes 1^j 0 for j < m, 1^m for j = m (a complete
/// prefix code). Element states get m-1 fresh non-final decoding states;
/// everywhere else the rule letters act identically and collapse to a
/// single 1-transition. Finals are unchanged.
Dfa binarize(const GadgetDfa& gadget);

/// Encodes a word over the gadget alphabet (symbol 0 = tick) in binary.
Word encode_gadget_word(const Word& gadget_word, std::uint32_t rule_count);

/// Decodes a full binary encoding back to the gadget alphabet; absent
/// when the word is not a complete encoding.
std::optional<Word> decode_binary_word(const Word& binary_word, std::uint32_t rule_count);

/// All words accepted by a DFA with a finite language, by path
/// enumeration over states that lie on some accepting path. Throws
/// std::invalid_argument when the language is infinite or empty.
Dictionary dfa_to_wordlist(const Dfa& dfa);

}  // namespace kstar
