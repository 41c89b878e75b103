#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kstar/bitset.hpp"
#include "kstar/errors.hpp"
#include "kstar/words.hpp"

namespace kstar {

inline constexpr std::uint32_t kNoState = std::numeric_limits<std::uint32_t>::max();

/// Total deterministic automaton. The optional sink is a non-final state
/// with self-loops on every symbol.
struct Dfa {
    std::uint32_t state_count = 0;
    std::uint32_t alphabet_size = 0;
    std::uint32_t initial = 0;
    std::vector<std::uint32_t> transitions;  // state * alphabet_size + symbol
    std::vector<bool> finals;
    std::optional<std::uint32_t> sink;

    std::uint32_t next(std::uint32_t state, std::uint32_t symbol) const {
        return transitions[static_cast<std::size_t>(state) * alphabet_size + symbol];
    }
    void set_next(std::uint32_t state, std::uint32_t symbol, std::uint32_t target) {
        transitions[static_cast<std::size_t>(state) * alphabet_size + symbol] = target;
    }
    bool is_final(std::uint32_t state) const { return finals[state]; }

    std::uint32_t run(std::uint32_t from, const Word& w) const;

    /// Checks totality and the sink contract; throws std::invalid_argument.
    void validate() const;

    /// Debug dump: `initial`, `final`, `sink` stanzas followed by one
    /// `src symbol dst` line per transition.
    std::string to_text() const;
};

/// Nondeterministic automaton (no epsilon transitions); input shape for
/// the rewriting-system reduction.
struct Nfa {
    std::uint32_t state_count = 0;
    std::uint32_t alphabet_size = 0;
    std::uint32_t initial = 0;
    std::vector<Bitset> rows;  // state * alphabet_size + symbol
    Bitset finals;

    const Bitset& row(std::uint32_t state, std::uint32_t symbol) const {
        return rows[static_cast<std::size_t>(state) * alphabet_size + symbol];
    }
};

/// NFA recognizing the Kleene star of a DFA's language: the sink is
/// dropped (the empty subset stands in for it) and every final state
/// gains an implicit epsilon edge back to the initial state. Finals are
/// the DFA finals plus the initial state.
class KleeneNfa {
public:
    enum class Levels {
        none,       // gadget automata: no level structure
        from_trie,  // trie automata: level = unique shortest-word length
    };

    std::size_t state_count() const { return state_count_; }
    std::size_t alphabet_size() const { return alphabet_size_; }
    std::uint32_t initial() const { return initial_; }
    const Bitset& finals() const { return finals_; }

    const Bitset& row(std::size_t state, std::size_t symbol) const {
        return rows_[state * alphabet_size_ + symbol];
    }

    bool has_levels() const { return !levels_.empty(); }
    std::uint32_t level(std::size_t state) const { return levels_[state]; }

    Bitset initial_set() const { return Bitset::with_bit(state_count_, initial_); }
    Bitset full_set() const { return Bitset::full(state_count_); }

    /// One subset step: union of per-state successors, then the epsilon
    /// closure (a subset touching a final state re-activates the initial
    /// state). The empty subset is absorbing.
    Bitset step(const Bitset& subset, Symbol symbol) const;

    Bitset run(Bitset subset, const Word& w) const;

    bool is_final_subset(const Bitset& subset) const { return subset.intersects(finals_); }

    friend KleeneNfa kleene_star_nfa(const Dfa& dfa, Levels levels);

private:
    std::size_t state_count_ = 0;
    std::size_t alphabet_size_ = 0;
    std::uint32_t initial_ = 0;
    std::vector<Bitset> rows_;
    Bitset finals_;
    std::vector<std::uint32_t> levels_;
};

/// Builds the Kleene-star NFA. Requires a DFA that does not accept the
/// empty word and is non-returning (no transition targets the initial
/// state); throws std::invalid_argument otherwise.
KleeneNfa kleene_star_nfa(const Dfa& dfa, KleeneNfa::Levels levels = KleeneNfa::Levels::none);

/// Free-function form of KleeneNfa::step.
Bitset subset_step(const KleeneNfa& nfa, const Bitset& subset, Symbol symbol);

struct DeterminizeOptions {
    std::uint64_t cap = 0;  // 0 = no explicit cap supplied by the caller
    bool stop_at_empty = false;
    /// Assert the at-most-one-state-per-level structure for subsets
    /// discovered at BFS depth >= check_levels_from_depth. Only
    /// meaningful when the NFA carries levels.
    bool check_levels = false;
    std::uint32_t check_levels_from_depth = 0;
};

/// Deterministic automaton over the reachable subsets of a KleeneNfa.
/// Every stored subset is reachable from the start subset; parents record
/// the BFS tree for shortest-witness reconstruction. The empty subset,
/// when reachable, is stored as an ordinary absorbing non-final state.
struct SubsetDfa {
    std::size_t alphabet_size = 0;
    std::vector<Bitset> subsets;             // index 0 = start subset
    std::vector<std::uint32_t> transitions;  // index * alphabet_size + symbol
    std::vector<bool> final_subset;
    std::vector<std::uint32_t> parent;       // kNoState for the start
    std::vector<Symbol> parent_symbol;
    std::vector<std::uint32_t> depth;
    std::optional<std::uint32_t> empty_index;
    bool complete = true;  // false when the search stopped at the empty subset

    std::uint32_t next(std::uint32_t index, std::uint32_t symbol) const {
        return transitions[static_cast<std::size_t>(index) * alphabet_size + symbol];
    }

    /// The BFS-tree word from the start subset to `index` (shortest, and
    /// lexicographically least among shortest).
    Word path_word(std::uint32_t index) const;
};

/// BFS over subsets from `start`, deduplicating by content. Throws
/// CapExceededError when more than `options.cap` subsets would be stored.
SubsetDfa determinize_reachable(const KleeneNfa& nfa, const Bitset& start,
                                const DeterminizeOptions& options);

struct CycleWitness {
    std::uint32_t subset_index = 0;  // a non-final subset lying on a cycle
    Word pump;                       // non-empty word returning the subset to itself
};

/// Looks for a cycle through a non-final subset in the reachable subset
/// graph. The empty subset self-loops and is non-final, so its
/// reachability alone yields a witness. Requires a complete SubsetDfa.
std::optional<CycleWitness> find_nonfinal_cycle(const SubsetDfa& sd);

bool has_nonfinal_cycle(const SubsetDfa& sd);

/// Longest word whose path from the start subset ends in a non-final
/// subset, restricted to subsets from which a non-final subset is
/// reachable. Absent when every reachable subset is final. Throws
/// std::logic_error if that restriction contains a cycle (the caller
/// should have ruled that out via has_nonfinal_cycle).
std::optional<Word> longest_path_to_nonfinal(const SubsetDfa& sd);

/// GraphViz rendering of the subset graph (debugging aid).
std::string subset_dfa_to_dot(const SubsetDfa& sd, const Alphabet* alphabet = nullptr);

/// The default cap for subset searches over a dictionary trie: four times
/// the structural bound (norm_sum + 1) * 2^norm_max + 1, saturating.
std::uint64_t default_subset_cap(std::size_t norm_sum, std::size_t norm_max);

}  // namespace kstar
