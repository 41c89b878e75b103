#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kstar/srw.hpp"
#include "kstar/words.hpp"

namespace kstar {

// Brute-force reference implementations. They deliberately share no
// subset or bit-vector machinery with the main modules: membership runs
// on the positional dynamic program, state sets are explicit sorted
// lists, and searches enumerate words outright. Exponentially slower by
// design; their only job is to be independently right on small inputs.

struct OracleCofiniteScan {
    std::size_t limit = 0;
    /// Every word whose length falls in the top norm_max-sized window of
    /// the scan is a member. If so, every longer word is a member too
    /// (peel a dictionary word off the end), so the verdict is definitive.
    bool window_all_member = false;
    std::optional<Word> longest_nonmember;        // least at its length
    std::vector<std::size_t> nonmember_lengths;   // lengths with a nonmember
    bool definitive() const { return window_all_member; }
};

/// Runs the membership dynamic program over every word up to `limit`
/// symbols. Only alphabets of size at most 2 are scanned exhaustively;
/// larger ones are rejected (sample words individually with is_member_dp
/// instead).
OracleCofiniteScan oracle_cofinite(const Dictionary& dict, std::size_t limit);

struct OracleIncompletableScan {
    std::size_t limit = 0;
    std::optional<Word> shortest_incompletable;
    /// False when the scan exhausted the limit without finding a witness,
    /// which leans complete but proves nothing.
    bool conclusive = false;
};

/// Scans words in length then lexicographic order, stepping an explicit
/// list of active prefixes per word, until one empties the list.
OracleIncompletableScan oracle_shortest_incompletable(const Dictionary& dict,
                                                      std::size_t limit);

struct OracleSrsReport {
    bool immortal = false;
    /// Longest legal sequence length per singleton seed; absent for seeds
    /// from which the rules can run forever. Only filled for
    /// non-emptiable systems.
    std::vector<std::optional<std::uint64_t>> longest_from_singleton;
    /// Present for permissive systems with a reachable empty set.
    std::optional<std::size_t> shortest_emptying_length;
};

/// Exhaustive exploration over explicit element-list configurations;
/// rejects systems with more than 5 elements.
OracleSrsReport oracle_srs_search(const SetRewritingSystem& srs);

}  // namespace kstar
