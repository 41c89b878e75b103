#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kstar/bitset.hpp"
#include "kstar/errors.hpp"

namespace kstar {

using RuleSeq = std::vector<std::uint32_t>;

/// A set rewriting system: elements 0..ell-1 and rules mapping each
/// element to either a subset of elements or the forbidden marker.
///
/// Classification flags:
///   non_emptiable: no rule image of any single element is empty, so a
///   legal step can never empty a non-empty subset;
///   permissive: no image is forbidden, so every rule is legal for every
///   subset.
class SetRewritingSystem {
public:
    /// `table` is rule-major: entry (rule * ell + element); nullopt marks
    /// a forbidden image.
    SetRewritingSystem(std::size_t ell, std::vector<std::optional<Bitset>> table);

    std::size_t element_count() const { return ell_; }
    std::size_t rule_count() const { return table_.size() / ell_; }

    const std::optional<Bitset>& image(std::size_t rule, std::size_t element) const {
        return table_[rule * ell_ + element];
    }

    /// Image as a sorted element list (nullopt for forbidden); the only
    /// view the brute-force oracle consumes.
    std::optional<std::vector<std::uint32_t>> image_elements(std::size_t rule,
                                                             std::size_t element) const;

    bool non_emptiable() const { return non_emptiable_; }
    bool permissive() const { return permissive_; }

private:
    std::size_t ell_;
    std::vector<std::optional<Bitset>> table_;
    bool non_emptiable_ = true;
    bool permissive_ = true;
};

/// Applies one rule: absent when the rule is illegal for the subset
/// (some member maps to the forbidden marker), otherwise the union of the
/// members' images. The empty subset is vacuously legal and stays empty.
std::optional<Bitset> apply_rule(const SetRewritingSystem& srs, const Bitset& subset,
                                 std::size_t rule);

/// Folds apply_rule over the sequence; absent at the first illegal step.
std::optional<Bitset> apply_sequence(const SetRewritingSystem& srs, Bitset subset,
                                     std::span<const std::uint32_t> seq);

struct ImmortalityWitness {
    Bitset subset;  // a non-empty subset lying on a cycle
    RuleSeq cycle;  // non-empty rule sequence with subset . cycle == subset
};

/// Searches the configuration graph of non-empty subsets, seeded from all
/// singletons with a shared visited set (legality is monotone under
/// taking subsets, which makes singleton seeding complete). Requires a
/// non-emptiable system; throws std::invalid_argument otherwise.
std::optional<ImmortalityWitness> find_immortality_witness(const SetRewritingSystem& srs);

bool is_immortal(const SetRewritingSystem& srs);

struct LongestLegalResult {
    std::uint64_t length = 0;
    RuleSeq sequence;
};

/// Longest legal rule sequence applicable from `from`, by longest-path
/// dynamic programming over the acyclic reachable configuration graph.
/// Requires a non-emptiable system; throws std::invalid_argument when a
/// cycle is reachable from `from` (the length would be unbounded).
LongestLegalResult longest_legal_sequence(const SetRewritingSystem& srs, const Bitset& from);

/// Shortest rule sequence taking the full element set to the empty set,
/// or absent when the empty set is unreachable. BFS with rules explored
/// in index order. Requires a permissive system.
std::optional<RuleSeq> shortest_emptying_sequence(const SetRewritingSystem& srs);

/// File format: a `srs <ell> <m>` header, then one line per table entry,
/// `r<j> p<i> -> !` for a forbidden image or `r<j> p<i> -> p<a> p<b> ...`
/// (an empty right side means the empty set). `#` starts a comment.
SetRewritingSystem parse_srs(std::string_view text);

std::string serialize_srs(const SetRewritingSystem& srs);

}  // namespace kstar
