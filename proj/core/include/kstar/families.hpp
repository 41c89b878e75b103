#pragma once

#include <cstddef>

#include "kstar/srw.hpp"
#include "kstar/words.hpp"

namespace kstar {

/// Binary-counter rewriting system on n elements whose longest legal
/// sequence from {b_0} is exactly 2^n - 2: rule j forbids b_j, collapses
/// lower bits into b_j and keeps higher bits. Non-emptiable and mortal.
SetRewritingSystem immortality_counter(std::size_t n);

/// Downward-counting permissive system on n elements whose shortest
/// emptying sequence has length exactly 2^n - 1: rule j replaces b_j by
/// all lower bits, resets lower bits to the full set, keeps higher bits.
SetRewritingSystem emptying_counter(std::size_t n);

/// Binary dictionary (norm_max = 4n + 1) whose star is cofinite with the
/// longest omitted words of length at least 2^n * n: the frobenius
/// simulation pipeline applied to immortality_counter(n). Requires n >= 2.
Dictionary frobenius_hard_family(std::size_t n);

/// Binary dictionary (norm_max = 4n) that is incomplete with the shortest
/// incompletable words of length at least 2^n * n: the factor-universality
/// pipeline applied to emptying_counter(n). Requires n >= 2.
Dictionary incompletable_hard_family(std::size_t n);

/// The same word set as incompletable_hard_family, generated directly
/// from closed-form schemata instead of the automaton pipeline; the two
/// generators cross-check each other.
Dictionary appendix_family(std::size_t n);

}  // namespace kstar
