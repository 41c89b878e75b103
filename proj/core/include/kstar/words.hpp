#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kstar/errors.hpp"

namespace kstar {

using Symbol = std::uint8_t;

/// An ordered set of distinct printable glyphs, one per symbol index.
class Alphabet {
public:
    explicit Alphabet(std::string glyphs);

    /// "01"
    static Alphabet binary();

    /// The first `size` glyphs of "0123456789abc...xyz".
    static Alphabet canonical(std::size_t size);

    std::size_t size() const { return glyphs_.size(); }
    char glyph(Symbol s) const { return glyphs_[s]; }
    const std::string& glyphs() const { return glyphs_; }
    std::optional<Symbol> index_of(char c) const;

    bool operator==(const Alphabet& o) const { return glyphs_ == o.glyphs_; }

private:
    std::string glyphs_;
    std::array<std::int16_t, 256> index_{};
};

/// A word as a sequence of symbol indices.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    /// Translate a glyph string; throws std::invalid_argument on a glyph
    /// outside the alphabet.
    static Word from_glyphs(std::string_view text, const Alphabet& alphabet);

    std::string to_glyphs(const Alphabet& alphabet) const;

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const { return symbols_; }

    void push_back(Symbol s) { symbols_.push_back(s); }
    void pop_back() { symbols_.pop_back(); }

    Word operator+(const Word& o) const;

    auto operator<=>(const Word& o) const = default;

private:
    std::vector<Symbol> symbols_;
};

/// Length-then-lexicographic order; the canonical order for word lists.
bool shortlex_less(const Word& a, const Word& b);

/// A finite set of non-empty words over a shared alphabet, with cached
/// norms: the length of the longest word and the sum of all lengths.
class Dictionary {
public:
    /// Canonicalizes: sorts shortlex and removes duplicates. Throws
    /// std::invalid_argument on an empty word set, an empty word, or a
    /// symbol outside the alphabet.
    Dictionary(Alphabet alphabet, std::vector<Word> words);

    const Alphabet& alphabet() const { return alphabet_; }
    std::span<const Word> words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    std::size_t norm_max() const { return norm_max_; }
    std::size_t norm_sum() const { return norm_sum_; }

    bool operator==(const Dictionary& o) const {
        return alphabet_ == o.alphabet_ && words_ == o.words_;
    }

private:
    Alphabet alphabet_;
    std::vector<Word> words_;
    std::size_t norm_max_ = 0;
    std::size_t norm_sum_ = 0;
};

struct ParseReport {
    Dictionary dict;
    std::size_t duplicate_count = 0;
};

/// Dictionary file format: one word per line, `#` starts a comment,
/// blank lines ignored. An optional `#alphabet: <glyphs>` comment before
/// the first word declares the alphabet; otherwise it is inferred as the
/// sorted set of characters used. Duplicates are collapsed and counted.
ParseReport parse_dictionary(std::string_view text);

std::string serialize_dictionary(const Dictionary& dict);

struct Dfa;

/// DFA whose non-sink states are exactly the prefixes of dictionary
/// words, with all undefined transitions routed to a fresh sink.
Dfa build_trie_dfa(const Dictionary& dict);

/// Membership of `w` in the free monoid generated by the dictionary, by
/// dynamic programming over word positions. The empty word is a member.
bool is_member_dp(const Dictionary& dict, const Word& w);

}  // namespace kstar
