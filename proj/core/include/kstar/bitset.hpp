#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace kstar {

/// A set of states (or rewriting elements) as a fixed-width bit vector.
///
/// Width is fixed at construction; all binary operations require equal
/// widths. Bits beyond the width are kept zero, so equality and hashing
/// can work directly on the underlying words.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t width)
        : width_(width), words_((width + 63) / 64, 0) {}

    static Bitset with_bit(std::size_t width, std::size_t bit) {
        Bitset b(width);
        b.set(bit);
        return b;
    }

    static Bitset full(std::size_t width) {
        Bitset b(width);
        for (auto& w : b.words_) w = ~std::uint64_t{0};
        b.mask_tail();
        return b;
    }

    std::size_t width() const { return width_; }

    bool test(std::size_t i) const {
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// True if every bit of this set is also in `o`.
    bool subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool operator==(const Bitset& o) const = default;

    /// Visit set bits in ascending order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                f(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> elements() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ width_);
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for_each([&](std::size_t i) {
            if (!first) s += ',';
            s += std::to_string(i);
            first = false;
        });
        s += '}';
        return s;
    }

private:
    void mask_tail() {
        const std::size_t rem = width_ % 64;
        if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace kstar
