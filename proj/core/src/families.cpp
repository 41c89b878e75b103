#include "kstar/families.hpp"

#include <stdexcept>

#include "kstar/reductions.hpp"

namespace kstar {

SetRewritingSystem immortality_counter(std::size_t n) {
    if (n == 0) throw std::invalid_argument("counter needs at least one bit");
    std::vector<std::optional<Bitset>> table(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;  // b_j stays forbidden
            Bitset img(n);
            img.set(j);
            if (i > j) img.set(i);
            table[j * n + i] = std::move(img);
        }
    }
    return SetRewritingSystem(n, std::move(table));
}

SetRewritingSystem emptying_counter(std::size_t n) {
    if (n == 0) throw std::invalid_argument("counter needs at least one bit");
    std::vector<std::optional<Bitset>> table(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            Bitset img(n);
            if (i == j) {
                for (std::size_t k = 0; k < j; ++k) img.set(k);  // borrow into lower bits
            } else if (i < j) {
                img = Bitset::full(n);  // wrong rule: reset to the maximum
            } else {
                img.set(i);
            }
            table[j * n + i] = std::move(img);
        }
    }
    return SetRewritingSystem(n, std::move(table));
}

namespace {

Dictionary pipeline(const SetRewritingSystem& srs, GadgetVariant variant) {
    return dfa_to_wordlist(binarize(srs_to_dfa(srs, variant)));
}

}  // namespace

Dictionary frobenius_hard_family(std::size_t n) {
    if (n < 2) throw std::invalid_argument("family starts at n = 2");
    return pipeline(immortality_counter(n), GadgetVariant::frobenius);
}

Dictionary incompletable_hard_family(std::size_t n) {
    if (n < 2) throw std::invalid_argument("family starts at n = 2");
    return pipeline(emptying_counter(n), GadgetVariant::factor_universality);
}

Dictionary appendix_family(std::size_t n) {
    if (n < 2) throw std::invalid_argument("family starts at n = 2");
    std::vector<Word> words;
    auto emit = [&](std::size_t zeros1, std::size_t ones, std::size_t zeros2,
                    bool mid_one, std::size_t zeros3) {
        std::vector<Symbol> w;
        w.insert(w.end(), zeros1, 0);
        w.insert(w.end(), ones, 1);
        w.insert(w.end(), zeros2, 0);
        if (mid_one) w.push_back(1);
        w.insert(w.end(), zeros3, 0);
        words.emplace_back(std::move(w));
    };

    // Words ending in the forcing chain f_0..f_{n-1}.
    for (std::size_t x = 0; x < n; ++x) {
        emit(0, 1, 0, false, x);          // 1 0^x          (entered via a rule letter)
        emit(n, 0, 1, false, x);          // 0^n 0 0^x      (entered off the element chain)
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 1; j <= n - 1; ++j) {
                for (std::size_t k = 0; k < n; ++k)
                    emit(i, j, 1 + k, true, x);   // 0^i 1^j 0 0^k 1 0^x
                emit(i, j, 1 + n + 1, false, x);  // 0^i 1^j 0 0^n 0 0^x (through the guard)
            }
            for (std::size_t k = 0; k < n; ++k)
                emit(i, n, k, true, x);           // 0^i 1^n 0^k 1 0^x
            emit(i, n, n + 1, false, x);          // 0^i 1^n 0^n 0 0^x  (through the guard)
        }
    }

    // Words ending in final setting states: rule j applied to its own
    // element yields the strictly lower bits.
    for (std::size_t j = 1; j <= n - 1; ++j)
        for (std::size_t k = 1; k < j; ++k) emit(j, j, 1 + (n - k), false, 0);
    for (std::size_t k = 1; k <= n - 1; ++k) emit(n, n, n - k, false, 0);

    // Rule j applied below its own element yields the full set.
    for (std::size_t j = 1; j <= n - 1; ++j)
        for (std::size_t i = 1; i < j; ++i)
            for (std::size_t k = 1; k <= n; ++k) emit(i, j, 1 + (n - k), false, 0);
    for (std::size_t i = 1; i <= n - 1; ++i)
        for (std::size_t k = 1; k <= n; ++k) emit(i, n, n - k, false, 0);

    // Rule j applied above its own element keeps that element.
    for (std::size_t j = 1; j <= n - 1; ++j)
        for (std::size_t i = j + 1; i <= n; ++i) emit(i, j, 1 + (n - i), false, 0);

    return Dictionary(Alphabet::binary(), std::move(words));
}

}  // namespace kstar
