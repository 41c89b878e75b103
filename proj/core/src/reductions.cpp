#include "kstar/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace kstar {

std::optional<std::uint32_t> GadgetDfa::setting_state(std::uint32_t i, std::uint32_t j,
                                                      std::uint32_t x) const {
    const std::uint32_t base = chain_base[(i - 1) * rule_count + (j - 1)];
    if (base == kNoState) return std::nullopt;
    return base + (x - 1);
}

std::uint32_t GadgetDfa::guard_state() const { return dfa.state_count - 2; }
std::uint32_t GadgetDfa::sink_state() const { return dfa.state_count - 1; }

SetRewritingSystem nfa_to_srs(const Nfa& nfa) {
    const std::uint32_t n = nfa.state_count;
    if (n == 0) throw std::invalid_argument("the automaton must have states");
    // One counter bit per state, but never fewer than two: a single bit
    // cannot register the one increment a length-1 rejected word costs.
    const std::uint32_t bits = std::max<std::uint32_t>(2, n);
    const std::size_t ell = n + bits;  // elements: states first, then counter bits

    auto counter_rule_row = [&](std::uint32_t j, std::vector<std::optional<Bitset>>& table,
                                std::size_t row) {
        // b_j is forbidden; lower bits collapse into b_j; higher bits persist.
        for (std::uint32_t i = 0; i < bits; ++i) {
            if (i == j) {
                table[row + n + i] = std::nullopt;
            } else {
                Bitset img(ell);
                img.set(n + j);
                if (i > j) img.set(n + i);
                table[row + n + i] = std::move(img);
            }
        }
    };

    const std::size_t m = static_cast<std::size_t>(nfa.alphabet_size) * bits + 1;
    std::vector<std::optional<Bitset>> table(m * ell);
    std::size_t row = 0;
    for (std::uint32_t a = 0; a < nfa.alphabet_size; ++a) {
        for (std::uint32_t j = 0; j < bits; ++j) {
            for (std::uint32_t q = 0; q < n; ++q) {
                Bitset img(ell);
                nfa.row(q, a).for_each([&](std::size_t t) { img.set(t); });
                img.set(n + j);  // never empty even where the automaton has no move
                table[row + q] = std::move(img);
            }
            counter_rule_row(j, table, row);
            row += ell;
        }
    }
    // Reset rule: forbidden on final states, otherwise back to {q0, b0}.
    for (std::uint32_t q = 0; q < n; ++q) {
        if (nfa.finals.test(q)) {
            table[row + q] = std::nullopt;
        } else {
            Bitset img(ell);
            img.set(nfa.initial);
            img.set(n);
            table[row + q] = std::move(img);
        }
    }
    for (std::uint32_t i = 0; i < bits; ++i) {
        Bitset img(ell);
        img.set(nfa.initial);
        img.set(n);
        table[row + n + i] = std::move(img);
    }

    SetRewritingSystem srs(ell, std::move(table));
    assert(srs.non_emptiable());
    return srs;
}

GadgetDfa srs_to_dfa(const SetRewritingSystem& srs, GadgetVariant variant) {
    if (variant == GadgetVariant::frobenius && !srs.non_emptiable())
        throw std::invalid_argument("the frobenius gadget needs a non-emptiable system");
    if (variant == GadgetVariant::factor_universality && !srs.permissive())
        throw std::invalid_argument("the factor-universality gadget needs a permissive system");

    const auto ell = static_cast<std::uint32_t>(srs.element_count());
    const auto m = static_cast<std::uint32_t>(srs.rule_count());

    GadgetDfa g;
    g.variant = variant;
    g.ell = ell;
    g.rule_count = m;

    const std::uint32_t forcing = g.forcing_count();
    g.chain_base.assign(static_cast<std::size_t>(ell) * m, kNoState);
    std::uint32_t next_free = 1 + ell + forcing;
    for (std::uint32_t i = 1; i <= ell; ++i) {
        for (std::uint32_t j = 1; j <= m; ++j) {
            if (!srs.image(j - 1, i - 1)) continue;
            g.chain_base[(i - 1) * m + (j - 1)] = next_free;
            next_free += ell;
        }
    }
    const std::uint32_t guard = next_free;
    const std::uint32_t sink = next_free + 1;

    Dfa& d = g.dfa;
    d.state_count = sink + 1;
    d.alphabet_size = m + 1;  // symbol 0 = tick, 1..m = rules
    d.initial = 0;
    d.sink = sink;
    d.transitions.assign(static_cast<std::size_t>(d.state_count) * d.alphabet_size, kNoState);
    d.finals.assign(d.state_count, false);

    const std::uint32_t f0 = g.forcing_state(0);
    const std::uint32_t last_f = g.forcing_state(forcing - 1);

    d.set_next(0, 0, g.element_state(1));
    for (std::uint32_t j = 1; j <= m; ++j) d.set_next(0, j, f0);

    for (std::uint32_t i = 1; i <= ell; ++i) {
        const std::uint32_t p = g.element_state(i);
        d.set_next(p, 0, i < ell ? g.element_state(i + 1) : f0);
        for (std::uint32_t j = 1; j <= m; ++j) {
            const std::uint32_t base = g.chain_base[(i - 1) * m + (j - 1)];
            d.set_next(p, j, base == kNoState ? f0 : *g.setting_state(i, j, ell));
        }
    }

    for (std::uint32_t i = 1; i <= ell; ++i) {
        for (std::uint32_t j = 1; j <= m; ++j) {
            const std::uint32_t base = g.chain_base[(i - 1) * m + (j - 1)];
            if (base == kNoState) continue;
            const auto& image = *srs.image(j - 1, i - 1);
            for (std::uint32_t x = 1; x <= ell; ++x) {
                const std::uint32_t s = *g.setting_state(i, j, x);
                d.set_next(s, 0, x >= 2 ? *g.setting_state(i, j, x - 1) : guard);
                for (std::uint32_t y = 1; y <= m; ++y) d.set_next(s, y, f0);
                // s^{i,j}_x is final exactly when the rule puts p_x into the
                // image of p_i (chain indices descend on the tick letter).
                if (image.test(x - 1)) d.finals[s] = true;
            }
        }
    }

    d.set_next(guard, 0, f0);
    for (std::uint32_t j = 1; j <= m; ++j) d.set_next(guard, j, sink);

    for (std::uint32_t x = 0; x < forcing; ++x) {
        const std::uint32_t f = g.forcing_state(x);
        d.finals[f] = true;
        d.set_next(f, 0, f == last_f ? sink : g.forcing_state(x + 1));
        for (std::uint32_t j = 1; j <= m; ++j) d.set_next(f, j, sink);
    }

    for (std::uint32_t a = 0; a <= m; ++a) d.set_next(sink, a, sink);

    d.validate();
    return g;
}

Dfa binarize(const GadgetDfa& g) {
    const Dfa& a = g.dfa;
    const std::uint32_t m = g.rule_count;
    const std::uint32_t ell = g.ell;

    // Rule letters act identically outside the element states; assert it
    // before collapsing them onto one 1-transition.
    for (std::uint32_t s = 0; s < a.state_count; ++s) {
        if (s >= 1 && s <= ell) continue;
        for (std::uint32_t j = 2; j <= m; ++j)
            if (a.next(s, j) != a.next(s, 1))
                throw std::invalid_argument("rule letters disagree outside the element states");
    }

    Dfa b;
    b.alphabet_size = 2;
    b.state_count = a.state_count + ell * (m - 1);
    b.initial = a.initial;
    b.sink = a.sink;
    b.transitions.assign(static_cast<std::size_t>(b.state_count) * 2, kNoState);
    b.finals.assign(b.state_count, false);
    for (std::uint32_t s = 0; s < a.state_count; ++s) b.finals[s] = a.finals[s];

    const auto decode_state = [&](std::uint32_t i, std::uint32_t depth) {
        // depth-th fresh state of element i's decoding chain, 1-based both.
        return a.state_count + (i - 1) * (m - 1) + (depth - 1);
    };

    for (std::uint32_t s = 0; s < a.state_count; ++s) {
        b.set_next(s, 0, a.next(s, 0));
        const bool element = s >= 1 && s <= ell;
        if (!element) {
            b.set_next(s, 1, a.next(s, 1));
        } else if (m == 1) {
            b.set_next(s, 1, a.next(s, 1));
        } else {
            b.set_next(s, 1, decode_state(s, 1));
        }
    }
    for (std::uint32_t i = 1; i <= ell; ++i) {
        for (std::uint32_t depth = 1; depth + 1 <= m; ++depth) {
            const std::uint32_t ds = decode_state(i, depth);
            // 1^depth then 0 decodes rule `depth`; m ones decode rule m.
            b.set_next(ds, 0, a.next(g.element_state(i), depth));
            b.set_next(ds, 1, depth + 1 < m ? decode_state(i, depth + 1)
                                            : a.next(g.element_state(i), m));
        }
    }

    b.validate();
    return b;
}

Word encode_gadget_word(const Word& gadget_word, std::uint32_t rule_count) {
    std::vector<Symbol> out;
    for (Symbol s : gadget_word.symbols()) {
        if (s == 0) {
            out.push_back(0);
        } else if (s < rule_count || rule_count == 1) {
            // 1^j 0 for rules below the last; a lone rule is just "1".
            for (Symbol k = 0; k < s; ++k) out.push_back(1);
            if (static_cast<std::uint32_t>(s) != rule_count) out.push_back(0);
        } else {
            for (std::uint32_t k = 0; k < rule_count; ++k) out.push_back(1);
        }
    }
    return Word(std::move(out));
}

std::optional<Word> decode_binary_word(const Word& binary_word, std::uint32_t rule_count) {
    std::vector<Symbol> out;
    std::uint32_t ones = 0;
    for (Symbol s : binary_word.symbols()) {
        if (s == 1) {
            if (++ones == rule_count) {
                out.push_back(static_cast<Symbol>(rule_count));
                ones = 0;
            }
            continue;
        }
        if (ones > 0) {
            out.push_back(static_cast<Symbol>(ones));
            ones = 0;
        } else {
            out.push_back(0);
        }
    }
    if (ones != 0) return std::nullopt;  // dangling partial rule encoding
    return Word(std::move(out));
}

Dictionary dfa_to_wordlist(const Dfa& dfa) {
    dfa.validate();
    const std::uint32_t n = dfa.state_count;
    const std::uint32_t k = dfa.alphabet_size;

    std::vector<char> reachable(n, 0);
    std::deque<std::uint32_t> queue{dfa.initial};
    reachable[dfa.initial] = 1;
    while (!queue.empty()) {
        const std::uint32_t s = queue.front();
        queue.pop_front();
        for (std::uint32_t a = 0; a < k; ++a) {
            const std::uint32_t t = dfa.next(s, a);
            if (!reachable[t]) {
                reachable[t] = 1;
                queue.push_back(t);
            }
        }
    }

    std::vector<std::vector<std::uint32_t>> reverse_adj(n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t a = 0; a < k; ++a) reverse_adj[dfa.next(s, a)].push_back(s);
    std::vector<char> productive(n, 0);
    for (std::uint32_t s = 0; s < n; ++s)
        if (dfa.finals[s]) {
            productive[s] = 1;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        const std::uint32_t s = queue.front();
        queue.pop_front();
        for (std::uint32_t p : reverse_adj[s])
            if (!productive[p]) {
                productive[p] = 1;
                queue.push_back(p);
            }
    }

    std::vector<char> relevant(n, 0);
    for (std::uint32_t s = 0; s < n; ++s) relevant[s] = reachable[s] && productive[s];
    if (!relevant[dfa.initial])
        throw std::invalid_argument("the automaton accepts no words");
    if (dfa.finals[dfa.initial])
        throw std::invalid_argument("the automaton accepts the empty word");

    // Any cycle through a state on an accepting path makes the language
    // infinite; detect via Kahn's algorithm on the relevant subgraph.
    std::vector<std::uint32_t> out_degree(n, 0);
    std::size_t relevant_count = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (!relevant[s]) continue;
        ++relevant_count;
        for (std::uint32_t a = 0; a < k; ++a)
            if (relevant[dfa.next(s, a)]) ++out_degree[s];
    }
    std::vector<std::uint32_t> topo;
    for (std::uint32_t s = 0; s < n; ++s)
        if (relevant[s] && out_degree[s] == 0) topo.push_back(s);
    for (std::size_t i = 0; i < topo.size(); ++i)
        for (std::uint32_t p : reverse_adj[topo[i]])
            if (relevant[p] && --out_degree[p] == 0) topo.push_back(p);
    if (topo.size() != relevant_count)
        throw std::invalid_argument("the automaton accepts an infinite language");

    std::vector<Word> words;
    std::vector<Symbol> current;
    struct Frame {
        std::uint32_t state;
        std::uint32_t symbol;
    };
    std::vector<Frame> stack{{dfa.initial, 0}};
    while (!stack.empty()) {
        Frame& frame = stack.back();
        if (frame.symbol == 0 && dfa.finals[frame.state]) words.emplace_back(current);
        if (frame.symbol == k) {
            stack.pop_back();
            if (!current.empty()) current.pop_back();
            continue;
        }
        const std::uint32_t a = frame.symbol++;
        const std::uint32_t t = dfa.next(frame.state, a);
        if (!relevant[t]) continue;
        current.push_back(static_cast<Symbol>(a));
        stack.push_back({t, 0});
    }

    return Dictionary(Alphabet::canonical(k), std::move(words));
}

}  // namespace kstar
