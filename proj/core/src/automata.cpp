#include "kstar/automata.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace kstar {

std::uint32_t Dfa::run(std::uint32_t from, const Word& w) const {
    std::uint32_t cur = from;
    for (Symbol s : w.symbols()) cur = next(cur, s);
    return cur;
}

void Dfa::validate() const {
    if (state_count == 0 || alphabet_size == 0)
        throw std::invalid_argument("automaton must have states and symbols");
    if (transitions.size() != static_cast<std::size_t>(state_count) * alphabet_size ||
        finals.size() != state_count)
        throw std::invalid_argument("automaton tables have inconsistent sizes");
    if (initial >= state_count) throw std::invalid_argument("initial state out of range");
    for (std::uint32_t s = 0; s < state_count; ++s)
        for (std::uint32_t a = 0; a < alphabet_size; ++a)
            if (next(s, a) >= state_count)
                throw std::invalid_argument("transition target out of range");
    if (sink) {
        if (*sink >= state_count) throw std::invalid_argument("sink out of range");
        if (finals[*sink]) throw std::invalid_argument("sink must not be final");
        for (std::uint32_t a = 0; a < alphabet_size; ++a)
            if (next(*sink, a) != *sink)
                throw std::invalid_argument("sink must loop to itself on every symbol");
    }
}

std::string Dfa::to_text() const {
    std::string out = "dfa states=" + std::to_string(state_count) +
                      " alphabet=" + std::to_string(alphabet_size) + "\n";
    out += "initial " + std::to_string(initial) + "\n";
    out += "final";
    for (std::uint32_t s = 0; s < state_count; ++s)
        if (finals[s]) out += " " + std::to_string(s);
    out += "\n";
    if (sink) out += "sink " + std::to_string(*sink) + "\n";
    for (std::uint32_t s = 0; s < state_count; ++s)
        for (std::uint32_t a = 0; a < alphabet_size; ++a)
            out += std::to_string(s) + " " + std::to_string(a) + " " +
                   std::to_string(next(s, a)) + "\n";
    return out;
}

KleeneNfa kleene_star_nfa(const Dfa& dfa, KleeneNfa::Levels levels) {
    dfa.validate();
    if (dfa.is_final(dfa.initial))
        throw std::invalid_argument("the automaton accepts the empty word");

    // Remap state ids with the sink dropped.
    std::vector<std::uint32_t> map(dfa.state_count, kNoState);
    std::uint32_t count = 0;
    for (std::uint32_t s = 0; s < dfa.state_count; ++s) {
        if (dfa.sink && s == *dfa.sink) continue;
        map[s] = count++;
    }

    KleeneNfa nfa;
    nfa.state_count_ = count;
    nfa.alphabet_size_ = dfa.alphabet_size;
    nfa.initial_ = map[dfa.initial];
    nfa.rows_.assign(static_cast<std::size_t>(count) * dfa.alphabet_size, Bitset(count));
    nfa.finals_ = Bitset(count);
    for (std::uint32_t s = 0; s < dfa.state_count; ++s) {
        if (map[s] == kNoState) continue;
        if (dfa.is_final(s)) nfa.finals_.set(map[s]);
        for (std::uint32_t a = 0; a < dfa.alphabet_size; ++a) {
            const std::uint32_t t = dfa.next(s, a);
            if (map[t] == kNoState) continue;
            if (map[t] == nfa.initial_)
                throw std::invalid_argument("the automaton returns to its initial state");
            nfa.rows_[static_cast<std::size_t>(map[s]) * dfa.alphabet_size + a].set(map[t]);
        }
    }
    nfa.finals_.set(nfa.initial_);

    if (levels == KleeneNfa::Levels::from_trie) {
        // Level = BFS depth; a trie gives every non-initial state exactly
        // one incoming edge, which makes the shortest word unique.
        std::vector<std::uint32_t> indegree(count, 0);
        for (std::uint32_t s = 0; s < count; ++s)
            for (std::uint32_t a = 0; a < dfa.alphabet_size; ++a)
                nfa.rows_[static_cast<std::size_t>(s) * dfa.alphabet_size + a].for_each(
                    [&](std::size_t t) { ++indegree[t]; });
        nfa.levels_.assign(count, kNoState);
        nfa.levels_[nfa.initial_] = 0;
        std::deque<std::uint32_t> queue{nfa.initial_};
        while (!queue.empty()) {
            const std::uint32_t s = queue.front();
            queue.pop_front();
            for (std::uint32_t a = 0; a < dfa.alphabet_size; ++a)
                nfa.rows_[static_cast<std::size_t>(s) * dfa.alphabet_size + a].for_each(
                    [&](std::size_t t) {
                        if (nfa.levels_[t] == kNoState) {
                            nfa.levels_[t] = nfa.levels_[s] + 1;
                            queue.push_back(static_cast<std::uint32_t>(t));
                        }
                    });
        }
        for (std::uint32_t s = 0; s < count; ++s) {
            if (nfa.levels_[s] == kNoState)
                throw std::invalid_argument("state unreachable from the initial state");
            if (s != nfa.initial_ && indegree[s] != 1)
                throw std::invalid_argument("not a trie: state has multiple incoming edges");
        }
    }
    return nfa;
}

Bitset KleeneNfa::step(const Bitset& subset, Symbol symbol) const {
    Bitset out(state_count_);
    subset.for_each([&](std::size_t q) { out |= row(q, symbol); });
    if (out.intersects(finals_)) out.set(initial_);
    return out;
}

Bitset KleeneNfa::run(Bitset subset, const Word& w) const {
    for (Symbol s : w.symbols()) subset = step(subset, s);
    return subset;
}

Bitset subset_step(const KleeneNfa& nfa, const Bitset& subset, Symbol symbol) {
    return nfa.step(subset, symbol);
}

namespace {

void check_level_structure(const KleeneNfa& nfa, const Bitset& subset) {
    std::vector<char> seen(nfa.state_count() + 1, 0);
    subset.for_each([&](std::size_t q) {
        const std::uint32_t lv = nfa.level(q);
        assert(!seen[lv] && "subset holds two states of the same level");
        seen[lv] = 1;
    });
}

}  // namespace

SubsetDfa determinize_reachable(const KleeneNfa& nfa, const Bitset& start,
                                const DeterminizeOptions& options) {
    if (options.cap < 1) throw std::invalid_argument("subset cap must be at least 1");
    if (options.check_levels && !nfa.has_levels())
        throw std::invalid_argument("level checks need a level-annotated NFA");

    Bitset first = start;
    if (first.intersects(nfa.finals())) first.set(nfa.initial());

    SubsetDfa sd;
    sd.alphabet_size = nfa.alphabet_size();
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> index;

    auto intern = [&](const Bitset& subset, std::uint32_t from,
                      Symbol via) -> std::uint32_t {
        auto it = index.find(subset);
        if (it != index.end()) return it->second;
        if (sd.subsets.size() >= options.cap)
            throw CapExceededError(sd.subsets.size());
        const auto id = static_cast<std::uint32_t>(sd.subsets.size());
        const std::uint32_t d = (from == kNoState) ? 0 : sd.depth[from] + 1;
        if (options.check_levels && d >= options.check_levels_from_depth)
            check_level_structure(nfa, subset);
        index.emplace(subset, id);
        sd.subsets.push_back(subset);
        sd.final_subset.push_back(nfa.is_final_subset(subset));
        sd.parent.push_back(from);
        sd.parent_symbol.push_back(via);
        sd.depth.push_back(d);
        if (subset.none()) sd.empty_index = id;
        return id;
    };

    intern(first, kNoState, 0);
    if (options.stop_at_empty && sd.empty_index) {
        sd.complete = false;
        return sd;
    }

    std::uint32_t head = 0;
    while (head < sd.subsets.size()) {
        const std::uint32_t cur = head++;
        sd.transitions.resize(static_cast<std::size_t>(cur + 1) * sd.alphabet_size, kNoState);
        for (std::uint32_t a = 0; a < sd.alphabet_size; ++a) {
            // note: step() copies; cur's subset may move as the vector grows
            const Bitset next = nfa.step(sd.subsets[cur], static_cast<Symbol>(a));
            const std::uint32_t id = intern(next, cur, static_cast<Symbol>(a));
            sd.transitions[static_cast<std::size_t>(cur) * sd.alphabet_size + a] = id;
            if (options.stop_at_empty && sd.empty_index) {
                sd.complete = false;
                return sd;
            }
        }
    }
    return sd;
}

Word SubsetDfa::path_word(std::uint32_t index) const {
    std::vector<Symbol> rev;
    std::uint32_t cur = index;
    while (parent[cur] != kNoState) {
        rev.push_back(parent_symbol[cur]);
        cur = parent[cur];
    }
    std::reverse(rev.begin(), rev.end());
    return Word(std::move(rev));
}

namespace {

// Strongly connected components by Kosaraju's two-pass scheme, iterative.
struct SccResult {
    std::vector<std::uint32_t> component;  // per node
    std::vector<std::uint32_t> size;       // per component
};

SccResult strongly_connected_components(const SubsetDfa& sd) {
    const std::size_t n = sd.subsets.size();
    const std::size_t k = sd.alphabet_size;
    std::vector<std::uint32_t> order;
    order.reserve(n);
    std::vector<char> visited(n, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // node, next symbol
    for (std::uint32_t root = 0; root < n; ++root) {
        if (visited[root]) continue;
        visited[root] = 1;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [node, sym] = stack.back();
            if (sym == k) {
                order.push_back(node);
                stack.pop_back();
                continue;
            }
            const std::uint32_t t = sd.next(node, sym++);
            if (!visited[t]) {
                visited[t] = 1;
                stack.emplace_back(t, 0);
            }
        }
    }

    std::vector<std::vector<std::uint32_t>> reverse_adj(n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t a = 0; a < k; ++a) reverse_adj[sd.next(s, a)].push_back(s);

    SccResult res;
    res.component.assign(n, kNoState);
    std::vector<std::uint32_t> dfs;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (res.component[*it] != kNoState) continue;
        const auto comp = static_cast<std::uint32_t>(res.size.size());
        res.size.push_back(0);
        dfs.push_back(*it);
        res.component[*it] = comp;
        while (!dfs.empty()) {
            const std::uint32_t node = dfs.back();
            dfs.pop_back();
            ++res.size[comp];
            for (std::uint32_t p : reverse_adj[node]) {
                if (res.component[p] == kNoState) {
                    res.component[p] = comp;
                    dfs.push_back(p);
                }
            }
        }
    }
    return res;
}

bool has_self_loop(const SubsetDfa& sd, std::uint32_t node) {
    for (std::uint32_t a = 0; a < sd.alphabet_size; ++a)
        if (sd.next(node, a) == node) return true;
    return false;
}

bool on_cycle(const SubsetDfa& sd, const SccResult& scc, std::uint32_t node) {
    return scc.size[scc.component[node]] >= 2 || has_self_loop(sd, node);
}

// Shortest word looping `node` back to itself; `node` must lie on a cycle.
Word cycle_word(const SubsetDfa& sd, std::uint32_t node) {
    std::vector<std::uint32_t> parent(sd.subsets.size(), kNoState);
    std::vector<Symbol> via(sd.subsets.size(), 0);
    std::deque<std::uint32_t> queue{node};
    std::vector<char> seen(sd.subsets.size(), 0);
    while (!queue.empty()) {
        const std::uint32_t cur = queue.front();
        queue.pop_front();
        for (std::uint32_t a = 0; a < sd.alphabet_size; ++a) {
            const std::uint32_t t = sd.next(cur, a);
            if (t == node) {
                std::vector<Symbol> rev{static_cast<Symbol>(a)};
                std::uint32_t b = cur;
                while (b != node) {
                    rev.push_back(via[b]);
                    b = parent[b];
                }
                std::reverse(rev.begin(), rev.end());
                return Word(std::move(rev));
            }
            if (!seen[t]) {
                seen[t] = 1;
                parent[t] = cur;
                via[t] = static_cast<Symbol>(a);
                queue.push_back(t);
            }
        }
    }
    throw std::logic_error("no cycle through the requested subset");
}

}  // namespace

std::optional<CycleWitness> find_nonfinal_cycle(const SubsetDfa& sd) {
    if (!sd.complete) throw std::logic_error("cycle analysis needs a complete subset search");
    const SccResult scc = strongly_connected_components(sd);
    for (std::uint32_t s = 0; s < sd.subsets.size(); ++s) {
        if (sd.final_subset[s]) continue;
        if (on_cycle(sd, scc, s)) return CycleWitness{s, cycle_word(sd, s)};
    }
    return std::nullopt;
}

bool has_nonfinal_cycle(const SubsetDfa& sd) { return find_nonfinal_cycle(sd).has_value(); }

std::optional<Word> longest_path_to_nonfinal(const SubsetDfa& sd) {
    if (!sd.complete) throw std::logic_error("path analysis needs a complete subset search");
    const std::size_t n = sd.subsets.size();
    const std::size_t k = sd.alphabet_size;

    // Subsets from which a non-final subset is reachable.
    std::vector<std::vector<std::uint32_t>> reverse_adj(n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t a = 0; a < k; ++a) reverse_adj[sd.next(s, a)].push_back(s);
    std::vector<char> restricted(n, 0);
    std::vector<std::uint32_t> work;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (!sd.final_subset[s]) {
            restricted[s] = 1;
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        const std::uint32_t cur = work.back();
        work.pop_back();
        for (std::uint32_t p : reverse_adj[cur]) {
            if (!restricted[p]) {
                restricted[p] = 1;
                work.push_back(p);
            }
        }
    }
    if (!restricted[0]) return std::nullopt;  // every reachable subset is final

    // The restriction must be acyclic; otherwise a cycle could be pumped
    // toward a non-final subset and the complement would be infinite.
    std::vector<std::uint32_t> out_degree(n, 0);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (!restricted[s]) continue;
        for (std::uint32_t a = 0; a < k; ++a)
            if (restricted[sd.next(s, a)]) ++out_degree[s];
    }
    std::vector<std::uint32_t> topo;
    for (std::uint32_t s = 0; s < n; ++s)
        if (restricted[s] && out_degree[s] == 0) topo.push_back(s);
    std::size_t restricted_count = 0;
    for (std::uint32_t s = 0; s < n; ++s) restricted_count += restricted[s];
    for (std::size_t i = 0; i < topo.size(); ++i) {
        const std::uint32_t cur = topo[i];
        for (std::uint32_t p : reverse_adj[cur])
            if (restricted[p] && --out_degree[p] == 0) topo.push_back(p);
    }
    if (topo.size() != restricted_count)
        throw std::logic_error("a cycle reaches a non-final subset; the complement is infinite");

    // Longest distance to some non-final endpoint, over the restriction.
    constexpr std::int64_t kUnset = -1;
    std::vector<std::int64_t> dist(n, kUnset);
    for (const std::uint32_t cur : topo) {  // successors first
        std::int64_t best = sd.final_subset[cur] ? kUnset : 0;
        for (std::uint32_t a = 0; a < k; ++a) {
            const std::uint32_t t = sd.next(cur, a);
            if (restricted[t] && dist[t] != kUnset) best = std::max(best, dist[t] + 1);
        }
        dist[cur] = best;
    }

    std::vector<Symbol> word;
    std::uint32_t cur = 0;
    while (dist[cur] > 0) {
        [[maybe_unused]] const std::size_t before = word.size();
        for (std::uint32_t a = 0; a < k; ++a) {  // ascending: lexicographically least
            const std::uint32_t t = sd.next(cur, a);
            if (restricted[t] && dist[t] == dist[cur] - 1) {
                word.push_back(static_cast<Symbol>(a));
                cur = t;
                break;
            }
        }
        assert(word.size() == before + 1 && "a positive distance must have a successor");
    }
    assert(!sd.final_subset[cur]);
    return Word(std::move(word));
}

std::string subset_dfa_to_dot(const SubsetDfa& sd, const Alphabet* alphabet) {
    std::string out = "digraph subsets {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::uint32_t s = 0; s < sd.subsets.size(); ++s) {
        out += "  n" + std::to_string(s) + " [label=\"" + sd.subsets[s].to_string() + "\"";
        if (sd.final_subset[s]) out += ", shape=doublecircle";
        out += "];\n";
    }
    out += "  start [shape=point];\n  start -> n0;\n";
    for (std::uint32_t s = 0; s < sd.subsets.size(); ++s) {
        for (std::uint32_t a = 0; a < sd.alphabet_size; ++a) {
            const std::size_t slot = static_cast<std::size_t>(s) * sd.alphabet_size + a;
            if (slot >= sd.transitions.size()) break;  // unexpanded after an early stop
            const std::uint32_t t = sd.transitions[slot];
            if (t == kNoState) continue;
            std::string label = alphabet ? std::string(1, alphabet->glyph(static_cast<Symbol>(a)))
                                         : std::to_string(a);
            out += "  n" + std::to_string(s) + " -> n" + std::to_string(t) + " [label=\"" +
                   label + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

std::uint64_t default_subset_cap(std::size_t norm_sum, std::size_t norm_max) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
    if (norm_max >= 58) return limit;
    const std::uint64_t pow2 = std::uint64_t{1} << norm_max;
    const std::uint64_t base = norm_sum + 1;
    if (base > (limit / 4 - 1) / pow2) return limit;
    return 4 * (base * pow2 + 1);
}

}  // namespace kstar
