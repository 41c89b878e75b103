#include "kstar/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace kstar {

OracleCofiniteScan oracle_cofinite(const Dictionary& dict, std::size_t limit) {
    const std::size_t k = dict.alphabet().size();
    if (k > 2)
        throw std::invalid_argument(
            "exhaustive scan supports alphabets of size at most 2; "
            "check sampled words with is_member_dp instead");

    OracleCofiniteScan scan;
    scan.limit = limit;
    std::vector<char> nonmember_at(limit + 1, 0);

    // Depth-first enumeration of the word tree with the membership table
    // maintained incrementally: row i answers whether the current prefix
    // of length i splits into dictionary words.
    std::vector<Symbol> word;
    std::vector<char> member{1};
    std::size_t best_len = 0;
    auto extend = [&](Symbol s) {
        word.push_back(s);
        const std::size_t i = word.size();
        char reach = 0;
        for (const Word& z : dict.words()) {
            const std::size_t m = z.size();
            if (m > i) break;
            if (!member[i - m]) continue;
            bool match = true;
            for (std::size_t j = 0; j < m && match; ++j) match = word[i - m + j] == z[j];
            if (match) {
                reach = 1;
                break;
            }
        }
        member.push_back(reach);
        if (!reach) {
            nonmember_at[i] = 1;
            if (i > best_len || !scan.longest_nonmember) {
                best_len = i;
                scan.longest_nonmember = Word(word);
            }
        }
    };

    struct Frame {
        Symbol next = 0;
    };
    std::vector<Frame> stack{Frame{}};
    while (!stack.empty()) {
        Frame& frame = stack.back();
        if (word.size() == limit || frame.next == k) {
            stack.pop_back();
            if (!word.empty()) {
                word.pop_back();
                member.pop_back();
            }
            continue;
        }
        extend(frame.next++);
        stack.push_back(Frame{});
    }

    for (std::size_t len = 1; len <= limit; ++len)
        if (nonmember_at[len]) scan.nonmember_lengths.push_back(len);
    if (limit >= dict.norm_max()) {
        scan.window_all_member = true;
        for (std::size_t len = limit - dict.norm_max() + 1; len <= limit; ++len)
            if (nonmember_at[len]) scan.window_all_member = false;
    }
    return scan;
}

namespace {

// Minimal prefix table for oracle stepping: explicit child lookup plus a
// word marker, rebuilt from the dictionary without touching the automata
// module.
struct PrefixTable {
    std::map<std::pair<std::uint32_t, Symbol>, std::uint32_t> child;
    std::vector<char> is_word{0};
    std::uint32_t nodes = 1;

    explicit PrefixTable(const Dictionary& dict) {
        for (const Word& w : dict.words()) {
            std::uint32_t cur = 0;
            for (Symbol s : w.symbols()) {
                auto [it, inserted] = child.try_emplace({cur, s}, nodes);
                if (inserted) {
                    ++nodes;
                    is_word.push_back(0);
                }
                cur = it->second;
            }
            is_word[cur] = 1;
        }
    }

    std::vector<std::uint32_t> all_nodes() const {
        std::vector<std::uint32_t> v(nodes);
        for (std::uint32_t i = 0; i < nodes; ++i) v[i] = i;
        return v;
    }

    // Active-prefix stepping: follow the child edge where defined; a
    // completed word restarts a fresh prefix at the root.
    std::vector<std::uint32_t> step(const std::vector<std::uint32_t>& active, Symbol s) const {
        std::set<std::uint32_t> out;
        for (std::uint32_t node : active) {
            auto it = child.find({node, s});
            if (it == child.end()) continue;
            out.insert(it->second);
            if (is_word[it->second]) out.insert(0);
        }
        return {out.begin(), out.end()};
    }
};

}  // namespace

OracleIncompletableScan oracle_shortest_incompletable(const Dictionary& dict,
                                                      std::size_t limit) {
    const std::size_t k = dict.alphabet().size();
    const PrefixTable table(dict);

    OracleIncompletableScan scan;
    scan.limit = limit;

    std::deque<std::pair<Word, std::vector<std::uint32_t>>> queue;
    queue.emplace_back(Word{}, table.all_nodes());
    while (!queue.empty()) {
        auto [word, active] = std::move(queue.front());
        queue.pop_front();
        if (word.size() >= limit) continue;
        for (std::size_t s = 0; s < k; ++s) {
            Word next = word;
            next.push_back(static_cast<Symbol>(s));
            auto stepped = table.step(active, static_cast<Symbol>(s));
            if (stepped.empty()) {
                scan.shortest_incompletable = std::move(next);
                scan.conclusive = true;
                return scan;
            }
            queue.emplace_back(std::move(next), std::move(stepped));
        }
    }
    return scan;  // nothing found up to the limit; inconclusive
}

namespace {

using Config = std::vector<std::uint32_t>;  // sorted element list

std::optional<Config> list_apply(const std::vector<std::optional<std::vector<std::uint32_t>>>& rules,
                                 std::size_t ell, const Config& config, std::size_t rule) {
    std::set<std::uint32_t> out;
    for (std::uint32_t e : config) {
        const auto& img = rules[rule * ell + e];
        if (!img) return std::nullopt;
        out.insert(img->begin(), img->end());
    }
    return Config(out.begin(), out.end());
}

}  // namespace

OracleSrsReport oracle_srs_search(const SetRewritingSystem& srs) {
    const std::size_t ell = srs.element_count();
    const std::size_t m = srs.rule_count();
    if (ell > 5) throw std::invalid_argument("oracle search handles at most 5 elements");

    std::vector<std::optional<std::vector<std::uint32_t>>> rules(m * ell);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < ell; ++i) rules[j * ell + i] = srs.image_elements(j, i);

    OracleSrsReport report;

    if (srs.non_emptiable()) {
        // Cycle detection over every non-empty configuration, not just
        // singleton seeds, so it also vouches for the main search's
        // singleton seeding.
        std::map<Config, char> color;  // 1 grey, 2 black
        std::vector<Config> all;
        for (std::uint32_t mask = 1; mask < (1u << ell); ++mask) {
            Config c;
            for (std::uint32_t e = 0; e < ell; ++e)
                if (mask & (1u << e)) c.push_back(e);
            all.push_back(std::move(c));
        }
        struct Frame {
            Config config;
            std::size_t next_rule = 0;
        };
        bool cycle = false;
        for (const Config& seed : all) {
            if (cycle || color[seed] != 0) continue;
            std::vector<Frame> stack{Frame{seed, 0}};
            while (!stack.empty() && !cycle) {
                Frame& frame = stack.back();
                if (frame.next_rule == 0) color[frame.config] = 1;
                bool descended = false;
                while (frame.next_rule < m) {
                    auto next = list_apply(rules, ell, frame.config, frame.next_rule++);
                    if (!next) continue;
                    const char c = color[*next];
                    if (c == 1) {
                        cycle = true;
                        break;
                    }
                    if (c == 0) {
                        stack.push_back(Frame{std::move(*next), 0});
                        descended = true;
                        break;
                    }
                }
                if (cycle || descended) continue;
                color[frame.config] = 2;
                stack.pop_back();
            }
        }
        report.immortal = cycle;

        // Longest legal sequence per singleton by memoized search.
        std::map<Config, std::optional<std::uint64_t>> memo;  // nullopt = unbounded
        struct Eval {
            Config config;
            std::size_t next_rule = 0;
            std::uint64_t best = 0;
            bool unbounded = false;
        };
        std::map<Config, char> state;  // 1 on stack, 2 done
        auto longest = [&](const Config& from) -> std::optional<std::uint64_t> {
            std::vector<Eval> stack{Eval{from, 0, 0, false}};
            while (!stack.empty()) {
                Eval& frame = stack.back();
                if (frame.next_rule == 0) {
                    if (state[frame.config] == 2) {
                        stack.pop_back();
                        continue;
                    }
                    state[frame.config] = 1;
                }
                bool descended = false;
                while (frame.next_rule < m) {
                    const std::size_t rule = frame.next_rule++;
                    auto next = list_apply(rules, ell, frame.config, rule);
                    if (!next) continue;
                    if (state[*next] == 1) {
                        frame.unbounded = true;
                        continue;
                    }
                    if (state[*next] != 2) {
                        stack.push_back(Eval{std::move(*next), 0, 0, false});
                        descended = true;
                        break;  // the child's value propagates when it pops
                    }
                    const auto& sub = memo[*next];
                    if (!sub)
                        frame.unbounded = true;
                    else
                        frame.best = std::max(frame.best, *sub + 1);
                }
                if (descended) continue;
                state[frame.config] = 2;
                memo[frame.config] = frame.unbounded ? std::optional<std::uint64_t>{}
                                                     : std::optional<std::uint64_t>{frame.best};
                const bool child_unbounded = frame.unbounded;
                const std::uint64_t child_best = frame.best;
                stack.pop_back();
                if (!stack.empty()) {
                    Eval& parent = stack.back();
                    if (child_unbounded)
                        parent.unbounded = true;
                    else
                        parent.best = std::max(parent.best, child_best + 1);
                }
            }
            return memo[from];
        };
        for (std::uint32_t e = 0; e < ell; ++e)
            report.longest_from_singleton.push_back(longest(Config{e}));
    }

    if (srs.permissive()) {
        std::map<Config, std::size_t> dist;
        Config full;
        for (std::uint32_t e = 0; e < ell; ++e) full.push_back(e);
        std::deque<Config> queue{full};
        dist[full] = 0;
        while (!queue.empty() && !report.shortest_emptying_length) {
            Config cur = std::move(queue.front());
            queue.pop_front();
            for (std::size_t rule = 0; rule < m; ++rule) {
                auto next = list_apply(rules, ell, cur, rule);
                auto [it, inserted] = dist.try_emplace(*next, dist[cur] + 1);
                if (!inserted) continue;
                if (next->empty()) {
                    report.shortest_emptying_length = it->second;
                    break;
                }
                queue.push_back(std::move(*next));
            }
        }
    }
    return report;
}

}  // namespace kstar
