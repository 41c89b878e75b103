#include "kstar/completeness.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace kstar {

KleeneNfa factor_nfa(const Dictionary& dict) {
    const Dfa trie = build_trie_dfa(dict);
    KleeneNfa nfa = kleene_star_nfa(trie, KleeneNfa::Levels::from_trie);
    // The emptying criterion needs every state reachable from the initial
    // state (levels prove that) and a final state reachable from every
    // state; in a trie every prefix extends to a full word.
    std::vector<char> productive(nfa.state_count(), 0);
    std::vector<std::uint32_t> work;
    nfa.finals().for_each([&](std::size_t q) {
        productive[q] = 1;
        work.push_back(static_cast<std::uint32_t>(q));
    });
    std::vector<std::vector<std::uint32_t>> reverse_adj(nfa.state_count());
    for (std::uint32_t s = 0; s < nfa.state_count(); ++s)
        for (std::uint32_t a = 0; a < nfa.alphabet_size(); ++a)
            nfa.row(s, a).for_each([&](std::size_t t) { reverse_adj[t].push_back(s); });
    while (!work.empty()) {
        const std::uint32_t cur = work.back();
        work.pop_back();
        for (std::uint32_t p : reverse_adj[cur])
            if (!productive[p]) {
                productive[p] = 1;
                work.push_back(p);
            }
    }
    for (std::uint32_t s = 0; s < nfa.state_count(); ++s)
        assert(productive[s] && "every trie state must reach a final state");
    return nfa;
}

CompletenessReport analyze_completeness(const Dictionary& dict, std::uint64_t cap) {
    const KleeneNfa nfa = factor_nfa(dict);

    DeterminizeOptions options;
    options.cap = cap ? cap : default_subset_cap(dict.norm_sum(), dict.norm_max());
    options.stop_at_empty = true;
    // Starting from the full set breaks the one-state-per-level shape for
    // the first norm_max steps; it re-establishes itself afterwards.
    options.check_levels = true;
    options.check_levels_from_depth = static_cast<std::uint32_t>(dict.norm_max());
    const SubsetDfa sd = determinize_reachable(nfa, nfa.full_set(), options);

    CompletenessReport report;
    report.subsets_visited = sd.subsets.size();
    if (sd.empty_index) {
        report.complete = false;
        report.shortest_incompletable = sd.path_word(*sd.empty_index);
    } else {
        report.complete = true;
    }
    return report;
}

bool is_complete(const Dictionary& dict) { return analyze_completeness(dict).complete; }

std::optional<Word> shortest_incompletable_word(const Dictionary& dict) {
    return analyze_completeness(dict).shortest_incompletable;
}

bool is_completable(const Dictionary& dict, const Word& w) {
    for (Symbol s : w.symbols())
        if (s >= dict.alphabet().size())
            throw std::invalid_argument("word symbol outside the dictionary alphabet");
    const KleeneNfa nfa = factor_nfa(dict);
    return nfa.run(nfa.full_set(), w).any();
}

}  // namespace kstar
