#include "kstar/frobenius.hpp"

#include <stdexcept>

namespace kstar {

CofinitenessReport analyze_cofiniteness(const Dictionary& dict, std::uint64_t cap) {
    const Dfa trie = build_trie_dfa(dict);
    const KleeneNfa nfa = kleene_star_nfa(trie, KleeneNfa::Levels::from_trie);

    DeterminizeOptions options;
    options.cap = cap ? cap : default_subset_cap(dict.norm_sum(), dict.norm_max());
    options.check_levels = true;
    const SubsetDfa sd = determinize_reachable(nfa, nfa.initial_set(), options);

    CofinitenessReport report;
    report.subsets_visited = sd.subsets.size();
    if (auto cycle = find_nonfinal_cycle(sd)) {
        report.cofinite = false;
        report.witness_prefix = sd.path_word(cycle->subset_index);
        report.pump = std::move(cycle->pump);
    } else {
        report.cofinite = true;
        report.longest_omitted = longest_path_to_nonfinal(sd);
    }
    return report;
}

bool is_cofinite(const Dictionary& dict) { return analyze_cofiniteness(dict).cofinite; }

std::optional<Word> longest_omitted_word(const Dictionary& dict) {
    CofinitenessReport report = analyze_cofiniteness(dict);
    if (!report.cofinite)
        throw std::logic_error("the star is not cofinite; no longest omitted word exists");
    return report.longest_omitted;
}

bool is_member(const Dictionary& dict, const Word& w) {
    for (Symbol s : w.symbols())
        if (s >= dict.alphabet().size())
            throw std::invalid_argument("word symbol outside the dictionary alphabet");
    const Dfa trie = build_trie_dfa(dict);
    const KleeneNfa nfa = kleene_star_nfa(trie, KleeneNfa::Levels::from_trie);
    return nfa.is_final_subset(nfa.run(nfa.initial_set(), w));
}

}  // namespace kstar
