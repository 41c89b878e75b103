#include "kstar/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "kstar/automata.hpp"

namespace kstar {

Alphabet::Alphabet(std::string glyphs) : glyphs_(std::move(glyphs)) {
    if (glyphs_.empty()) throw std::invalid_argument("alphabet must have at least one glyph");
    index_.fill(-1);
    for (std::size_t i = 0; i < glyphs_.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(glyphs_[i]);
        if (!std::isgraph(c) || c == '#')
            throw std::invalid_argument("glyph (code " + std::to_string(c) +
                                        ") is not a printable non-comment character");
        if (index_[c] != -1)
            throw std::invalid_argument(std::string("duplicate glyph '") + glyphs_[i] + "'");
        index_[c] = static_cast<std::int16_t>(i);
    }
    if (glyphs_.size() > 255) throw std::invalid_argument("alphabet too large");
}

Alphabet Alphabet::binary() { return Alphabet("01"); }

Alphabet Alphabet::canonical(std::size_t size) {
    static const std::string pool = "0123456789abcdefghijklmnopqrstuvwxyz";
    if (size == 0 || size > pool.size())
        throw std::invalid_argument("no canonical glyph table for alphabet size " +
                                    std::to_string(size));
    return Alphabet(pool.substr(0, size));
}

std::optional<Symbol> Alphabet::index_of(char c) const {
    const std::int16_t i = index_[static_cast<unsigned char>(c)];
    if (i < 0) return std::nullopt;
    return static_cast<Symbol>(i);
}

Word Word::from_glyphs(std::string_view text, const Alphabet& alphabet) {
    std::vector<Symbol> syms;
    syms.reserve(text.size());
    for (char c : text) {
        const auto s = alphabet.index_of(c);
        if (!s)
            throw std::invalid_argument(std::string("character '") + c +
                                        "' is not in the alphabet");
        syms.push_back(*s);
    }
    return Word(std::move(syms));
}

std::string Word::to_glyphs(const Alphabet& alphabet) const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(alphabet.glyph(s));
    return out;
}

Word Word::operator+(const Word& o) const {
    std::vector<Symbol> syms = symbols_;
    syms.insert(syms.end(), o.symbols_.begin(), o.symbols_.end());
    return Word(std::move(syms));
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Dictionary::Dictionary(Alphabet alphabet, std::vector<Word> words)
    : alphabet_(std::move(alphabet)), words_(std::move(words)) {
    if (words_.empty()) throw std::invalid_argument("dictionary must contain at least one word");
    for (const Word& w : words_) {
        if (w.empty()) throw std::invalid_argument("dictionary words must be non-empty");
        for (Symbol s : w.symbols())
            if (s >= alphabet_.size())
                throw std::invalid_argument("word symbol outside the alphabet");
    }
    std::sort(words_.begin(), words_.end(), shortlex_less);
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
    for (const Word& w : words_) {
        norm_max_ = std::max(norm_max_, w.size());
        norm_sum_ += w.size();
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

ParseReport parse_dictionary(std::string_view text) {
    std::optional<Alphabet> declared;
    std::vector<std::pair<std::string, std::size_t>> raw;  // word text, line number
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view rest = trim(line.substr(1));
            if (rest.starts_with("alphabet:")) {
                if (declared)
                    throw ParseError(line_no, "duplicate #alphabet: declaration");
                if (!raw.empty())
                    throw ParseError(line_no, "#alphabet: must precede the first word");
                const std::string glyphs{trim(rest.substr(std::string_view("alphabet:").size()))};
                try {
                    declared.emplace(glyphs);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(line_no, e.what());
                }
            }
            continue;
        }
        raw.emplace_back(std::string(line), line_no);
    }
    if (raw.empty()) throw ParseError(0, "empty dictionary (no words)");

    Alphabet alphabet = declared ? *declared : [&] {
        std::set<char> used;
        for (const auto& [w, _] : raw) used.insert(w.begin(), w.end());
        try {
            return Alphabet(std::string(used.begin(), used.end()));
        } catch (const std::invalid_argument& e) {
            throw ParseError(0, std::string("cannot infer an alphabet: ") + e.what());
        }
    }();

    std::vector<Word> words;
    words.reserve(raw.size());
    for (const auto& [w, line] : raw) {
        try {
            words.push_back(Word::from_glyphs(w, alphabet));
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, e.what());
        }
    }
    std::sort(words.begin(), words.end(), shortlex_less);
    const std::size_t total = words.size();
    words.erase(std::unique(words.begin(), words.end()), words.end());
    const std::size_t duplicates = total - words.size();
    return ParseReport{Dictionary(std::move(alphabet), std::move(words)), duplicates};
}

std::string serialize_dictionary(const Dictionary& dict) {
    std::string out = "#alphabet: " + dict.alphabet().glyphs() + "\n";
    for (const Word& w : dict.words()) {
        out += w.to_glyphs(dict.alphabet());
        out += '\n';
    }
    return out;
}

Dfa build_trie_dfa(const Dictionary& dict) {
    const std::uint32_t k = static_cast<std::uint32_t>(dict.alphabet().size());
    std::vector<std::uint32_t> transitions(k, kNoState);  // row of the root
    std::vector<bool> finals{false};
    std::uint32_t states = 1;
    auto row = [&](std::uint32_t s, std::uint32_t a) -> std::uint32_t& {
        return transitions[static_cast<std::size_t>(s) * k + a];
    };
    for (const Word& w : dict.words()) {
        std::uint32_t cur = 0;
        for (Symbol s : w.symbols()) {
            if (row(cur, s) == kNoState) {
                row(cur, s) = states++;
                transitions.insert(transitions.end(), k, kNoState);
                finals.push_back(false);
            }
            cur = row(cur, s);
        }
        finals[cur] = true;
    }
    const std::uint32_t sink = states++;
    transitions.insert(transitions.end(), k, kNoState);
    finals.push_back(false);
    for (auto& t : transitions)
        if (t == kNoState) t = sink;

    Dfa dfa;
    dfa.state_count = states;
    dfa.alphabet_size = k;
    dfa.initial = 0;
    dfa.transitions = std::move(transitions);
    dfa.finals = std::move(finals);
    dfa.sink = sink;
    return dfa;
}

bool is_member_dp(const Dictionary& dict, const Word& w) {
    for (Symbol s : w.symbols())
        if (s >= dict.alphabet().size())
            throw std::invalid_argument("word symbol outside the dictionary alphabet");
    const std::size_t n = w.size();
    std::vector<char> reachable(n + 1, 0);
    reachable[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (const Word& z : dict.words()) {
            const std::size_t m = z.size();
            if (m > i) break;  // words are shortlex-sorted
            if (!reachable[i - m]) continue;
            bool match = true;
            for (std::size_t j = 0; j < m; ++j) {
                if (w[i - m + j] != z[j]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                reachable[i] = 1;
                break;
            }
        }
    }
    return reachable[n] != 0;
}

}  // namespace kstar
