#include "kstar/srw.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kstar {

SetRewritingSystem::SetRewritingSystem(std::size_t ell,
                                       std::vector<std::optional<Bitset>> table)
    : ell_(ell), table_(std::move(table)) {
    if (ell_ == 0) throw std::invalid_argument("a set rewriting system needs elements");
    if (table_.empty() || table_.size() % ell_ != 0)
        throw std::invalid_argument("rule table size must be a positive multiple of ell");
    for (const auto& entry : table_) {
        if (!entry) {
            permissive_ = false;
        } else {
            if (entry->width() != ell_)
                throw std::invalid_argument("rule image has the wrong width");
            if (entry->none()) non_emptiable_ = false;
        }
    }
}

std::optional<std::vector<std::uint32_t>> SetRewritingSystem::image_elements(
    std::size_t rule, std::size_t element) const {
    const auto& entry = image(rule, element);
    if (!entry) return std::nullopt;
    return entry->elements();
}

std::optional<Bitset> apply_rule(const SetRewritingSystem& srs, const Bitset& subset,
                                 std::size_t rule) {
    Bitset out(srs.element_count());
    bool legal = true;
    subset.for_each([&](std::size_t e) {
        if (!legal) return;
        const auto& img = srs.image(rule, e);
        if (!img) {
            legal = false;
            return;
        }
        out |= *img;
    });
    if (!legal) return std::nullopt;
    return out;
}

std::optional<Bitset> apply_sequence(const SetRewritingSystem& srs, Bitset subset,
                                     std::span<const std::uint32_t> seq) {
    for (std::uint32_t rule : seq) {
        auto next = apply_rule(srs, subset, rule);
        if (!next) return std::nullopt;
        subset = std::move(*next);
    }
    return subset;
}

std::optional<ImmortalityWitness> find_immortality_witness(const SetRewritingSystem& srs) {
    if (!srs.non_emptiable())
        throw std::invalid_argument("immortality is defined for non-emptiable systems");
    const std::size_t ell = srs.element_count();
    const std::size_t m = srs.rule_count();

    enum : char { kWhite = 0, kGrey = 1, kBlack = 2 };
    std::unordered_map<Bitset, char, BitsetHash> color;
    // Current DFS path: configuration plus the rule that entered it.
    struct Frame {
        Bitset subset;
        std::uint32_t next_rule = 0;
    };
    std::vector<Frame> stack;
    std::vector<std::uint32_t> path_rules;
    std::unordered_map<Bitset, std::size_t, BitsetHash> path_pos;

    for (std::size_t seed = 0; seed < ell; ++seed) {
        Bitset start = Bitset::with_bit(ell, seed);
        if (color[start] != kWhite) continue;
        stack.push_back(Frame{start, 0});
        while (!stack.empty()) {
            Frame& frame = stack.back();
            if (frame.next_rule == 0) {
                color[frame.subset] = kGrey;
                path_pos[frame.subset] = path_rules.size();
            }
            bool descended = false;
            while (frame.next_rule < m) {
                const std::uint32_t rule = frame.next_rule++;
                auto next = apply_rule(srs, frame.subset, rule);
                if (!next) continue;
                assert(next->any() && "a legal step emptied a non-empty subset");
                const char c = color[*next];
                if (c == kGrey) {
                    // Cycle: rules from next's path position onward, plus this edge.
                    const std::size_t from = path_pos[*next];
                    RuleSeq cycle(path_rules.begin() + static_cast<std::ptrdiff_t>(from),
                                  path_rules.end());
                    cycle.push_back(rule);
                    return ImmortalityWitness{*next, std::move(cycle)};
                }
                if (c == kWhite) {
                    path_rules.push_back(rule);
                    stack.push_back(Frame{std::move(*next), 0});
                    descended = true;
                    break;
                }
            }
            if (descended) continue;
            color[frame.subset] = kBlack;
            path_pos.erase(frame.subset);
            stack.pop_back();
            if (!path_rules.empty() && !stack.empty()) path_rules.pop_back();
        }
    }
    return std::nullopt;
}

bool is_immortal(const SetRewritingSystem& srs) {
    return find_immortality_witness(srs).has_value();
}

namespace {

struct NodeInfo {
    std::uint64_t length = 0;
    std::uint32_t best_rule = 0;
    bool has_move = false;
    char color = 0;  // 0 white, 1 grey, 2 black
};

}  // namespace

LongestLegalResult longest_legal_sequence(const SetRewritingSystem& srs, const Bitset& from) {
    if (!srs.non_emptiable())
        throw std::invalid_argument("longest legal sequences need a non-emptiable system");
    const std::size_t m = srs.rule_count();
    std::unordered_map<Bitset, NodeInfo, BitsetHash> info;

    struct Frame {
        Bitset subset;
        std::uint32_t next_rule = 0;
    };
    std::vector<Frame> stack{Frame{from, 0}};
    while (!stack.empty()) {
        Frame& frame = stack.back();
        NodeInfo& node = info[frame.subset];
        if (frame.next_rule == 0) {
            if (node.color == 2) {  // already solved via another path
                stack.pop_back();
                if (!stack.empty()) --stack.back().next_rule;
                continue;
            }
            node.color = 1;
        }
        bool descended = false;
        while (frame.next_rule < m) {
            const std::uint32_t rule = frame.next_rule++;
            auto next = apply_rule(srs, frame.subset, rule);
            if (!next) continue;
            auto it = info.find(*next);
            if (it != info.end() && it->second.color == 1)
                throw std::invalid_argument("immortal from the given subset");
            if (it == info.end() || it->second.color == 0) {
                stack.push_back(Frame{std::move(*next), 0});
                descended = true;
                break;
            }
            const std::uint64_t candidate = it->second.length + 1;
            NodeInfo& self = info[frame.subset];
            if (!self.has_move || candidate > self.length) {
                self.length = candidate;
                self.best_rule = rule;
                self.has_move = true;
            }
        }
        if (descended) continue;
        info[frame.subset].color = 2;
        stack.pop_back();
        // Re-run the parent's scan of this rule to absorb the child's value.
        if (!stack.empty()) --stack.back().next_rule;
    }

    LongestLegalResult result;
    Bitset cur = from;
    result.length = info[cur].length;
    while (info[cur].has_move) {
        const std::uint32_t rule = info[cur].best_rule;
        result.sequence.push_back(rule);
        cur = *apply_rule(srs, cur, rule);
    }
    assert(result.sequence.size() == result.length);
    return result;
}

std::optional<RuleSeq> shortest_emptying_sequence(const SetRewritingSystem& srs) {
    if (!srs.permissive())
        throw std::invalid_argument("emptying sequences are defined for permissive systems");
    const std::size_t ell = srs.element_count();
    const std::size_t m = srs.rule_count();

    const Bitset start = Bitset::full(ell);
    struct Visit {
        std::uint32_t parent;
        std::uint32_t rule;
    };
    std::unordered_map<Bitset, std::uint32_t, BitsetHash> index;
    std::vector<Bitset> subsets{start};
    std::vector<Visit> visits{{0, 0}};
    index.emplace(start, 0);

    auto reconstruct = [&](std::uint32_t at) {
        RuleSeq seq;
        while (at != 0) {
            seq.push_back(visits[at].rule);
            at = visits[at].parent;
        }
        std::reverse(seq.begin(), seq.end());
        return seq;
    };
    if (start.none()) return RuleSeq{};

    std::uint32_t head = 0;
    while (head < subsets.size()) {
        const std::uint32_t cur = head++;
        for (std::uint32_t rule = 0; rule < m; ++rule) {
            auto next = apply_rule(srs, subsets[cur], rule);  // permissive: always legal
            auto [it, inserted] = index.emplace(*next, static_cast<std::uint32_t>(subsets.size()));
            if (!inserted) continue;
            subsets.push_back(std::move(*next));
            visits.push_back({cur, rule});
            if (subsets.back().none())
                return reconstruct(static_cast<std::uint32_t>(subsets.size() - 1));
        }
    }
    return std::nullopt;
}

namespace {

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// "p<k>" -> k (1-based in the format)
std::size_t parse_indexed(std::string_view token, char prefix, std::size_t max,
                          std::size_t line) {
    if (token.size() < 2 || token.size() > 10 || token.front() != prefix)
        throw ParseError(line, "expected " + std::string(1, prefix) + "<index>, got '" +
                                   std::string(token) + "'");
    std::size_t value = 0;
    for (char c : token.substr(1)) {
        if (c < '0' || c > '9')
            throw ParseError(line, "bad index in '" + std::string(token) + "'");
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    if (value < 1 || value > max)
        throw ParseError(line, "index out of range in '" + std::string(token) + "'");
    return value - 1;
}

}  // namespace

SetRewritingSystem parse_srs(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    std::size_t ell = 0, m = 0;
    std::vector<std::optional<Bitset>> table;
    std::vector<char> assigned;

    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim_view(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        std::istringstream in{std::string(line)};
        if (!header_seen) {
            std::string tag;
            long long e = 0, r = 0;
            in >> tag >> e >> r;
            if (in.fail() || tag != "srs" || e < 1 || r < 1)
                throw ParseError(line_no, "expected header 'srs <ell> <m>'");
            ell = static_cast<std::size_t>(e);
            m = static_cast<std::size_t>(r);
            table.assign(ell * m, std::nullopt);
            assigned.assign(ell * m, 0);
            header_seen = true;
            continue;
        }

        std::string rule_tok, elem_tok, arrow;
        in >> rule_tok >> elem_tok >> arrow;
        if (in.fail() || arrow != "->")
            throw ParseError(line_no, "expected 'r<j> p<i> -> ...'");
        const std::size_t rule = parse_indexed(rule_tok, 'r', m, line_no);
        const std::size_t elem = parse_indexed(elem_tok, 'p', ell, line_no);
        if (assigned[rule * ell + elem])
            throw ParseError(line_no, "duplicate entry for " + rule_tok + " " + elem_tok);
        assigned[rule * ell + elem] = 1;

        std::vector<std::string> rhs;
        std::string tok;
        while (in >> tok) rhs.push_back(tok);
        if (rhs.size() == 1 && rhs[0] == "!") {
            table[rule * ell + elem] = std::nullopt;
        } else {
            Bitset img(ell);
            for (const std::string& t : rhs) {
                if (t == "!") throw ParseError(line_no, "'!' cannot be mixed with elements");
                img.set(parse_indexed(t, 'p', ell, line_no));
            }
            table[rule * ell + elem] = std::move(img);
        }
    }
    if (!header_seen) throw ParseError(0, "missing 'srs <ell> <m>' header");
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < ell; ++i)
            if (!assigned[j * ell + i])
                throw ParseError(0, "missing entry for r" + std::to_string(j + 1) + " p" +
                                        std::to_string(i + 1));
    return SetRewritingSystem(ell, std::move(table));
}

std::string serialize_srs(const SetRewritingSystem& srs) {
    const std::size_t ell = srs.element_count();
    const std::size_t m = srs.rule_count();
    std::string out = "srs " + std::to_string(ell) + " " + std::to_string(m) + "\n";
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < ell; ++i) {
            out += "r" + std::to_string(j + 1) + " p" + std::to_string(i + 1) + " ->";
            const auto& img = srs.image(j, i);
            if (!img) {
                out += " !";
            } else {
                img->for_each([&](std::size_t e) { out += " p" + std::to_string(e + 1); });
            }
            out += "\n";
        }
    }
    return out;
}

}  // namespace kstar
