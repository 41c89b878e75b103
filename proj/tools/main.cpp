#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kstar/automata.hpp"
#include "kstar/completeness.hpp"
#include "kstar/errors.hpp"
#include "kstar/families.hpp"
#include "kstar/frobenius.hpp"
#include "kstar/oracle.hpp"
#include "kstar/reductions.hpp"
#include "kstar/srw.hpp"
#include "kstar/words.hpp"

namespace {

using json = nlohmann::json;
using namespace kstar;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(0, "cannot write '" + path + "'");
    out << content;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

json base_report(const std::string& command, const std::string& input, bool verdict,
                 const std::optional<std::string>& witness, double elapsed_ms) {
    json j;
    j["command"] = command;
    j["input"] = input;
    j["verdict"] = verdict;
    j["witness"] = witness ? json(*witness) : json(nullptr);
    j["witness_length"] = witness ? json(witness->size()) : json(nullptr);
    j["pump"] = nullptr;
    j["subsets_visited"] = nullptr;
    j["norm_max"] = nullptr;
    j["norm_sum"] = nullptr;
    j["word_count"] = nullptr;
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

void attach_dict(json& j, const Dictionary& dict) {
    j["norm_max"] = dict.norm_max();
    j["norm_sum"] = dict.norm_sum();
    j["word_count"] = dict.size();
}

void verify(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("witness re-verification failed: ") + what);
}

struct CommonFlags {
    bool json_out = false;
    std::uint64_t max_subsets = 0;
    std::string dot_path;
};

int run_cofinite(const std::string& path, const CommonFlags& flags, bool want_witness) {
    Timer timer;
    const Dictionary dict = parse_dictionary(read_input(path)).dict;
    const CofinitenessReport report = analyze_cofiniteness(dict, flags.max_subsets);

    if (!flags.dot_path.empty()) {
        const Dfa trie = build_trie_dfa(dict);
        const KleeneNfa nfa = kleene_star_nfa(trie, KleeneNfa::Levels::from_trie);
        DeterminizeOptions options;
        options.cap = flags.max_subsets ? flags.max_subsets
                                        : default_subset_cap(dict.norm_sum(), dict.norm_max());
        write_file(flags.dot_path,
                   subset_dfa_to_dot(determinize_reachable(nfa, nfa.initial_set(), options),
                                     &dict.alphabet()));
    }

    std::optional<std::string> witness;
    std::optional<std::string> pump;
    if (report.cofinite && report.longest_omitted) {
        verify(!is_member_dp(dict, *report.longest_omitted), "omitted word is a member");
        witness = report.longest_omitted->to_glyphs(dict.alphabet());
    }
    if (!report.cofinite) {
        Word w = *report.witness_prefix;
        for (int k = 0; k < 4; ++k) {
            verify(!is_member_dp(dict, w), "pumped word is a member");
            w = w + *report.pump;
        }
        witness = report.witness_prefix->to_glyphs(dict.alphabet());
        pump = report.pump->to_glyphs(dict.alphabet());
    }

    const std::string command = want_witness ? "longest-omitted" : "cofinite";
    if (flags.json_out) {
        json j = base_report(command, path, report.cofinite, witness, timer.elapsed_ms());
        if (pump) j["pump"] = *pump;
        j["subsets_visited"] = report.subsets_visited;
        attach_dict(j, dict);
        std::cout << j.dump(2) << "\n";
    } else if (report.cofinite) {
        std::cout << "cofinite";
        if (witness)
            std::cout << "; longest omitted word " << *witness << " (length "
                      << witness->size() << ")";
        else
            std::cout << "; the star covers every word";
        std::cout << " [" << report.subsets_visited << " subsets]\n";
    } else {
        std::cout << "not cofinite; " << *witness << " followed by any number of " << *pump
                  << " stays outside the star [" << report.subsets_visited << " subsets]\n";
    }
    return report.cofinite ? kExitHolds : kExitFails;
}

int run_complete(const std::string& path, const CommonFlags& flags, bool want_witness) {
    Timer timer;
    const Dictionary dict = parse_dictionary(read_input(path)).dict;
    const CompletenessReport report = analyze_completeness(dict, flags.max_subsets);

    if (!flags.dot_path.empty()) {
        // Explore the whole reachable subset space for the picture, not
        // just the prefix the early-stopping decision search touches.
        const KleeneNfa nfa = factor_nfa(dict);
        DeterminizeOptions options;
        options.cap = flags.max_subsets ? flags.max_subsets
                                        : default_subset_cap(dict.norm_sum(), dict.norm_max());
        write_file(flags.dot_path,
                   subset_dfa_to_dot(determinize_reachable(nfa, nfa.full_set(), options),
                                     &dict.alphabet()));
    }

    std::optional<std::string> witness;
    if (report.shortest_incompletable) {
        verify(!is_completable(dict, *report.shortest_incompletable),
               "incompletable witness is completable");
        witness = report.shortest_incompletable->to_glyphs(dict.alphabet());
    }

    const std::string command = want_witness ? "shortest-incompletable" : "complete";
    const bool verdict = want_witness ? !report.complete : report.complete;
    if (flags.json_out) {
        json j = base_report(command, path, verdict, witness, timer.elapsed_ms());
        j["subsets_visited"] = report.subsets_visited;
        attach_dict(j, dict);
        std::cout << j.dump(2) << "\n";
    } else if (report.complete) {
        std::cout << "complete; every word is a factor of some star word ["
                  << report.subsets_visited << " subsets]\n";
    } else {
        std::cout << "not complete; shortest incompletable word " << *witness << " (length "
                  << witness->size() << ") [" << report.subsets_visited << " subsets]\n";
    }
    return verdict ? kExitHolds : kExitFails;
}

int run_member(const std::string& path, const std::string& word_text, bool json_out) {
    Timer timer;
    const Dictionary dict = parse_dictionary(read_input(path)).dict;
    Word w;
    try {
        w = Word::from_glyphs(word_text, dict.alphabet());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    const bool member = is_member(dict, w);
    verify(member == is_member_dp(dict, w), "subset and positional membership disagree");
    if (json_out) {
        json j = base_report("member", path, member, word_text, timer.elapsed_ms());
        attach_dict(j, dict);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << word_text << (member ? " is in the star\n" : " is not in the star\n");
    }
    return member ? kExitHolds : kExitFails;
}

int run_completable(const std::string& path, const std::string& word_text, bool json_out) {
    Timer timer;
    const Dictionary dict = parse_dictionary(read_input(path)).dict;
    Word w;
    try {
        w = Word::from_glyphs(word_text, dict.alphabet());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    const bool ok = is_completable(dict, w);
    if (json_out) {
        json j = base_report("completable", path, ok, word_text, timer.elapsed_ms());
        attach_dict(j, dict);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << word_text << (ok ? " is completable\n" : " is not completable\n");
    }
    return ok ? kExitHolds : kExitFails;
}

std::string rule_seq_text(const RuleSeq& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ' ';
        out += 'r' + std::to_string(seq[i] + 1);
    }
    return out;
}

int run_srs(const std::string& path, bool json_out) {
    Timer timer;
    const SetRewritingSystem srs = parse_srs(read_input(path));

    std::optional<ImmortalityWitness> immortality;
    std::optional<RuleSeq> emptying;
    if (srs.non_emptiable()) {
        immortality = find_immortality_witness(srs);
        if (immortality) {
            auto back = apply_sequence(srs, immortality->subset, immortality->cycle);
            verify(back && *back == immortality->subset, "immortality cycle does not close");
        }
    }
    if (srs.permissive()) emptying = shortest_emptying_sequence(srs);

    bool verdict = false;
    if (srs.non_emptiable())
        verdict = immortality.has_value();
    else if (srs.permissive())
        verdict = emptying.has_value();
    else
        throw ParseError(0, "system is neither non-emptiable nor permissive; no analysis applies");

    if (json_out) {
        json j = base_report("srs", path, verdict, std::nullopt, timer.elapsed_ms());
        j["elements"] = srs.element_count();
        j["rules"] = srs.rule_count();
        j["non_emptiable"] = srs.non_emptiable();
        j["permissive"] = srs.permissive();
        j["immortal"] = srs.non_emptiable() ? json(immortality.has_value()) : json(nullptr);
        j["cycle_subset"] = immortality ? json(immortality->subset.to_string()) : json(nullptr);
        j["cycle_rules"] = immortality ? json(rule_seq_text(immortality->cycle)) : json(nullptr);
        j["emptying_length"] = emptying ? json(emptying->size()) : json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "system: " << srs.element_count() << " elements, " << srs.rule_count()
                  << " rules;" << (srs.non_emptiable() ? " non-emptiable" : "")
                  << (srs.permissive() ? " permissive" : "") << "\n";
        if (srs.non_emptiable()) {
            if (immortality)
                std::cout << "immortal: subset " << immortality->subset.to_string()
                          << " cycles via " << rule_seq_text(immortality->cycle) << "\n";
            else
                std::cout << "mortal: every legal run terminates\n";
        }
        if (srs.permissive()) {
            if (emptying)
                std::cout << "emptying sequence of length " << emptying->size() << ": "
                          << rule_seq_text(*emptying) << "\n";
            else
                std::cout << "the empty set is unreachable from the full set\n";
        }
    }
    return verdict ? kExitHolds : kExitFails;
}

int run_reduce(const std::string& path, bool fu, const std::string& dump_dfa) {
    const SetRewritingSystem srs = parse_srs(read_input(path));
    const GadgetVariant variant =
        fu ? GadgetVariant::factor_universality : GadgetVariant::frobenius;
    const GadgetDfa gadget = srs_to_dfa(srs, variant);
    const Dfa binary = binarize(gadget);
    if (!dump_dfa.empty()) write_file(dump_dfa, binary.to_text());
    const Dictionary words = dfa_to_wordlist(binary);

    std::cout << "# reduce: ell=" << srs.element_count() << " m=" << srs.rule_count()
              << " variant=" << (fu ? "factor-universality" : "frobenius") << "\n"
              << "# gadget-states=" << gadget.dfa.state_count
              << " binary-states=" << binary.state_count << "\n"
              << "# words=" << words.size() << " max-length=" << words.norm_max()
              << " sum-length=" << words.norm_sum() << "\n"
              << serialize_dictionary(words);
    return kExitHolds;
}

int run_gen(const std::string& kind, std::size_t n, bool appendix) {
    if (kind == "counter") {
        std::cout << serialize_srs(immortality_counter(n));
    } else if (kind == "emptying-counter") {
        std::cout << serialize_srs(emptying_counter(n));
    } else if (kind == "frobenius-family") {
        std::cout << serialize_dictionary(frobenius_hard_family(n));
    } else if (kind == "restivo-family") {
        std::cout << serialize_dictionary(appendix ? appendix_family(n)
                                                   : incompletable_hard_family(n));
    } else {
        throw ParseError(0, "unknown generator '" + kind + "'");
    }
    return kExitHolds;
}

int run_oracle(const std::string& kind, const std::string& path, std::size_t limit,
               bool json_out) {
    Timer timer;
    if (kind == "cofinite") {
        const Dictionary dict = parse_dictionary(read_input(path)).dict;
        const OracleCofiniteScan scan = oracle_cofinite(dict, limit);
        std::optional<std::string> witness;
        if (scan.longest_nonmember)
            witness = scan.longest_nonmember->to_glyphs(dict.alphabet());
        if (json_out) {
            json j = base_report("oracle-cofinite", path, scan.definitive(), witness,
                                 timer.elapsed_ms());
            j["limit"] = scan.limit;
            j["nonmember_lengths"] = scan.nonmember_lengths;
            attach_dict(j, dict);
            std::cout << j.dump(2) << "\n";
        } else if (scan.definitive()) {
            std::cout << "cofinite (every word in the top length window is a member)";
            if (witness)
                std::cout << "; longest non-member " << *witness << " (length "
                          << witness->size() << ")";
            std::cout << "\n";
        } else {
            std::cout << "inconclusive up to length " << limit << "; non-members persist";
            if (witness)
                std::cout << ", e.g. " << *witness << " (length " << witness->size() << ")";
            std::cout << "\n";
        }
        return scan.definitive() ? kExitHolds : kExitFails;
    }
    if (kind == "incompletable") {
        const Dictionary dict = parse_dictionary(read_input(path)).dict;
        const OracleIncompletableScan scan = oracle_shortest_incompletable(dict, limit);
        std::optional<std::string> witness;
        if (scan.shortest_incompletable)
            witness = scan.shortest_incompletable->to_glyphs(dict.alphabet());
        if (json_out) {
            json j = base_report("oracle-incompletable", path, scan.conclusive, witness,
                                 timer.elapsed_ms());
            j["limit"] = scan.limit;
            attach_dict(j, dict);
            std::cout << j.dump(2) << "\n";
        } else if (scan.conclusive) {
            std::cout << "shortest incompletable word " << *witness << " (length "
                      << witness->size() << ")\n";
        } else {
            std::cout << "no incompletable word up to length " << limit
                      << " (leaning complete, not a proof)\n";
        }
        return scan.conclusive ? kExitHolds : kExitFails;
    }
    if (kind == "srs") {
        const SetRewritingSystem srs = parse_srs(read_input(path));
        const OracleSrsReport report = oracle_srs_search(srs);
        bool verdict = srs.non_emptiable() ? report.immortal
                                           : report.shortest_emptying_length.has_value();
        if (json_out) {
            json j = base_report("oracle-srs", path, verdict, std::nullopt, timer.elapsed_ms());
            j["immortal"] = srs.non_emptiable() ? json(report.immortal) : json(nullptr);
            json longest = json::array();
            for (const auto& v : report.longest_from_singleton)
                longest.push_back(v ? json(*v) : json(nullptr));
            j["longest_from_singleton"] = longest;
            j["emptying_length"] = report.shortest_emptying_length
                                       ? json(*report.shortest_emptying_length)
                                       : json(nullptr);
            std::cout << j.dump(2) << "\n";
        } else {
            if (srs.non_emptiable()) {
                std::cout << (report.immortal ? "immortal\n" : "mortal\n");
                for (std::size_t e = 0; e < report.longest_from_singleton.size(); ++e) {
                    const auto& v = report.longest_from_singleton[e];
                    std::cout << "  longest from {p" << (e + 1) << "}: "
                              << (v ? std::to_string(*v) : std::string("unbounded")) << "\n";
                }
            }
            if (srs.permissive()) {
                if (report.shortest_emptying_length)
                    std::cout << "shortest emptying length "
                              << *report.shortest_emptying_length << "\n";
                else
                    std::cout << "the empty set is unreachable\n";
            }
        }
        return verdict ? kExitHolds : kExitFails;
    }
    throw ParseError(0, "unknown oracle '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analyses of finite word sets: cofiniteness of the star, factor "
                 "universality, set rewriting, and the constructions tying them together"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string path;
    std::string word_text;
    std::string gen_kind;
    std::string oracle_kind;
    std::size_t gen_n = 2;
    std::size_t oracle_limit = 12;
    bool fu = false;
    bool appendix = false;
    std::string dump_dfa;

    auto add_analysis = [&](const std::string& name, const std::string& help, bool dot) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("file", path, "dictionary file, or - for stdin")->required();
        cmd->add_flag("--json", flags.json_out, "machine-readable report");
        cmd->add_option("--max-subsets", flags.max_subsets, "override the subset cap");
        if (dot) cmd->add_option("--dot", flags.dot_path, "write the subset graph as GraphViz");
        return cmd;
    };

    CLI::App* cofinite = add_analysis("cofinite", "is the star of the word set cofinite?", true);
    CLI::App* longest =
        add_analysis("longest-omitted", "longest word outside a cofinite star", false);
    CLI::App* complete =
        add_analysis("complete", "is every word a factor of a star word?", true);
    CLI::App* shortest = add_analysis("shortest-incompletable",
                                      "shortest word that is a factor of no star word", false);

    CLI::App* member = app.add_subcommand("member", "is a word inside the star?");
    member->add_option("file", path, "dictionary file, or - for stdin")->required();
    member->add_option("word", word_text, "word over the dictionary alphabet")->required();
    member->add_flag("--json", flags.json_out, "machine-readable report");

    CLI::App* completable =
        app.add_subcommand("completable", "is a word a factor of some star word?");
    completable->add_option("file", path, "dictionary file, or - for stdin")->required();
    completable->add_option("word", word_text, "word over the dictionary alphabet")->required();
    completable->add_flag("--json", flags.json_out, "machine-readable report");

    CLI::App* srs = app.add_subcommand("srs", "analyze a set rewriting system");
    srs->add_option("file", path, "system file, or - for stdin")->required();
    srs->add_flag("--json", flags.json_out, "machine-readable report");

    CLI::App* reduce =
        app.add_subcommand("reduce", "compile a set rewriting system into a binary word list");
    reduce->add_option("file", path, "system file, or - for stdin")->required();
    reduce->add_flag("--fu", fu, "factor-universality variant (needs a permissive system)");
    reduce->add_option("--dump-dfa", dump_dfa, "also write the binary automaton as text");

    CLI::App* gen = app.add_subcommand("gen", "generate counter systems and word families");
    gen->add_option("kind", gen_kind,
                    "counter | emptying-counter | frobenius-family | restivo-family")
        ->required();
    gen->add_option("n", gen_n, "family parameter")->required();
    gen->add_flag("--appendix", appendix, "emit restivo-family from the closed-form schemata");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force reference analyses");
    oracle->add_option("kind", oracle_kind, "cofinite | incompletable | srs")->required();
    oracle->add_option("file", path, "input file, or - for stdin")->required();
    oracle->add_option("--limit", oracle_limit, "scan length limit (default 12)");
    oracle->add_flag("--json", flags.json_out, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitHolds : kExitUsage;
    }

    try {
        if (cofinite->parsed()) return run_cofinite(path, flags, false);
        if (longest->parsed()) return run_cofinite(path, flags, true);
        if (complete->parsed()) return run_complete(path, flags, false);
        if (shortest->parsed()) return run_complete(path, flags, true);
        if (member->parsed()) return run_member(path, word_text, flags.json_out);
        if (completable->parsed()) return run_completable(path, word_text, flags.json_out);
        if (srs->parsed()) return run_srs(path, flags.json_out);
        if (reduce->parsed()) return run_reduce(path, fu, dump_dfa);
        if (gen->parsed()) return run_gen(gen_kind, gen_n, appendix);
        if (oracle->parsed()) return run_oracle(oracle_kind, path, oracle_limit, flags.json_out);
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << " (raise --max-subsets to keep going)\n";
        return kExitResource;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
