#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "colex/colex.hpp"
#include "colex/pipeline.hpp"
#include "colex/verify.hpp"

namespace colex::cli {

inline constexpr std::uint64_t kDefaultSeed = 12345;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Index load_index(const std::string& path) {
    std::istringstream in(read_file(path));
    return read_index(in);
}

inline Backend parse_backend(const std::string& s) { return s == "plain" ? Backend::plain : Backend::compact; }

inline void print_nodes(std::ostream& out, const std::vector<Node>& nodes) {
    out << "nodes";
    for (Node v : nodes) out << ' ' << v;
    out << '\n';
}

}  // namespace detail

// Exit codes: 0 match/accept/success, 1 no match/reject/failed check, 2 error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Co-lex relation index for edge-labeled graphs and automata", "colex"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string graph_path, index_path, output_path, text, backend = "compact", format = "text";
    bool nfa = false, mark_initial = false, from_initial = false;
    std::uint64_t seed = kDefaultSeed;
    std::size_t random_count = 0, max_len = 4;

    auto* build = app.add_subcommand("build", "Index a graph file");
    build->add_option("graph", graph_path, "Graph or automaton file")->required();
    build->add_option("-o,--output", output_path, "Index file to write")->required();
    build->add_flag("--nfa", nfa, "Read an automaton; trim it and mark its initial state");
    build->add_flag("--mark-initial", mark_initial, "Mark the node on the 'initial' line before computing the relation");

    auto* query = app.add_subcommand("query", "Match a pattern; prints yes/no and end nodes");
    query->add_option("index", index_path)->required();
    query->add_option("pattern", text, "Pattern (empty string allowed)")->required();
    query->add_flag("--from-initial", from_initial, "Only occurrences starting at the initial node");
    query->add_option("--backend", backend)->check(CLI::IsMember({"plain", "compact"}));

    auto* acc = app.add_subcommand("accept", "Decide membership in the automaton's language");
    acc->add_option("index", index_path)->required();
    acc->add_option("string", text)->required();
    acc->add_option("--backend", backend)->check(CLI::IsMember({"plain", "compact"}));

    auto* quot = app.add_subcommand("quotient", "Print the quotient graph");
    quot->add_option("graph", graph_path)->required();
    quot->add_flag("--nfa", nfa, "Read an automaton and mark its initial state");
    quot->add_flag("--mark-initial", mark_initial);

    auto* stats = app.add_subcommand("stats", "Index statistics and space accounting");
    stats->add_option("index", index_path)->required();
    stats->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

    auto* ver = app.add_subcommand("verify", "Cross-check everything against brute-force oracles");
    ver->add_option("graph", graph_path, "Graph file; optional with --random");
    ver->add_flag("--nfa", nfa);
    ver->add_flag("--mark-initial", mark_initial);
    ver->add_option("--random", random_count, "Also check this many random graphs and automata");
    ver->add_option("--seed", seed, "Seed for --random")->capture_default_str();
    ver->add_option("--max-len", max_len, "Longest pattern compared with the brute matcher")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*build) {
            const auto src = detail::read_file(graph_path);
            Pipeline p;
            if (nfa) {
                p = build_nfa_pipeline(parse_nfa(src));
            } else if (mark_initial) {
                auto a = parse_nfa(src);
                const Node s[] = {a.initial};
                p = build_pipeline(a.graph, s, a.initial, a.finals);
            } else {
                p = build_pipeline(parse_graph(src));
            }
            std::ofstream os(output_path, std::ios::binary);
            if (!os) throw Error("cannot write '" + output_path + "'");
            write_index(os, p.index);
            os.close();
            if (!os) throw Error("failed writing '" + output_path + "'");
            out << "classes " << p.index.class_count() << " edges " << p.index.edge_count() << " chains "
                << p.index.chain_count() << '\n';
            return 0;
        }
        if (*query) {
            const Index ix = detail::load_index(index_path);
            const auto pat = parse_pattern(ix.alphabet(), text);
            MatchResult r;
            if (from_initial) {
                const ClassId s[] = {ix.initial_class()};
                r = match_from(ix, ix.from_classes(s), pat, detail::parse_backend(backend));
            } else {
                r = match_pattern(ix, pat, detail::parse_backend(backend));
            }
            out << (r.found ? "yes" : "no") << '\n';
            detail::print_nodes(out, map_back(ix, r.set));
            return r.found ? 0 : 1;
        }
        if (*acc) {
            const Index ix = detail::load_index(index_path);
            const bool ok = accept(ix, parse_pattern(ix.alphabet(), text), detail::parse_backend(backend));
            out << (ok ? "accept" : "reject") << '\n';
            return ok ? 0 : 1;
        }
        if (*quot) {
            const auto src = detail::read_file(graph_path);
            LabeledGraph g;
            std::vector<Node> marked;
            if (nfa || mark_initial) {
                auto a = parse_nfa(src);
                marked.push_back(a.initial);
                g = a.graph;
            } else {
                g = parse_graph(src);
            }
            const auto qg = quotient_graph(g, max_colex_relation(g, marked), marked, false);
            for (ClassId c = 0; c < qg.class_count(); ++c) {
                out << "# class " << c << ':';
                for (Node v : qg.partition.members[c]) out << ' ' << v;
                out << '\n';
            }
            write_graph(out, qg.graph);
            return 0;
        }
        if (*stats) {
            const Index ix = detail::load_index(index_path);
            const auto sr = ix.space_report();
            std::ostringstream ratio;
            ratio << std::fixed << std::setprecision(3) << sr.ratio();
            const std::vector<std::pair<std::string, std::string>> rows = {
                {"nodes", std::to_string(ix.original_node_count())},
                {"edges", std::to_string(ix.original_edge_count())},
                {"classes", std::to_string(ix.class_count())},
                {"quotient_edges", std::to_string(ix.edge_count())},
                {"q", std::to_string(ix.chain_count())},
                {"sigma", std::to_string(ix.alphabet().size())},
                {"automaton", ix.has_automaton() ? "yes" : "no"},
                {"measured_bits", std::to_string(sr.measured_bits)},
                {"formula_bits", std::to_string(sr.formula_bits)},
                {"ratio", ratio.str()},
            };
            if (format == "tsv") {
                for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "\t" : "") << rows[i].first;
                out << '\n';
                for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "\t" : "") << rows[i].second;
                out << '\n';
            } else {
                for (const auto& [k, v] : rows) out << k << ' ' << v << '\n';
            }
            return 0;
        }
        if (*ver) {
            if (graph_path.empty() && random_count == 0) throw Error("verify needs a graph file or --random N");
            verify::Options o;
            o.max_len = max_len;
            std::vector<verify::Check> checks;
            if (!graph_path.empty()) {
                const auto src = detail::read_file(graph_path);
                if (nfa) {
                    checks = verify::verify_nfa(parse_nfa(src), o);
                } else if (mark_initial) {
                    auto a = parse_nfa(src);
                    const Node s[] = {a.initial};
                    checks = verify::verify_graph(a.graph, s, o);
                } else {
                    checks = verify::verify_graph(parse_graph(src), {}, o);
                }
            }
            if (random_count) {
                auto more = verify::verify_random(seed, random_count, o);
                checks.insert(checks.end(), more.begin(), more.end());
            }
            verify::write_report(out, checks);
            return verify::all_pass(checks) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace colex::cli
