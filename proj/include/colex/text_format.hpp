#pragma once

// Line-oriented graph / automaton text format:
//
//   # comment
//   alphabet a b c        (optional; otherwise symbols are ordered by first use)
//   nodes 3
//   0 1 a
//   initial 0             (automata only)
//   final 1 2             (automata only; may repeat)

#include <charconv>
#include <ostream>
#include <sstream>

#include "colex/graph.hpp"

namespace colex {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
    return v;
}

struct Document {
    std::size_t n = 0;
    bool have_nodes = false;
    std::vector<Edge> edges;
    Alphabet alphabet;
    std::optional<Node> initial;
    std::vector<Node> finals;
};

inline Document parse_document(std::string_view text) {
    Document doc;
    bool declared_alphabet = false;
    std::size_t lineno = 0;
    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;

        auto node_at = [&](std::string_view tok) {
            if (!doc.have_nodes) throw ParseError(lineno, "'nodes' must precede node references");
            std::uint64_t v = parse_uint(tok, lineno);
            if (v >= doc.n)
                throw ParseError(lineno, "node " + std::string(tok) + " out of range (nodes " +
                                             std::to_string(doc.n) + ")");
            return static_cast<Node>(v);
        };

        if (toks[0] == "alphabet") {
            if (declared_alphabet || !doc.edges.empty())
                throw ParseError(lineno, "'alphabet' must appear once, before any edge");
            declared_alphabet = true;
            try {
                for (std::size_t i = 1; i < toks.size(); ++i) doc.alphabet.add(std::string(toks[i]));
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (toks[0] == "nodes") {
            if (doc.have_nodes) throw ParseError(lineno, "duplicate 'nodes' line");
            if (toks.size() != 2) throw ParseError(lineno, "expected 'nodes <n>'");
            std::uint64_t n = parse_uint(toks[1], lineno);
            if (n > 0xFFFFFFFFull) throw ParseError(lineno, "too many nodes");
            doc.n = static_cast<std::size_t>(n);
            doc.have_nodes = true;
        } else if (toks[0] == "initial") {
            if (toks.size() != 2) throw ParseError(lineno, "expected 'initial <s>'");
            if (doc.initial) throw ParseError(lineno, "duplicate 'initial' line");
            doc.initial = node_at(toks[1]);
        } else if (toks[0] == "final") {
            for (std::size_t i = 1; i < toks.size(); ++i) doc.finals.push_back(node_at(toks[i]));
        } else {
            if (toks.size() != 3) throw ParseError(lineno, "expected '<src> <dst> <label>'");
            Edge e;
            e.src = node_at(toks[0]);
            e.dst = node_at(toks[1]);
            if (auto s = doc.alphabet.find(toks[2])) {
                e.label = *s;
            } else if (declared_alphabet) {
                throw ParseError(lineno, "unknown symbol '" + std::string(toks[2]) + "'");
            } else {
                try {
                    e.label = doc.alphabet.add(std::string(toks[2]));
                } catch (const Error& err) {
                    throw ParseError(lineno, err.what());
                }
            }
            doc.edges.push_back(e);
        }
    }
    if (!doc.have_nodes) throw ParseError(0, "missing 'nodes' line");
    return doc;
}

}  // namespace detail

// Automaton lines ('initial', 'final') are accepted and ignored.
inline LabeledGraph parse_graph(std::string_view text) {
    auto doc = detail::parse_document(text);
    return LabeledGraph(doc.n, std::move(doc.edges), std::move(doc.alphabet));
}

inline Nfa parse_nfa(std::string_view text) {
    auto doc = detail::parse_document(text);
    if (!doc.initial) throw ParseError(0, "automaton is missing an 'initial' line");
    return Nfa(LabeledGraph(doc.n, std::move(doc.edges), std::move(doc.alphabet)), *doc.initial,
               std::move(doc.finals));
}

inline bool has_initial_line(std::string_view text) {
    return detail::parse_document(text).initial.has_value();
}

inline void write_graph(std::ostream& os, const LabeledGraph& g) {
    os << "alphabet";
    for (const auto& s : g.alphabet().symbols()) os << ' ' << s;
    os << "\nnodes " << g.node_count() << '\n';
    for (const Edge& e : g.edges()) os << e.src << ' ' << e.dst << ' ' << g.alphabet().name(e.label) << '\n';
}

inline void write_nfa(std::ostream& os, const Nfa& a) {
    write_graph(os, a.graph);
    os << "initial " << a.initial << '\n';
    os << "final";
    for (Node f : a.finals) os << ' ' << f;
    os << '\n';
}

// Single-character alphabets read patterns character by character; otherwise
// symbols are whitespace-separated tokens. Markers are never valid input.
inline std::vector<Symbol> parse_pattern(const Alphabet& alph, std::string_view text) {
    std::vector<Symbol> out;
    auto lookup = [&](std::string_view tok) {
        if (tok == "#" || tok == "@")
            throw ParseError(0, "marker symbol '" + std::string(tok) + "' is not allowed in patterns");
        auto s = alph.find(tok);
        if (!s) throw ParseError(0, "unknown symbol '" + std::string(tok) + "' in pattern");
        out.push_back(*s);
    };
    if (alph.single_char()) {
        for (char c : text) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
            lookup(std::string_view(&c, 1));
        }
    } else {
        for (auto tok : detail::split_ws(text)) lookup(tok);
    }
    return out;
}

inline std::string format_pattern(const Alphabet& alph, std::span<const Symbol> p) {
    std::string out;
    const bool compact = alph.single_char();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!compact && i) out += ' ';
        out += alph.name(p[i]);
    }
    return out;
}

}  // namespace colex
