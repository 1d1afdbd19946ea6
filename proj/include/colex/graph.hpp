#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace colex {

using Node = std::uint32_t;
using Symbol = std::uint32_t;  // index into an Alphabet
using Label = std::uint32_t;   // extended order: HASH < AT < every user symbol

inline constexpr Label kHash = 0;
inline constexpr Label kAt = 1;

constexpr Label label_of(Symbol s) { return s + 2; }
constexpr bool is_marker(Label l) { return l < 2; }

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller handed an argument that violates a documented precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Totally ordered user alphabet. Order is list position; the two markers are
// not representable as Symbols and sort below every symbol.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols) {
        for (auto& s : symbols) add(std::move(s));
    }

    Symbol add(std::string name) {
        if (name.empty()) throw Error("empty symbol name");
        if (name == "#" || name == "@") throw Error("symbol '" + name + "' is reserved");
        if (find(name)) throw Error("duplicate symbol '" + name + "'");
        symbols_.push_back(std::move(name));
        return static_cast<Symbol>(symbols_.size() - 1);
    }

    std::optional<Symbol> find(std::string_view name) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i] == name) return static_cast<Symbol>(i);
        return std::nullopt;
    }

    std::size_t size() const { return symbols_.size(); }
    const std::string& name(Symbol s) const { return symbols_.at(s); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    bool single_char() const {
        return std::all_of(symbols_.begin(), symbols_.end(),
                           [](const std::string& s) { return s.size() == 1; });
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

struct Edge {
    Node src = 0;
    Node dst = 0;
    Symbol label = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Edge-labeled graph over nodes 0..n-1. Immutable; edges are a set.
class LabeledGraph {
public:
    LabeledGraph() = default;

    LabeledGraph(std::size_t n, std::vector<Edge> edges, Alphabet alphabet)
        : n_(n), edges_(std::move(edges)), alphabet_(std::move(alphabet)) {
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        for (const Edge& e : edges_) {
            if (e.src >= n_ || e.dst >= n_)
                throw ContractError("edge endpoint out of range");
            if (e.label >= alphabet_.size()) throw ContractError("edge label not in alphabet");
        }
        build_adjacency();
    }

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const Alphabet& alphabet() const { return alphabet_; }
    std::span<const Edge> edges() const { return edges_; }

    // Sorted by (label, src).
    std::span<const Edge> in_edges(Node v) const {
        return std::span<const Edge>(in_).subspan(in_off_[v], in_off_[v + 1] - in_off_[v]);
    }
    // Sorted by (label, dst).
    std::span<const Edge> out_edges(Node u) const {
        return std::span<const Edge>(out_).subspan(out_off_[u], out_off_[u + 1] - out_off_[u]);
    }

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.alphabet_ == b.alphabet_;
    }

private:
    void build_adjacency() {
        in_off_.assign(n_ + 1, 0);
        out_off_.assign(n_ + 1, 0);
        for (const Edge& e : edges_) {
            ++in_off_[e.dst + 1];
            ++out_off_[e.src + 1];
        }
        for (std::size_t i = 0; i < n_; ++i) {
            in_off_[i + 1] += in_off_[i];
            out_off_[i + 1] += out_off_[i];
        }
        in_.resize(edges_.size());
        out_.resize(edges_.size());
        std::vector<std::size_t> in_fill(in_off_.begin(), in_off_.end() - 1);
        std::vector<std::size_t> out_fill(out_off_.begin(), out_off_.end() - 1);
        for (const Edge& e : edges_) {
            in_[in_fill[e.dst]++] = e;
            out_[out_fill[e.src]++] = e;
        }
        for (std::size_t v = 0; v < n_; ++v) {
            std::sort(in_.begin() + in_off_[v], in_.begin() + in_off_[v + 1],
                      [](const Edge& a, const Edge& b) {
                          return std::tie(a.label, a.src) < std::tie(b.label, b.src);
                      });
            std::sort(out_.begin() + out_off_[v], out_.begin() + out_off_[v + 1],
                      [](const Edge& a, const Edge& b) {
                          return std::tie(a.label, a.dst) < std::tie(b.label, b.dst);
                      });
        }
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    Alphabet alphabet_;
    std::vector<Edge> in_, out_;
    std::vector<std::size_t> in_off_{0}, out_off_{0};
};

struct Nfa {
    LabeledGraph graph;
    Node initial = 0;
    std::vector<Node> finals;  // sorted, unique

    Nfa() = default;
    Nfa(LabeledGraph g, Node s, std::vector<Node> f)
        : graph(std::move(g)), initial(s), finals(std::move(f)) {
        std::sort(finals.begin(), finals.end());
        finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
        if (graph.node_count() == 0 || initial >= graph.node_count())
            throw ContractError("initial state out of range");
        if (!finals.empty() && finals.back() >= graph.node_count())
            throw ContractError("final state out of range");
    }

    std::size_t state_count() const { return graph.node_count(); }
    bool is_final(Node q) const { return std::binary_search(finals.begin(), finals.end(), q); }
    bool is_dfa() const {
        for (Node u = 0; u < graph.node_count(); ++u) {
            auto out = graph.out_edges(u);
            for (std::size_t i = 1; i < out.size(); ++i)
                if (out[i].label == out[i - 1].label) return false;
        }
        return true;
    }

    friend bool operator==(const Nfa&, const Nfa&) = default;
};

// Set of extended labels attached to a node; always nonempty.
class LabelSet {
public:
    LabelSet() = default;
    explicit LabelSet(std::vector<Label> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
        if (labels_.empty()) throw ContractError("label set must be nonempty");
    }

    Label min() const { return labels_.front(); }
    Label max() const { return labels_.back(); }
    std::size_t size() const { return labels_.size(); }
    bool contains(Label l) const { return std::binary_search(labels_.begin(), labels_.end(), l); }
    const std::vector<Label>& labels() const { return labels_; }

    friend bool operator==(const LabelSet&, const LabelSet&) = default;

private:
    std::vector<Label> labels_;
};

// In-labels of v, or {HASH} for sources; AT added for members of u_marked.
inline std::vector<LabelSet> lambda_sets(const LabeledGraph& g, std::span<const Node> u_marked = {}) {
    std::vector<bool> marked(g.node_count(), false);
    for (Node u : u_marked) {
        if (u >= g.node_count()) throw ContractError("marked node out of range");
        marked[u] = true;
    }
    std::vector<LabelSet> out;
    out.reserve(g.node_count());
    for (Node v = 0; v < g.node_count(); ++v) {
        std::vector<Label> ls;
        for (const Edge& e : g.in_edges(v)) ls.push_back(label_of(e.label));
        if (ls.empty()) ls.push_back(kHash);
        if (marked[v]) ls.push_back(kAt);
        out.emplace_back(std::move(ls));
    }
    return out;
}

// max(a) precedes-or-equals min(b).
inline bool angle(const LabelSet& a, const LabelSet& b) { return a.max() <= b.min(); }

struct TrimResult {
    Nfa nfa;
    std::vector<Node> kept;  // kept[new state] = old state, increasing
};

class EmptyLanguageError : public Error {
public:
    EmptyLanguageError() : Error("automaton recognizes the empty language") {}
};

// Keeps exactly the states reachable from the initial state and co-reachable
// to some final state.
inline TrimResult trim_nfa(const Nfa& a) {
    const LabeledGraph& g = a.graph;
    const std::size_t n = g.node_count();
    std::vector<char> fwd(n, 0), bwd(n, 0);
    std::vector<Node> stack{a.initial};
    fwd[a.initial] = 1;
    while (!stack.empty()) {
        Node u = stack.back();
        stack.pop_back();
        for (const Edge& e : g.out_edges(u))
            if (!fwd[e.dst]) fwd[e.dst] = 1, stack.push_back(e.dst);
    }
    for (Node f : a.finals) bwd[f] = 1, stack.push_back(f);
    while (!stack.empty()) {
        Node v = stack.back();
        stack.pop_back();
        for (const Edge& e : g.in_edges(v))
            if (!bwd[e.src]) bwd[e.src] = 1, stack.push_back(e.src);
    }
    if (!bwd[a.initial]) throw EmptyLanguageError();

    std::vector<Node> kept;
    std::vector<Node> remap(n, static_cast<Node>(-1));
    for (Node v = 0; v < n; ++v)
        if (fwd[v] && bwd[v]) remap[v] = static_cast<Node>(kept.size()), kept.push_back(v);

    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (remap[e.src] != static_cast<Node>(-1) && remap[e.dst] != static_cast<Node>(-1))
            edges.push_back({remap[e.src], remap[e.dst], e.label});
    std::vector<Node> finals;
    for (Node f : a.finals)
        if (remap[f] != static_cast<Node>(-1)) finals.push_back(remap[f]);
    return {Nfa(LabeledGraph(kept.size(), std::move(edges), g.alphabet()), remap[a.initial],
                std::move(finals)),
            std::move(kept)};
}

}  // namespace colex
