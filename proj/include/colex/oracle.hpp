#pragma once

// Brute-force reference implementations. Nothing here shares code with the
// pair-graph algorithm or the index; they only use the data model.

#include <map>
#include <set>

#include "colex/chain_partition.hpp"
#include "colex/colex_relation.hpp"
#include "colex/graph.hpp"
#include "colex/relation.hpp"

namespace colex::oracle {

using Word = std::vector<Symbol>;

// Nodes reachable from start along a path spelling alpha.
inline std::vector<Node> brute_theta(const LabeledGraph& g, std::span<const Node> start, std::span<const Symbol> alpha) {
    std::vector<char> cur(g.node_count(), 0);
    for (Node u : start) cur[u] = 1;
    for (Symbol a : alpha) {
        std::vector<char> next(g.node_count(), 0);
        for (const Edge& e : g.edges())
            if (e.label == a && cur[e.src]) next[e.dst] = 1;
        cur.swap(next);
    }
    std::vector<Node> out;
    for (Node v = 0; v < g.node_count(); ++v)
        if (cur[v]) out.push_back(v);
    return out;
}

inline bool nfa_accepts(const Nfa& a, std::span<const Symbol> alpha) {
    const Node s[] = {a.initial};
    for (Node v : brute_theta(a.graph, s, alpha))
        if (a.is_final(v)) return true;
    return false;
}

inline std::vector<std::set<Label>> brute_lambda(const LabeledGraph& g, std::span<const Node> u_marked) {
    std::vector<std::set<Label>> lam(g.node_count());
    for (const Edge& e : g.edges()) lam[e.dst].insert(label_of(e.label));
    for (auto& s : lam)
        if (s.empty()) s.insert(kHash);
    for (Node u : u_marked) lam[u].insert(kAt);
    return lam;
}

// Both axioms checked edge pair by edge pair.
inline bool satisfies_axioms(const LabeledGraph& g, const Relation& r, std::span<const Node> u_marked = {}) {
    const auto lam = brute_lambda(g, u_marked);
    for (Node u = 0; u < r.size(); ++u)
        for (Node v = 0; v < r.size(); ++v) {
            if (u == v || !r.contains(u, v)) continue;
            if (*lam[u].rbegin() > *lam[v].begin()) return false;
        }
    for (const Edge& x : g.edges())
        for (const Edge& y : g.edges())
            if (x.label == y.label && x.dst != y.dst && r.contains(x.dst, y.dst) && !r.contains(x.src, y.src))
                return false;
    return true;
}

// Greatest fixpoint: start from every pair allowed by the angle condition and
// delete pairs whose same-label predecessor pairs are missing until stable.
inline Preorder gfp_max_relation(const LabeledGraph& g, std::span<const Node> u_marked = {}) {
    const std::size_t n = g.node_count();
    const auto lam = brute_lambda(g, u_marked);

    std::vector<std::vector<char>> in(n, std::vector<char>(n, 0));
    for (Node u = 0; u < n; ++u)
        for (Node v = 0; v < n; ++v) in[u][v] = u == v || *lam[u].rbegin() <= *lam[v].begin();

    bool changed = true;
    while (changed) {
        changed = false;
        for (Node u = 0; u < n; ++u)
            for (Node v = 0; v < n; ++v) {
                if (u == v || !in[u][v]) continue;
                for (const Edge& x : g.edges()) {
                    if (x.dst != u) continue;
                    for (const Edge& y : g.edges())
                        if (y.dst == v && y.label == x.label && !in[x.src][y.src]) {
                            in[u][v] = 0;
                            changed = true;
                            break;
                        }
                    if (!in[u][v]) break;
                }
            }
    }
    Relation r(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = 0; v < n; ++v)
            if (in[u][v]) r.insert(u, v);
    return Preorder(std::move(r));
}

// (u, z in S, u R v, v R z) implies v in S.
inline bool is_convex(const Relation& r, std::span<const Node> s) {
    std::vector<char> in(r.size(), 0);
    for (Node x : s) in[x] = 1;
    for (Node u : s)
        for (Node z : s)
            for (Node v = 0; v < r.size(); ++v)
                if (!in[v] && r.contains(u, v) && r.contains(v, z)) return false;
    return true;
}

inline bool is_acyclic(const LabeledGraph& g) {
    std::vector<int> indeg(g.node_count(), 0);
    for (const Edge& e : g.edges()) ++indeg[e.dst];
    std::vector<Node> ready;
    for (Node v = 0; v < g.node_count(); ++v)
        if (!indeg[v]) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        Node u = ready.back();
        ready.pop_back();
        ++seen;
        for (const Edge& e : g.out_edges(u))
            if (--indeg[e.dst] == 0) ready.push_back(e.dst);
    }
    return seen == g.node_count();
}

struct PowersetDfa {
    std::vector<std::vector<Node>> states;  // sorted members; states[0] = {s}
    Nfa dfa;                                // over state ids, same alphabet
};

// Reachable-subset construction, breadth first, symbols in alphabet order.
inline PowersetDfa powerset(const Nfa& a) {
    const LabeledGraph& g = a.graph;
    PowersetDfa p;
    std::map<std::vector<Node>, Node> id;
    std::vector<Edge> edges;
    p.states.push_back({a.initial});
    id[p.states[0]] = 0;
    for (std::size_t x = 0; x < p.states.size(); ++x) {
        for (Symbol c = 0; c < g.alphabet().size(); ++c) {
            std::set<Node> next;
            for (Node u : p.states[x])
                for (const Edge& e : g.out_edges(u))
                    if (e.label == c) next.insert(e.dst);
            if (next.empty()) continue;
            std::vector<Node> key(next.begin(), next.end());
            auto [it, fresh] = id.emplace(key, static_cast<Node>(p.states.size()));
            if (fresh) p.states.push_back(key);
            edges.push_back({static_cast<Node>(x), it->second, c});
        }
    }
    std::vector<Node> finals;
    for (Node x = 0; x < p.states.size(); ++x)
        for (Node u : p.states[x])
            if (a.is_final(u)) {
                finals.push_back(x);
                break;
            }
    p.dfa = Nfa(LabeledGraph(p.states.size(), std::move(edges), g.alphabet()), 0, std::move(finals));
    return p;
}

// Co-lexicographic order on words: compare from the last symbol; a proper
// suffix precedes the longer word.
inline bool colex_less(const Word& x, const Word& y) {
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

// I_u for every state of an acyclic automaton.
inline std::vector<std::set<Word>> reaching_words(const Nfa& a) {
    if (!is_acyclic(a.graph)) throw ContractError("automaton has a cycle");
    const LabeledGraph& g = a.graph;
    std::vector<int> indeg(g.node_count(), 0);
    for (const Edge& e : g.edges()) ++indeg[e.dst];
    std::vector<Node> order, ready;
    for (Node v = 0; v < g.node_count(); ++v)
        if (!indeg[v]) ready.push_back(v);
    while (!ready.empty()) {
        Node u = ready.back();
        ready.pop_back();
        order.push_back(u);
        for (const Edge& e : g.out_edges(u))
            if (--indeg[e.dst] == 0) ready.push_back(e.dst);
    }
    std::vector<std::set<Word>> I(g.node_count());
    I[a.initial].insert(Word{});
    for (Node u : order)
        for (const Edge& e : g.out_edges(u))
            for (const Word& w : I[u]) {
                Word x = w;
                x.push_back(e.label);
                I[e.dst].insert(std::move(x));
            }
    return I;
}

// I_u strictly before I_v, or equal.
inline bool word_sets_le(const std::set<Word>& iu, const std::set<Word>& iv) {
    if (iu == iv) return true;
    for (const Word& x : iu)
        for (const Word& y : iv) {
            if (iu.count(y) && iv.count(x)) continue;  // {x, y} inside the intersection
            if (!colex_less(x, y)) return false;
        }
    return true;
}

inline Preorder prec_A_acyclic(const Nfa& a) {
    const auto I = reaching_words(a);
    const std::size_t n = a.state_count();
    Relation r(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = 0; v < n; ++v)
            if (word_sets_le(I[u], I[v])) r.insert(u, v);
    return Preorder(std::move(r));
}

// (u, v) in r implies I_u before-or-equal I_v, and every reachable I_alpha is
// r-convex.
inline bool check_monotonic(const Nfa& a, const Relation& r) {
    const auto I = reaching_words(a);
    const std::size_t n = a.state_count();
    for (Node u = 0; u < n; ++u)
        for (Node v = 0; v < n; ++v)
            if (u != v && r.contains(u, v) && !word_sets_le(I[u], I[v])) return false;
    std::set<Word> all;
    for (const auto& s : I) all.insert(s.begin(), s.end());
    for (const Word& w : all) {
        std::vector<Node> ia;
        for (Node u = 0; u < n; ++u)
            if (I[u].count(w)) ia.push_back(u);
        if (!is_convex(r, ia)) return false;
    }
    return true;
}

// Pairwise-incomparable subset of maximum size, by enumeration.
inline std::size_t exhaustive_max_antichain(const Relation& r) {
    const std::size_t n = r.size();
    if (n > 20) throw ContractError("exhaustive antichain limited to 20 elements");
    std::vector<std::uint32_t> comp(n, 0);
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y)
            if (x != y && (r.contains(x, y) || r.contains(y, x))) comp[x] |= 1u << y;
    std::size_t best = 0;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        const auto size = static_cast<std::size_t>(std::popcount(m));
        if (size <= best) continue;
        bool ok = true;
        for (std::uint32_t rest = m; rest && ok; rest &= rest - 1)
            ok = !(comp[std::countr_zero(rest)] & m);
        if (ok) best = size;
    }
    return best;
}

// Smallest width of a co-lex order (an antisymmetric co-lex preorder) on g.
// Every co-lex order is contained in the maximum co-lex relation, so the
// search ranges over subsets of its strict pairs.
inline std::size_t exhaustive_min_colex_order_width(const LabeledGraph& g, std::span<const Node> u_marked = {}) {
    const std::size_t n = g.node_count();
    const auto cand = gfp_max_relation(g, u_marked).relation().strict_pairs();
    if (cand.size() > 26) throw ContractError("exhaustive order search limited to 26 candidate pairs");
    std::size_t best = n;
    Relation r = Relation::identity(n);
    auto rec = [&](auto&& self, std::size_t x) -> void {
        if (x == cand.size()) {
            if (!r.is_transitive() || !satisfies_axioms(g, r, u_marked)) return;
            best = std::min(best, exhaustive_max_antichain(r));
            return;
        }
        self(self, x + 1);
        auto [u, v] = cand[x];
        if (r.contains(v, u)) return;
        r.insert(u, v);
        self(self, x + 1);
        r.erase(u, v);
    };
    rec(rec, 0);
    return best;
}

// Equality of languages by product search over both powerset automata,
// matching symbols by name. Symbols missing from one side lead to its dead
// state.
inline bool language_equiv(const Nfa& a, const Nfa& b) {
    const auto pa = powerset(a), pb = powerset(b);
    std::vector<std::string> names = a.graph.alphabet().symbols();
    for (const auto& s : b.graph.alphabet().symbols())
        if (!a.graph.alphabet().find(s)) names.push_back(s);
    constexpr Node kDead = static_cast<Node>(-1);
    auto step = [](const PowersetDfa& p, Node x, const std::string& name) -> Node {
        if (x == kDead) return kDead;
        auto c = p.dfa.graph.alphabet().find(name);
        if (!c) return kDead;
        for (const Edge& e : p.dfa.graph.out_edges(x))
            if (e.label == *c) return e.dst;
        return kDead;
    };
    auto fin = [](const PowersetDfa& p, Node x) { return x != kDead && p.dfa.is_final(x); };
    std::set<std::pair<Node, Node>> seen{{0, 0}};
    std::vector<std::pair<Node, Node>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (fin(pa, x) != fin(pb, y)) return false;
        for (const auto& nm : names) {
            std::pair<Node, Node> nxt{step(pa, x, nm), step(pb, y, nm)};
            if (nxt.first == kDead && nxt.second == kDead) continue;
            if (seen.insert(nxt).second) stack.push_back(nxt);
        }
    }
    return true;
}

struct PowersetBounds {
    std::size_t r = 0;        // width of the state preorder
    std::size_t n_prec = 0;   // its class count
    std::size_t r_star = 0;   // width on the powerset automaton
    std::size_t n_star = 0;   // powerset state count
    bool exact = true;        // false: cyclic input, r and n_prec are upper bounds
    bool bounds_hold = false;
};

inline std::uint64_t state_bound(std::size_t r, std::size_t n_prec) {
    return (std::uint64_t{1} << r) * (n_prec - r + 1) - 1;
}

inline PowersetBounds check_powerset_bounds(const Nfa& a) {
    if (a.state_count() > 40) throw ContractError("powerset bounds limited to 40 states");
    PowersetBounds b;
    Preorder pre;
    if (is_acyclic(a.graph)) {
        pre = prec_A_acyclic(a);
    } else {
        const Node s[] = {a.initial};
        pre = max_colex_relation(a.graph, s);
        b.exact = false;
    }
    const auto part = classes(pre);
    b.n_prec = part.class_count();
    b.r = min_chain_partition(induced_order(pre, part)).width;
    const auto p = powerset(a);
    b.n_star = p.states.size();
    const Node s0[] = {0};
    b.r_star = preorder_width(max_colex_relation(p.dfa.graph, s0));
    b.bounds_hold = b.r_star <= (std::uint64_t{1} << b.r) - 1 && b.n_star <= state_bound(b.r, b.n_prec);
    return b;
}

// Every word over the alphabet of length at most max_len, shortest first.
inline std::vector<Word> all_words(std::size_t sigma, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len && sigma > 0; ++len) {
        const std::size_t end = out.size();
        for (std::size_t x = begin; x < end; ++x)
            for (Symbol c = 0; c < sigma; ++c) {
                Word w = out[x];
                w.push_back(c);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

}  // namespace colex::oracle
