#pragma once

#include <random>

#include "colex/graph.hpp"
#include "colex/relation.hpp"

namespace colex::gen {

using Rng = std::mt19937_64;

inline Alphabet letters(std::size_t sigma) {
    Alphabet a;
    for (std::size_t i = 0; i < sigma; ++i) a.add(std::string(1, static_cast<char>('a' + i)));
    return a;
}

// Erdos-Renyi per symbol: each triple (u, v, a) present with probability p.
// With acyclic set, only u < v is allowed.
inline LabeledGraph random_graph(Rng& rng, std::size_t n, std::size_t sigma, double p, bool acyclic = false) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Symbol a = 0; a < sigma; ++a)
        for (Node u = 0; u < n; ++u)
            for (Node v = acyclic ? u + 1 : 0; v < n; ++v)
                if (coin(rng)) edges.push_back({u, v, a});
    return LabeledGraph(n, std::move(edges), letters(sigma));
}

// Sparse variant with an expected out-degree instead of a density.
inline LabeledGraph random_sparse_graph(Rng& rng, std::size_t n, std::size_t sigma, std::size_t m) {
    std::uniform_int_distribution<Node> node(0, static_cast<Node>(n - 1));
    std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(sigma - 1));
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t x = 0; x < m; ++x) edges.push_back({node(rng), node(rng), sym(rng)});
    return LabeledGraph(n, std::move(edges), letters(sigma));
}

// Trim automaton on at most n states with initial state 0 before trimming.
// Retries until the language is nonempty.
inline Nfa random_trim_nfa(Rng& rng, std::size_t n, std::size_t sigma, double p, bool acyclic = false) {
    std::bernoulli_distribution fin(0.3);
    for (;;) {
        auto g = random_graph(rng, n, sigma, p, acyclic);
        std::vector<Node> finals;
        for (Node v = 0; v < n; ++v)
            if (fin(rng)) finals.push_back(v);
        try {
            return trim_nfa(Nfa(std::move(g), 0, std::move(finals))).nfa;
        } catch (const EmptyLanguageError&) {
        }
    }
}

// Random partial order on n elements: transitive closure of a random DAG
// under a random labeling.
inline Preorder random_partial_order(Rng& rng, std::size_t n, double p) {
    std::vector<Node> perm(n);
    for (Node i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(p);
    Relation r = Relation::identity(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v)
            if (coin(rng)) r.insert(perm[u], perm[v]);
    return Preorder(transitive_closure(std::move(r)));
}

}  // namespace colex::gen
