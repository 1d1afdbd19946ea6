#pragma once

#include "colex/colex.hpp"

namespace fx {

using namespace colex;

inline Alphabet abc(std::initializer_list<const char*> names) {
    Alphabet a;
    for (auto n : names) a.add(n);
    return a;
}

// 0 -a-> 1, 0 -a-> 2
inline LabeledGraph two_successors() { return LabeledGraph(3, {{0, 1, 0}, {0, 2, 0}}, abc({"a"})); }

// 0 -a-> 1 -a-> 0
inline LabeledGraph two_cycle() { return LabeledGraph(2, {{0, 1, 0}, {1, 0, 0}}, abc({"a"})); }

// u1 = 0, u2 = 1, v_i = 2 + i; every u reaches every v on a.
inline LabeledGraph bipartite(std::size_t n) {
    std::vector<Edge> e;
    for (Node u = 0; u < 2; ++u)
        for (Node i = 0; i < n; ++i) e.push_back({u, static_cast<Node>(2 + i), 0});
    return LabeledGraph(2 + n, std::move(e), abc({"a"}));
}

// Reflexive closure of all (v_i, v_j), (u_k, v_i), (u_i, u_j).
inline Relation bipartite_relation(std::size_t n) {
    Relation r(2 + n);
    for (Node x = 0; x < 2 + n; ++x)
        for (Node y = 0; y < 2 + n; ++y)
            if (!(x >= 2 && y < 2)) r.insert(x, y);
    return r;
}

// 0 -a-> 1 -a-> 0, 1 -b-> 2; initial 0, finals 1 and 2.
inline Nfa initial_not_convex() {
    return Nfa(LabeledGraph(3, {{0, 1, 0}, {1, 0, 0}, {1, 2, 1}}, abc({"a", "b"})), 0, {1, 2});
}

// Symbols a..e = 0..4. I_3 = {a, bd, cd}, I_4 = {bd, cd, e}.
inline Nfa word_order_not_colex() {
    return Nfa(LabeledGraph(5, {{0, 1, 2}, {0, 2, 1}, {1, 3, 3}, {1, 4, 3}, {2, 3, 3}, {2, 4, 3}, {0, 3, 0}, {0, 4, 4}},
                            abc({"a", "b", "c", "d", "e"})),
               0, {3, 4});
}

// s = 0, u1 = 1, u2 = 2, v_i = 3 + i; all on a; the v's are final.
inline Nfa fan_out_in(std::size_t n) {
    std::vector<Edge> e{{0, 1, 0}, {0, 2, 0}};
    std::vector<Node> finals;
    for (Node i = 0; i < n; ++i) {
        e.push_back({1, static_cast<Node>(3 + i), 0});
        e.push_back({2, static_cast<Node>(3 + i), 0});
        finals.push_back(static_cast<Node>(3 + i));
    }
    return Nfa(LabeledGraph(3 + n, std::move(e), abc({"a"})), 0, std::move(finals));
}

inline Relation relation_of(std::size_t n, std::initializer_list<std::pair<Node, Node>> pairs) {
    Relation r = Relation::identity(n);
    for (auto [u, v] : pairs) r.insert(u, v);
    return r;
}

inline std::vector<Symbol> word(const Alphabet& a, std::string_view s) { return parse_pattern(a, s); }

}  // namespace fx
