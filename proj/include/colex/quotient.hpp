#pragma once

#include <map>

#include "colex/colex_relation.hpp"
#include "colex/graph.hpp"
#include "colex/relation.hpp"

namespace colex {

using ClassId = std::uint32_t;

// Mutual-comparability classes of a preorder. Class ids follow the smallest
// member, so class 0 contains node 0.
struct ClassPartition {
    std::vector<ClassId> class_of;            // node -> class
    std::vector<std::vector<Node>> members;   // class -> sorted nodes

    std::size_t node_count() const { return class_of.size(); }
    std::size_t class_count() const { return members.size(); }

    friend bool operator==(const ClassPartition&, const ClassPartition&) = default;
};

inline ClassPartition classes(const Preorder& pre) {
    const std::size_t n = pre.size();
    ClassPartition part;
    part.class_of.assign(n, static_cast<ClassId>(-1));
    for (Node v = 0; v < n; ++v) {
        if (part.class_of[v] != static_cast<ClassId>(-1)) continue;
        const auto id = static_cast<ClassId>(part.members.size());
        part.members.emplace_back();
        pre.relation().for_each_in_row(v, [&](Node w) {
            if (w >= v && pre.contains(w, v)) {
                part.class_of[w] = id;
                part.members.back().push_back(w);
            }
        });
    }
    return part;
}

// [u] <= [v] iff u <= v; a partial order on class ids.
inline Preorder induced_order(const Preorder& pre, const ClassPartition& part) {
    if (part.node_count() != pre.size()) throw ContractError("partition size does not match preorder");
    const std::size_t k = part.class_count();
    Relation out(k);
    for (ClassId a = 0; a < k; ++a) {
        const Node rep = part.members[a].front();
        pre.relation().for_each_in_row(rep, [&](Node w) { out.insert(a, part.class_of[w]); });
    }
    for (ClassId a = 0; a < k; ++a)
        for (ClassId b = 0; b < k; ++b)
            if (a != b && out.contains(a, b) && out.contains(b, a))
                throw ContractError("partition was not derived from this preorder");
    return Preorder::trusted(std::move(out));
}

struct QuotientGraph {
    LabeledGraph graph;               // over class ids
    ClassPartition partition;
    Preorder order;                   // partial order over class ids
    std::vector<ClassId> marked;      // classes whose label set carries AT
    std::size_t original_edges = 0;

    std::size_t class_count() const { return partition.class_count(); }
};

// Collapses each class to one node. When validate is set, the preorder is
// checked against both co-lex axioms first.
inline QuotientGraph quotient_graph(const LabeledGraph& g, const Preorder& pre,
                                    std::span<const Node> u_marked = {}, bool validate = true) {
    if (pre.size() != g.node_count()) throw ContractError("preorder size does not match graph");
    if (validate) {
        auto chk = is_colex_relation(g, pre.relation(), u_marked);
        if (!chk) throw ContractError("preorder is not a co-lex relation on this graph");
    }
    QuotientGraph qg;
    qg.partition = classes(pre);
    qg.order = induced_order(pre, qg.partition);
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        edges.push_back({qg.partition.class_of[e.src], qg.partition.class_of[e.dst], e.label});
    qg.graph = LabeledGraph(qg.partition.class_count(), std::move(edges), g.alphabet());
    qg.original_edges = g.edge_count();
    for (Node u : u_marked) qg.marked.push_back(qg.partition.class_of[u]);
    std::sort(qg.marked.begin(), qg.marked.end());
    qg.marked.erase(std::unique(qg.marked.begin(), qg.marked.end()), qg.marked.end());

    for (ClassId c = 0; c < qg.class_count(); ++c)
        if (qg.partition.members[c].size() >= 2 && qg.graph.in_edges(c).size() > 1)
            throw ContractError("merged class has more than one incoming edge");
    return qg;
}

namespace detail {

// u ~ v must imply I_u = I_v, so every subset reached by some string is a
// union of classes. Walks at most limit reachable subsets.
inline bool subsets_are_unions_of_classes(const Nfa& a, const ClassPartition& part, std::size_t limit) {
    const LabeledGraph& g = a.graph;
    std::map<std::vector<Node>, char> seen;
    std::vector<std::vector<Node>> todo{{a.initial}};
    seen[todo[0]] = 1;
    while (!todo.empty() && seen.size() <= limit) {
        auto cur = std::move(todo.back());
        todo.pop_back();
        std::vector<char> in(g.node_count(), 0);
        for (Node v : cur) in[v] = 1;
        for (Node v : cur)
            for (Node w : part.members[part.class_of[v]])
                if (!in[w]) return false;
        for (Symbol c = 0; c < g.alphabet().size(); ++c) {
            std::vector<Node> next;
            for (Node u : cur)
                for (const Edge& e : g.out_edges(u))
                    if (e.label == c) next.push_back(e.dst);
            if (next.empty()) continue;
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (seen.emplace(next, 1).second) todo.push_back(std::move(next));
        }
    }
    return true;
}

}  // namespace detail

struct QuotientNfa {
    QuotientGraph quotient;
    ClassId initial = 0;
    std::vector<ClassId> finals;  // sorted

    Nfa as_nfa() const { return Nfa(quotient.graph, initial, finals); }
};

// Quotient automaton. The preorder must keep the initial state in a class of
// its own, which holds for any co-lex preorder computed with the initial
// state marked.
inline QuotientNfa quotient_nfa(const Nfa& a, const Preorder& pre, bool validate = true) {
    const Node s[] = {a.initial};
    QuotientNfa out;
    out.quotient = quotient_graph(a.graph, pre, s, validate);
    const auto& part = out.quotient.partition;
    out.initial = part.class_of[a.initial];
    if (part.members[out.initial].size() != 1)
        throw ContractError("initial state is not alone in its class");
    for (Node f : a.finals) out.finals.push_back(part.class_of[f]);
    std::sort(out.finals.begin(), out.finals.end());
    out.finals.erase(std::unique(out.finals.begin(), out.finals.end()), out.finals.end());
#ifndef NDEBUG
    if (!detail::subsets_are_unions_of_classes(a, part, 4096))
        throw ContractError("merged states are reached by different strings");
#endif
    return out;
}

}  // namespace colex
