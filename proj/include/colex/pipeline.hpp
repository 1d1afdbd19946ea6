#pragma once

#include "colex/chain_partition.hpp"
#include "colex/colex_relation.hpp"
#include "colex/index.hpp"
#include "colex/quotient.hpp"

namespace colex {

// Every intermediate of graph -> relation -> quotient -> chains -> index.
struct Pipeline {
    Preorder relation;
    QuotientGraph quotient;
    ChainPartition chains;
    Index index;
};

// With start set, the index also carries automaton data: start's class as
// the initial class and the classes of finals.
inline Pipeline build_pipeline(const LabeledGraph& g, std::span<const Node> u_marked = {},
                               std::optional<Node> start = std::nullopt, std::span<const Node> finals = {}) {
    Pipeline p;
    p.relation = max_colex_relation(g, u_marked);
    // The relation is maximum by construction; the axiom check is skipped.
    p.quotient = quotient_graph(g, p.relation, u_marked, false);
    p.chains = min_chain_partition(p.quotient.order);
    std::optional<AutomatonInfo> info;
    if (start) {
        if (*start >= g.node_count()) throw ContractError("initial node out of range");
        info.emplace();
        info->initial = p.quotient.partition.class_of[*start];
        for (Node f : finals) {
            if (f >= g.node_count()) throw ContractError("final node out of range");
            info->finals.push_back(p.quotient.partition.class_of[f]);
        }
    }
    p.index = build_index(p.quotient, p.chains, info);
    return p;
}

// Automaton index: trims, marks the initial state, and maps classes back to
// the untrimmed state ids. Throws EmptyLanguageError for an empty language.
inline Pipeline build_nfa_pipeline(const Nfa& a) {
    const auto t = trim_nfa(a);
    const Node s[] = {t.nfa.initial};
    Pipeline p = build_pipeline(t.nfa.graph, s, t.nfa.initial, t.nfa.finals);
    if (p.quotient.partition.members[p.index.initial_class()].size() != 1)
        throw ContractError("initial state is not alone in its class");
    IndexData d = p.index.data();
    d.original_edges = a.graph.edge_count();
    d.class_of.assign(a.state_count(), kNoClass);
    for (Node v = 0; v < t.kept.size(); ++v) d.class_of[t.kept[v]] = p.quotient.partition.class_of[v];
    p.index = Index(std::move(d), p.quotient.order);
    return p;
}

}  // namespace colex
