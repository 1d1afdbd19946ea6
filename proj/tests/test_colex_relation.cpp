#include <gtest/gtest.h>

#include "colex/oracle.hpp"
#include "colex/random.hpp"
#include "fixtures.hpp"

using namespace colex;

namespace {

// Pairs whose label sets are strictly ordered, plus the diagonal.
Relation strictly_below(const LabeledGraph& g, std::span<const Node> marked = {}) {
    auto l = lambda_sets(g, marked);
    Relation r = Relation::identity(g.node_count());
    for (Node u = 0; u < g.node_count(); ++u)
        for (Node v = 0; v < g.node_count(); ++v)
            if (l[u].max() < l[v].min()) r.insert(u, v);
    return r;
}

}  // namespace

TEST(MaxRelation, Bipartite) {
    for (std::size_t n = 2; n <= 6; ++n) EXPECT_EQ(max_colex_relation(fx::bipartite(n)).relation(), fx::bipartite_relation(n)) << n;
}

TEST(MaxRelation, TwoCycleIsTotal) {
    auto r = max_colex_relation(fx::two_cycle());
    EXPECT_EQ(r.relation().pair_count(), 4u);
}

TEST(MaxRelation, MarkedInitialSplitsClass) {
    auto a = fx::initial_not_convex();
    const Node s[] = {0};
    EXPECT_EQ(max_colex_relation(a.graph, s).relation(), fx::relation_of(3, {{0, 2}, {1, 2}}));
    auto plain = max_colex_relation(a.graph);
    EXPECT_TRUE(plain.contains(0, 1) && plain.contains(1, 0));
}

TEST(MaxRelation, EmptyAndIsolated) {
    EXPECT_EQ(max_colex_relation(LabeledGraph(0, {}, Alphabet{})).size(), 0u);
    auto r = max_colex_relation(LabeledGraph(3, {}, Alphabet{}));
    EXPECT_EQ(r.relation().pair_count(), 9u);  // all carry only the hash marker
}

TEST(MaxRelation, RandomProperties) {
    gen::Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        auto g = gen::random_graph(rng, 1 + t % 8, 1 + t % 3, t % 2 ? 0.3 : 0.1);
        std::vector<Node> marked;
        if (t % 3 == 0) marked.push_back(0);
        auto m = max_colex_relation(g, marked);
        ASSERT_TRUE(m.relation().is_transitive());
        ASSERT_TRUE(is_colex_relation(g, m.relation(), marked).ok());
        ASSERT_EQ(m, oracle::gfp_max_relation(g, marked));
        auto l = lambda_sets(g, marked);
        const std::size_t n = g.node_count();
        for (Node u = 0; u < n; ++u)
            for (Node v = 0; v < n; ++v) {
                if (u != v && m.contains(u, v) && m.contains(v, u)) {
                    EXPECT_EQ(l[u], l[v]);
                    EXPECT_EQ(l[u].size(), 1u);
                }
                if (u == v) continue;
                auto c = min_colex_containing(g, u, v, marked);
                EXPECT_EQ(c.has_value(), m.contains(u, v));
                if (c) {
                    EXPECT_TRUE(is_colex_relation(g, *c, marked).ok());
                    EXPECT_TRUE(refines(m.relation(), *c));
                    auto tc = transitive_closure(*c);
                    EXPECT_TRUE(is_colex_relation(g, tc, marked).ok());
                }
            }
        auto below = strictly_below(g, marked);
        EXPECT_TRUE(is_colex_relation(g, below, marked).ok());
        EXPECT_TRUE(refines(m.relation(), below));
    }
}

TEST(MaxRelation, UnionOfColexRelationsIsColex) {
    gen::Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        auto g = gen::random_graph(rng, 6, 2, 0.2);
        std::vector<Relation> rs;
        for (Node u = 0; u < 6 && rs.size() < 4; ++u)
            for (Node v = 0; v < 6 && rs.size() < 4; ++v)
                if (u != v)
                    if (auto c = min_colex_containing(g, u, v)) rs.push_back(*c);
        if (rs.empty()) continue;
        EXPECT_TRUE(is_colex_relation(g, relation_union(rs)).ok());
    }
}

TEST(MinRelation, TwoSuccessors) {
    auto g = fx::two_successors();
    auto c = min_colex_containing(g, 1, 2);
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, fx::relation_of(3, {{1, 2}}));
    // Minimum among every co-lex relation containing (1, 2).
    const auto cand = Relation::identity(3);
    for (std::uint32_t m = 0; m < 64; ++m) {
        Relation r = cand;
        int bit = 0;
        for (Node u = 0; u < 3; ++u)
            for (Node v = 0; v < 3; ++v)
                if (u != v && (m >> bit++ & 1u)) r.insert(u, v);
        if (r.contains(1, 2) && is_colex_relation(g, r).ok()) {
            EXPECT_TRUE(refines(r, *c));
        }
    }
}

TEST(MinRelation, NoRelation) {
    LabeledGraph g(3, {{0, 1, 1}, {0, 2, 0}}, fx::abc({"a", "b"}));
    EXPECT_FALSE(min_colex_containing(g, 1, 2));  // b above a
    EXPECT_THROW(min_colex_containing(g, 1, 1), ContractError);
    EXPECT_THROW(min_colex_containing(g, 1, 7), ContractError);
}

TEST(MinRelation, BipartiteTargets) {
    auto c = min_colex_containing(fx::bipartite(2), 2, 3);
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, fx::relation_of(4, {{2, 3}, {0, 1}, {1, 0}}));
    EXPECT_TRUE(is_colex_relation(fx::bipartite(2), *c).ok());
}

TEST(Axioms, Checker) {
    auto g = fx::two_successors();
    EXPECT_TRUE(is_colex_relation(g, Relation::identity(3)).ok());
    EXPECT_TRUE(is_colex_relation(g, fx::relation_of(3, {{1, 2}, {2, 1}})).ok());
    auto bad = is_colex_relation(g, fx::relation_of(3, {{1, 0}}));
    ASSERT_FALSE(bad.ok());
    EXPECT_EQ(bad.violation->axiom, 1);
    // 2 -a-> 0 and 1 -a-> 1 with (0,1) related needs (2,1).
    LabeledGraph h(3, {{2, 0, 0}, {1, 1, 0}}, fx::abc({"a"}));
    auto v = is_colex_relation(h, fx::relation_of(3, {{0, 1}}));
    ASSERT_FALSE(v.ok());
    EXPECT_EQ(v.violation->axiom, 2);
    EXPECT_EQ(v.violation->pred_u, 2u);
    EXPECT_EQ(v.violation->pred_v, 1u);
    EXPECT_THROW(is_colex_relation(g, Relation(3)), ContractError);
}

TEST(Axioms, UnionOfOrdersStillColex) {
    auto g = fx::two_successors();
    auto a = fx::relation_of(3, {{0, 1}, {0, 2}, {1, 2}});
    auto b = fx::relation_of(3, {{0, 1}, {0, 2}, {2, 1}});
    const Relation both[] = {a, b};
    auto u = relation_union(both);
    EXPECT_TRUE(is_colex_relation(g, a).ok());
    EXPECT_TRUE(is_colex_relation(g, b).ok());
    EXPECT_TRUE(is_colex_relation(g, u).ok());
    EXPECT_FALSE(u.is_antisymmetric());
}

TEST(Refines, Examples) {
    auto g = fx::two_cycle();
    auto m = max_colex_relation(g).relation();
    EXPECT_FALSE(refines(Relation::identity(2), m));
    EXPECT_TRUE(refines(m, Relation::identity(2)));
}

TEST(PairGraph, ArcsBoundedBySquaredEdges) {
    gen::Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        auto g = gen::random_graph(rng, 7, 2, 0.25);
        PairGraph pg(g);
        EXPECT_EQ(pg.node_count(), 42u);
        EXPECT_LE(pg.arc_count(), g.edge_count() * g.edge_count());
        // Forward and backward enumeration agree.
        std::size_t back = 0;
        for (Node u = 0; u < 7; ++u)
            for (Node v = 0; v < 7; ++v)
                if (u != v) pg.for_each_predecessor(u, v, [&](Node, Node) { ++back; });
        EXPECT_EQ(back, pg.arc_count());
    }
}
