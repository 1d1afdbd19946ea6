#include <gtest/gtest.h>

#include <sstream>

#include "colex/oracle.hpp"
#include "colex/pipeline.hpp"
#include "colex/random.hpp"
#include "fixtures.hpp"

using namespace colex;

namespace {

constexpr Backend kBoth[] = {Backend::plain, Backend::compact};

std::vector<Node> theta_full(const LabeledGraph& g, const oracle::Word& w) {
    std::vector<Node> all(g.node_count());
    for (Node v = 0; v < all.size(); ++v) all[v] = v;
    return oracle::brute_theta(g, all, w);
}

std::string dump(const Index& ix) {
    std::ostringstream os;
    write_index(os, ix);
    return os.str();
}

}  // namespace

TEST(Index, NoEdges) {
    LabeledGraph g(3, {}, fx::abc({"a"}));
    auto p = build_pipeline(g);
    EXPECT_EQ(p.index.edge_count(), 0u);
    EXPECT_TRUE(p.index.data().groups.empty());
    for (Backend b : kBoth) {
        EXPECT_TRUE(match_pattern(p.index, {}, b).found);
        const Symbol a[] = {0};
        EXPECT_FALSE(match_pattern(p.index, a, b).found);
    }
    const auto sr = p.index.space_report();
    EXPECT_EQ(sr.formula_bits, p.index.class_count());
}

TEST(Index, NoNodes) {
    auto p = build_pipeline(LabeledGraph(0, {}, fx::abc({"a"})));
    EXPECT_EQ(p.index.chain_count(), 0u);
    EXPECT_FALSE(match_pattern(p.index, {}).found);
}

TEST(Index, BipartiteLayout) {
    auto p = build_pipeline(fx::bipartite(4));
    const auto& d = p.index.data();
    ASSERT_EQ(d.groups.size(), 1u);
    EXPECT_EQ(d.groups[0], (EdgeGroup{0, 0, 0, {1}, {0}}));
    EXPECT_EQ(p.index.chain_count(), 1u);
    EXPECT_EQ(p.index.space_report().formula_bits, 4u);
    for (Backend b : kBoth) {
        auto s = p.index.follow(p.index.full_set(), 0, b);
        EXPECT_EQ(p.index.classes_in(s), (std::vector<ClassId>{1}));
        EXPECT_EQ(map_back(p.index, s), (std::vector<Node>{2, 3, 4, 5}));
        const Symbol aa[] = {0, 0};
        EXPECT_FALSE(match_pattern(p.index, aa, b).found);
    }
}

TEST(Index, InitialNotConvexLayout) {
    auto a = fx::initial_not_convex();
    auto p = build_pipeline(a.graph);
    const auto& d = p.index.data();
    ASSERT_EQ(d.chains.size(), 1u);
    EXPECT_EQ(d.chains[0], (std::vector<ClassId>{0, 1}));
    ASSERT_EQ(d.groups.size(), 2u);
    EXPECT_EQ(d.groups[0], (EdgeGroup{0, 0, 0, {0}, {0}}));
    EXPECT_EQ(d.groups[1], (EdgeGroup{0, 1, 0, {1}, {0}}));
    const ClassId c01[] = {0};
    for (Backend b : kBoth) {
        auto s = p.index.follow(p.index.from_classes(c01), 1, b);
        EXPECT_EQ(p.index.classes_in(s), (std::vector<ClassId>{1}));
        EXPECT_EQ(map_back(p.index, s), (std::vector<Node>{2}));
        EXPECT_EQ(map_back(p.index, p.index.from_classes(c01)), (std::vector<Node>{0, 1}));
        EXPECT_TRUE(match_pattern(p.index, fx::word(a.graph.alphabet(), "aab"), b).found);
        EXPECT_FALSE(match_pattern(p.index, fx::word(a.graph.alphabet(), "ba"), b).found);
    }
    EXPECT_EQ(theta_full(a.graph, fx::word(a.graph.alphabet(), "aab")), (std::vector<Node>{2}));
}

TEST(Index, EpsilonConventions) {
    auto p = build_pipeline(fx::two_successors());
    for (Backend b : kBoth) {
        auto e = match_from(p.index, p.index.empty_set(), {}, b);
        EXPECT_FALSE(e.found);
        EXPECT_TRUE(e.set.empty());
        const Symbol a[] = {0};
        EXPECT_FALSE(match_from(p.index, p.index.empty_set(), a, b).found);
        auto f = match_from(p.index, p.index.full_set(), {}, b);
        EXPECT_TRUE(f.found);
        EXPECT_EQ(f.set, p.index.full_set());
        EXPECT_TRUE(p.index.follow(p.index.empty_set(), 0, b).empty());
    }
}

TEST(Index, MatchFromInitial) {
    auto a = fx::initial_not_convex();
    auto p = build_nfa_pipeline(a);
    const ClassId s[] = {p.index.initial_class()};
    for (Backend b : kBoth) {
        auto r = match_from(p.index, p.index.from_classes(s), fx::word(a.graph.alphabet(), "ab"), b);
        EXPECT_TRUE(r.found);
        EXPECT_EQ(map_back(p.index, r.set), (std::vector<Node>{2}));
        EXPECT_TRUE(accept(p.index, fx::word(a.graph.alphabet(), "ab"), b));
        EXPECT_TRUE(accept(p.index, fx::word(a.graph.alphabet(), "aaa"), b));
        EXPECT_FALSE(accept(p.index, fx::word(a.graph.alphabet(), "aa"), b));
        EXPECT_FALSE(accept(p.index, {}, b));
    }
}

TEST(Index, AcceptFanOutIn) {
    auto a = fx::fan_out_in(3);
    auto p = build_nfa_pipeline(a);
    EXPECT_EQ(p.index.class_count(), 3u);
    for (Backend b : kBoth) {
        EXPECT_TRUE(accept(p.index, fx::word(a.graph.alphabet(), "aa"), b));
        EXPECT_FALSE(accept(p.index, fx::word(a.graph.alphabet(), "a"), b));
        EXPECT_FALSE(accept(p.index, fx::word(a.graph.alphabet(), "aaa"), b));
    }
}

TEST(Index, InitialFinalAcceptsEpsilon) {
    Nfa a(LabeledGraph(2, {{0, 1, 0}}, fx::abc({"a"})), 0, {0});
    auto p = build_nfa_pipeline(a);
    EXPECT_TRUE(accept(p.index, {}));
}

TEST(Index, AcceptNeedsAutomaton) {
    auto p = build_pipeline(fx::two_cycle());
    EXPECT_FALSE(p.index.has_automaton());
    EXPECT_THROW(accept(p.index, {}), ContractError);
}

TEST(Index, TrimmedStatesMapToNothing) {
    // State 2 is dead.
    Nfa a(LabeledGraph(3, {{0, 1, 0}, {0, 2, 0}}, fx::abc({"a"})), 0, {1});
    auto p = build_nfa_pipeline(a);
    EXPECT_EQ(p.index.data().class_of[2], kNoClass);
    EXPECT_EQ(p.index.original_node_count(), 3u);
    EXPECT_EQ(p.index.original_edge_count(), 2u);
    EXPECT_EQ(map_back(p.index, p.index.full_set()), (std::vector<Node>{0, 1}));
}

TEST(Index, RejectsBadInput) {
    auto p = build_pipeline(fx::two_successors());
    const Symbol bad[] = {7};
    EXPECT_THROW(match_pattern(p.index, bad), ContractError);
    ConvexSet wrong{{{0, 9}}};
    EXPECT_THROW(p.index.follow(wrong, 0), ContractError);
    auto d = p.index.data();
    ASSERT_FALSE(d.groups.empty());
    auto broken = d;
    broken.groups[0].src.push_back(0);
    EXPECT_THROW((Index(broken)), ContractError);
    broken = d;
    broken.chains[0].push_back(0);
    EXPECT_THROW((Index(broken)), ContractError);
}

TEST(Index, NonMonotoneGroupRejected) {
    // Class 1 < 2 on one chain, targets 1, 2 with sources in decreasing order.
    IndexData d;
    d.alphabet = fx::abc({"a"});
    d.chains = {{0, 1, 2}};
    d.class_of = {0, 1, 2};
    d.groups = {{0, 0, 0, {1, 2}, {2, 1}}};
    EXPECT_THROW((Index(d)), ContractError);
    d.groups = {{0, 0, 0, {1, 2}, {1, 2}}};
    EXPECT_NO_THROW((Index(d)));
}

TEST(Index, SpaceFormula) {
    auto p = build_nfa_pipeline(fx::fan_out_in(2));
    const auto sr = p.index.space_report();
    // 2 edges, |sigma| = 1, q = 1, 3 classes, automaton.
    EXPECT_EQ(sr.formula_bits, 2u * 2u + 3u + 3u);
    EXPECT_GT(sr.measured_bits, 0u);
}

TEST(Index, BackendsAgreeWithOracle) {
    gen::Rng rng(77);
    for (int t = 0; t < 150; ++t) {
        auto g = gen::random_graph(rng, 1 + t % 8, 1 + t % 3, t % 2 ? 0.3 : 0.1);
        auto p = build_pipeline(g);
        ASSERT_TRUE(p.index.monotone_groups());
        const auto q = p.index.chain_count();
        for (const auto& w : oracle::all_words(g.alphabet().size(), 4)) {
            QueryStats st;
            auto rp = match_pattern(p.index, w, Backend::plain);
            auto rc = match_pattern(p.index, w, Backend::compact, &st);
            ASSERT_EQ(rp.set, rc.set);
            auto want = theta_full(g, w);
            ASSERT_EQ(map_back(p.index, rc.set), want);
            EXPECT_EQ(rc.found, !want.empty());
            EXPECT_LE(st.max_probes_per_follow, q * q);
        }
    }
}

TEST(Index, FollowKeepsConvexity) {
    gen::Rng rng(78);
    for (int t = 0; t < 60; ++t) {
        auto g = gen::random_graph(rng, 7, 2, 0.25);
        auto p = build_pipeline(g);
        const auto& ix = p.index;
        // Every single class is convex; follow it along a few words.
        for (ClassId c = 0; c < ix.class_count(); ++c) {
            const ClassId cs[] = {c};
            for (const auto& w : oracle::all_words(2, 3)) {
                auto s = ix.from_classes(cs);
                for (Symbol a : w) {
                    s = ix.follow(s, a);
                    ASSERT_TRUE(oracle::is_convex(ix.order()->relation(), ix.classes_in(s)));
                }
            }
        }
    }
}

TEST(Serialize, RoundTrip) {
    gen::Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        auto a = gen::random_trim_nfa(rng, 7, 3, 0.2);
        auto p = build_nfa_pipeline(a);
        const auto bytes = dump(p.index);
        auto back = read_index(bytes);
        EXPECT_EQ(back.data(), p.index.data());
        EXPECT_EQ(dump(back), bytes);
        for (const auto& w : oracle::all_words(3, 3)) EXPECT_EQ(accept(back, w), accept(p.index, w));
    }
    auto p = build_pipeline(fx::bipartite(3));
    EXPECT_EQ(read_index(dump(p.index)).data(), p.index.data());
}

TEST(Serialize, HeaderAndVersion) {
    auto bytes = dump(build_pipeline(fx::bipartite(2)).index);
    EXPECT_EQ(bytes.substr(0, 4), "CLXI");
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), kClxiVersion);
    auto bad = bytes;
    bad[0] = 'X';
    EXPECT_THROW(read_index(bad), FormatError);
    bad = bytes;
    bad[4] = 9;
    EXPECT_THROW(read_index(bad), FormatError);
    EXPECT_THROW(read_index(bytes + "x"), FormatError);
}

TEST(Serialize, EveryTruncationRejected) {
    auto bytes = dump(build_nfa_pipeline(fx::word_order_not_colex()).index);
    for (std::size_t n = 0; n < bytes.size(); ++n) EXPECT_THROW(read_index(bytes.substr(0, n)), FormatError) << n;
}

TEST(Serialize, CorruptionNeverCrashes) {
    auto bytes = dump(build_nfa_pipeline(fx::initial_not_convex()).index);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 3000; ++t) {
        auto b = bytes;
        std::uniform_int_distribution<std::size_t> pos(0, b.size() - 1);
        b[pos(rng)] = static_cast<char>(rng());
        if (t % 3 == 0) b[pos(rng)] = static_cast<char>(rng());
        try {
            auto ix = read_index(b);
            (void)match_pattern(ix, {});
        } catch (const FormatError&) {
        }
    }
}
