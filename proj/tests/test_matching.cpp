#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace bnsl;

namespace {

WeightedGraph weighted(std::size_t n, const std::vector<WeightedEdge>& edges) {
    WeightedGraph g(n);
    for (const auto& e : edges) g.add_edge(e.u, e.v, e.weight);
    return g;
}

void expect_valid(const WeightedGraph& g, const Matching& m) {
    std::vector<char> used(g.n(), 0);
    Score total = 0;
    for (const Edge& e : m.edges) {
        EXPECT_FALSE(used[static_cast<std::size_t>(e.u)]);
        EXPECT_FALSE(used[static_cast<std::size_t>(e.v)]);
        used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
        bool found = false;
        for (const auto& w : g.edges())
            if (w.u == e.u && w.v == e.v) {
                total += w.weight;
                found = true;
            }
        EXPECT_TRUE(found);
    }
    EXPECT_EQ(total, m.total);
}

}  // namespace

TEST(Matching, EmptyGraph) {
    const WeightedGraph g(4);
    EXPECT_EQ(max_weight_matching(g).total, 0);
    EXPECT_TRUE(max_weight_matching(g).edges.empty());
    EXPECT_EQ(brute_force_matching(g).total, 0);
}

TEST(Matching, PathPrefersHeavyMiddle) {
    const auto g = weighted(4, {{0, 1, 1}, {1, 2, 3}, {2, 3, 1}});
    const auto m = max_weight_matching(g);
    EXPECT_EQ(m.total, 3);
    EXPECT_EQ(m.edges, (std::vector<Edge>{{1, 2}}));
    EXPECT_EQ(brute_force_matching(g).total, 3);
}

TEST(Matching, TriangleTakesOneEdge) {
    const auto g = weighted(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}});
    EXPECT_EQ(max_weight_matching(g).total, 2);
    EXPECT_EQ(brute_force_matching(g).total, 2);
}

TEST(Matching, StarTakesHeaviestEdge) {
    const auto g = weighted(4, {{0, 1, 5}, {0, 2, 4}, {0, 3, 3}});
    EXPECT_EQ(max_weight_matching(g).total, 5);
    EXPECT_EQ(brute_force_matching(g).total, 5);
}

TEST(Matching, DisjointEdges) {
    const auto g = weighted(4, {{0, 1, 1}, {2, 3, 1}});
    EXPECT_EQ(max_weight_matching(g).total, 2);
    EXPECT_EQ(brute_force_matching(g).total, 2);
}

TEST(Matching, NotForcedToMaximumCardinality) {
    // Two light outer edges lose to one heavy middle edge.
    const auto g = weighted(4, {{0, 1, 2}, {1, 2, 5}, {2, 3, 2}});
    EXPECT_EQ(max_weight_matching(g).total, 5);
}

TEST(Matching, BlossomCase) {
    // Odd cycle 0-1-2-3-4 with a pendant; needs blossom shrinking to get 0-5, 1-2, 3-4.
    const auto g = weighted(6, {{0, 1, 8}, {1, 2, 9}, {2, 3, 8}, {3, 4, 9}, {4, 0, 8}, {0, 5, 7}});
    const auto m = max_weight_matching(g);
    EXPECT_EQ(m.total, brute_force_matching(g).total);
    expect_valid(g, m);
}

TEST(Matching, ZeroWeightsAndLargeWeights) {
    const auto g = weighted(4, {{0, 1, 0}, {2, 3, Score{1} << 40}, {1, 2, (Score{1} << 40) + 1}});
    EXPECT_EQ(max_weight_matching(g).total, brute_force_matching(g).total);
}

TEST(Matching, RejectsBadInput) {
    WeightedGraph g(3);
    EXPECT_THROW(g.add_edge(0, 0, 1), ArgumentError);
    EXPECT_THROW(g.add_edge(0, 3, 1), ArgumentError);
    EXPECT_THROW(g.add_edge(0, 1, -1), ArgumentError);
    g.add_edge(0, 1, 1);
    EXPECT_THROW(g.add_edge(1, 0, 2), ArgumentError);
}

TEST(Matching, BruteForceGuard) {
    WeightedGraph g(10);
    for (int a = 0; a < 10; ++a)
        for (int b = a + 1; b < 10; ++b) g.add_edge(a, b, 1);
    EXPECT_THROW(brute_force_matching(g), ArgumentError);
}

TEST(Matching, AgreesWithBruteForceOnRandomGraphs) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 800; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        WeightedGraph g(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (rng() % 2 && g.edges().size() < 24)
                    g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b), static_cast<Score>(rng() % 20));
        const auto m = max_weight_matching(g);
        ASSERT_EQ(m.total, brute_force_matching(g).total) << "trial " << trial;
        expect_valid(g, m);
    }
}
