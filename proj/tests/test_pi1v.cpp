#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace bnsl;
using namespace bnsl::testing;

namespace {

AncestorTuple tuple(std::size_t n, std::vector<VertexId> S, std::vector<VertexId> Q, std::vector<Arc> aq) {
    return {std::move(S), std::move(Q), ArcSet(n, std::move(aq))};
}

}  // namespace

TEST(AncestorTuple, SingleVertexIsValid) {
    EXPECT_TRUE(is_ancestor_tuple(tuple(2, {0}, {}, {})));
}

TEST(AncestorTuple, ParentOfSIsValid) {
    EXPECT_TRUE(is_ancestor_tuple(tuple(2, {0}, {1}, {{1, 0}})));
}

TEST(AncestorTuple, DetachedQIsRejected) {
    const auto v = is_ancestor_tuple(tuple(2, {0}, {1}, {}));
    EXPECT_FALSE(v);
    EXPECT_EQ(v.violation, TupleViolation::no_descendant_in_s);
    EXPECT_EQ(v.vertex, 1);
}

TEST(AncestorTuple, TooManyOutsideNeighbours) {
    // 1 -> 2 -> 0 and 3 -> 2: vertex 2 sees 1 and 3 outside S.
    const auto v = is_ancestor_tuple(tuple(4, {0}, {1, 2, 3}, {{1, 2}, {3, 2}, {2, 0}}));
    EXPECT_EQ(v.violation, TupleViolation::outside_neighbors);
}

TEST(AncestorTuple, CycleIsRejected) {
    const auto v = is_ancestor_tuple(tuple(3, {0}, {1, 2}, {{1, 2}, {2, 1}, {1, 0}}));
    EXPECT_EQ(v.violation, TupleViolation::cyclic);
}

TEST(AncestorTuple, MalformedInputThrows) {
    EXPECT_THROW(is_ancestor_tuple(tuple(2, {0}, {0}, {})), ArgumentError);
    EXPECT_THROW(is_ancestor_tuple(tuple(3, {0}, {}, {{2, 0}})), ArgumentError);
}

TEST(Partition, SplitsQByOutsideDegree) {
    // 1 -> 0, 2 -> 3 -> 4 with S = {0, 4}: 2 and 3 are adjacent outside S, 1 is not.
    const auto t = tuple(6, {0, 4}, {1, 2, 3}, {{1, 0}, {2, 3}, {3, 4}});
    ASSERT_TRUE(is_ancestor_tuple(t));
    const auto p = partition(t);
    EXPECT_EQ(p.Q0, (std::vector<VertexId>{1}));
    EXPECT_EQ(p.Q1, (std::vector<VertexId>{2, 3}));
    EXPECT_EQ(p.R, (std::vector<VertexId>{5}));
}

TEST(Suitable, EmptyIsSuitable) {
    EXPECT_TRUE(is_suitable({}, tuple(3, {0}, {}, {})));
}

TEST(Suitable, PathInsideRIsNot) {
    const auto v = is_suitable({{1, 2}, {2, 3}}, tuple(4, {0}, {}, {}));
    EXPECT_FALSE(v);
    EXPECT_EQ(v.violation, SuitViolation::shared_endpoint);
    EXPECT_EQ(v.vertex, 2);
}

TEST(Suitable, ArcsFromSAreFree) {
    EXPECT_TRUE(is_suitable({{0, 1}, {0, 2}}, tuple(3, {0}, {}, {})));
}

TEST(Suitable, ArcIntoSOrQIsOutsideDomain) {
    const auto t = tuple(3, {0}, {1}, {{1, 0}});
    EXPECT_EQ(is_suitable({{2, 0}}, t).violation, SuitViolation::outside_domain);
    EXPECT_EQ(is_suitable({{2, 1}}, t).violation, SuitViolation::outside_domain);
}

TEST(Suitable, InvalidTupleThrows) {
    EXPECT_THROW(is_suitable({}, tuple(2, {0}, {1}, {})), PreconditionError);
}

TEST(Compose, EmptyGivesEdgeless) {
    const auto dag = compose(tuple(3, {0}, {}, {}), ArcSet(3));
    EXPECT_TRUE(dag.empty());
}

TEST(Compose, ChainThroughS) {
    // q=1 -> s=0 -> r=2
    const auto dag = compose(tuple(3, {0}, {1}, {{1, 0}}), ArcSet(3, {{0, 2}}));
    EXPECT_EQ(dag.arcs(), (std::vector<Arc>{{0, 2}, {1, 0}}));
}

TEST(Compose, RejectsUnsuitable) {
    EXPECT_THROW(compose(tuple(4, {0}, {}, {}), ArcSet(4, {{1, 2}, {2, 3}})), PreconditionError);
}

TEST(Decompose, EdgelessDag) {
    const auto d = decompose(ArcSet(3), {1});
    EXPECT_TRUE(d.tuple.Q.empty());
    EXPECT_TRUE(d.tuple.A_Q.empty());
    EXPECT_TRUE(d.A_R.empty());
}

TEST(Decompose, ChainThroughS) {
    const auto d = decompose(ArcSet(3, {{1, 0}, {0, 2}}), {0});
    EXPECT_EQ(d.tuple.Q, (std::vector<VertexId>{1}));
    EXPECT_EQ(d.tuple.A_Q.arcs(), (std::vector<Arc>{{1, 0}}));
    EXPECT_EQ(d.A_R.arcs(), (std::vector<Arc>{{0, 2}}));
}

TEST(Decompose, RejectsNonDissociationSet) {
    EXPECT_THROW(decompose(ArcSet(3, {{0, 1}, {1, 2}}), {}), PreconditionError);
}

TEST(Decompose, RoundTripOnRandomDags) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto sample = random_dag_with_set(2 + rng() % 7, 0.35, rng);
        const auto d = decompose(sample.dag, sample.S);
        ASSERT_TRUE(is_ancestor_tuple(d.tuple));
        EXPECT_LE(d.tuple.Q.size(), 2 * d.tuple.S.size());
        ASSERT_TRUE(is_suitable(d.A_R.arcs(), d.tuple));
        EXPECT_EQ(compose(d.tuple, d.A_R), sample.dag);
    }
}

TEST(Completion, EmptyRest) {
    Instance inst = named({"s", "q"});
    const auto r = solve_completion(inst, tuple(2, {0}, {1}, {{1, 0}}), 0);
    EXPECT_TRUE(r.arcs.empty());
    EXPECT_EQ(r.score, 0);
    EXPECT_TRUE(r.meets);
}

TEST(Completion, PairInsideRest) {
    Instance inst = named({"s", "u", "v"});
    set_score(inst, "u", {"v"}, 4);
    set_score(inst, "v", {"s"}, 2);
    const auto r = solve_completion(inst, tuple(3, {0}, {}, {}), 6);
    EXPECT_EQ(r.score, 6);
    EXPECT_EQ(r.arcs.arcs(), (std::vector<Arc>{{0, 2}, {2, 1}}));
    EXPECT_TRUE(r.meets);
    EXPECT_FALSE(solve_completion(inst, tuple(3, {0}, {}, {}), 7).meets);
}

TEST(Completion, IsolatedAncestorAsParent) {
    Instance inst = named({"s", "q", "r"});
    set_score(inst, "r", {"q", "s"}, 9);
    set_score(inst, "r", {"s"}, 3);
    const auto r = solve_completion(inst, tuple(3, {0}, {1}, {{1, 0}}), 0);
    EXPECT_EQ(r.score, 9);
    EXPECT_EQ(r.arcs.arcs(), (std::vector<Arc>{{0, 2}, {1, 2}}));
}

TEST(Completion, AncestorUsedOnlyOnce) {
    // Both rest vertices want q; only one may take it.
    Instance inst = named({"s", "q", "a", "b"});
    set_score(inst, "a", {"q"}, 5);
    set_score(inst, "b", {"q"}, 4);
    set_score(inst, "b", {"s"}, 1);
    const auto r = solve_completion(inst, tuple(4, {0}, {1}, {{1, 0}}), 0);
    EXPECT_EQ(r.score, 6);
}

TEST(Completion, AgreesWithExhaustiveSearch) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto cfg = random_completion_config(seed);
        ASSERT_TRUE(is_ancestor_tuple(cfg.tuple)) << seed;
        const auto r = solve_completion(cfg.instance, cfg.tuple, 0);
        ASSERT_EQ(r.score, exhaustive_completion(cfg.instance, cfg.tuple)) << "seed " << seed;
        EXPECT_TRUE(is_suitable(r.arcs.arcs(), cfg.tuple));
        Score sum = 0;
        const auto parents = r.arcs.parent_sets();
        for (VertexId v : partition(cfg.tuple).R) sum += cfg.instance.scores.score(v, parents[static_cast<std::size_t>(v)]);
        EXPECT_EQ(sum, r.score);
    }
}

TEST(SolvePi1v, CoParentsNeedOneDeletion) {
    Instance inst = named({"a", "b", "c"}, 10, 1);
    set_score(inst, "c", {"a", "b"}, 10);
    const auto r = solve_pi1v(inst);
    EXPECT_TRUE(r.yes);
    EXPECT_EQ(r.score, 10);
    EXPECT_EQ(r.arcs.arcs(), (std::vector<Arc>{{0, 2}, {1, 2}}));
    EXPECT_EQ(r.dissociation_set.size(), 1u);
    EXPECT_TRUE(is_dissociation_set(moralize(r.arcs).graph, r.dissociation_set));
    EXPECT_EQ(r.moral_graph_edges, 3u);
}

TEST(SolvePi1v, CoParentsWithoutBudget) {
    Instance inst = named({"a", "b", "c"}, 1, 0);
    set_score(inst, "c", {"a", "b"}, 10);
    const auto r = solve_pi1v(inst);
    EXPECT_FALSE(r.yes);
    EXPECT_EQ(r.score, 0);
    EXPECT_TRUE(r.arcs.empty());
}

TEST(SolvePi1v, AllZeroScores) {
    const auto r = solve_pi1v(named({"a", "b"}, 0, 0));
    EXPECT_TRUE(r.yes);
    EXPECT_TRUE(r.arcs.empty());
}

TEST(SolvePi1v, ZeroBudgetIsMatchingOfArcs) {
    // A path a-b-c-d of mutual preferences: at k = 0 the moral graph must be a matching.
    Instance inst = named({"a", "b", "c", "d"}, 0, 0);
    set_score(inst, "b", {"a"}, 3);
    set_score(inst, "c", {"b"}, 5);
    set_score(inst, "d", {"c"}, 3);
    const auto r = solve_pi1v(inst);
    EXPECT_EQ(r.score, 6);
    EXPECT_EQ(r.arcs.arcs(), (std::vector<Arc>{{0, 1}, {2, 3}}));
}

TEST(SolvePi1v, AgreesWithOracle) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::int64_t k = static_cast<std::int64_t>(seed % 3);
        const Instance inst = random_small_instance(1000 + seed, false, k, seed % 2 == 0);
        const auto fast = solve_pi1v(inst);
        const auto slow = oracle_solve(inst, MoralClassConstraint{{GraphClass::pi1, Deletion::vertex, k}});
        ASSERT_EQ(fast.score, slow.score) << "seed " << seed;
    }
}

TEST(SolvePi1v, ThreadCountDoesNotChangeResult) {
    const Instance inst = random_small_instance(77, false, 2, true);
    const auto one = solve_pi1v(inst, 1);
    const auto many = solve_pi1v(inst, 4);
    EXPECT_EQ(one.score, many.score);
    EXPECT_EQ(one.arcs, many.arcs);
    EXPECT_EQ(one.dissociation_set, many.dissociation_set);
    EXPECT_EQ(one.telemetry.candidates, many.telemetry.candidates);
}

TEST(SubsetsUpTo, SizeThenLexicographic) {
    const auto s = detail::subsets_up_to(3, 2);
    const std::vector<std::vector<VertexId>> expected{{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
    EXPECT_EQ(s, expected);
}
