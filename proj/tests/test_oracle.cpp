#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace bnsl;
using namespace bnsl::testing;

TEST(Oracle, EmptyTables) {
    Instance inst = named({"a", "b", "c"});
    inst.scores.set_empty_score(1, 3);
    for (const Constraint& c : {Constraint{NoConstraint{}}, Constraint{ArcCountConstraint{0}},
                                Constraint{MoralClassConstraint{{GraphClass::pi1, Deletion::vertex, 0}}}}) {
        const auto r = oracle_solve(inst, c);
        EXPECT_TRUE(r.yes);
        EXPECT_TRUE(r.arcs.empty());
        EXPECT_EQ(r.score, 3);
    }
}

TEST(Oracle, CoParentsUnderDissociationBudget) {
    Instance inst = named({"a", "b", "c"}, 10, 1);
    set_score(inst, "c", {"a", "b"}, 10);
    const auto r = oracle_solve(inst, MoralClassConstraint{{GraphClass::pi1, Deletion::vertex, 1}});
    EXPECT_EQ(r.score, 10);
    EXPECT_EQ(r.dissociation_set.size(), 1u);
    EXPECT_EQ(oracle_solve(inst, MoralClassConstraint{{GraphClass::pi1, Deletion::vertex, 0}}).score, 0);
}

TEST(Oracle, TwoCycleIsForbidden) {
    Instance inst = named({"u", "v"});
    set_score(inst, "u", {"v"}, 1);
    set_score(inst, "v", {"u"}, 1);
    const auto r = oracle_solve(inst, NoConstraint{});
    EXPECT_EQ(r.score, 1);
    EXPECT_EQ(r.arcs.arcs(), (std::vector<Arc>{{0, 1}}));
}

TEST(Oracle, ArcCount) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"a", "b"}, 10);
    set_score(inst, "c", {"a"}, 6);
    set_score(inst, "b", {"a"}, 3);
    EXPECT_EQ(oracle_solve(inst, ArcCountConstraint{0}).score, 0);
    EXPECT_EQ(oracle_solve(inst, ArcCountConstraint{1}).score, 6);
    EXPECT_EQ(oracle_solve(inst, ArcCountConstraint{2}).score, 10);
    EXPECT_EQ(oracle_solve(inst, ArcCountConstraint{3}).score, 13);
}

TEST(Oracle, ForestEdgeDeletion) {
    // c <- {a, b} makes a triangle in the moral graph: one feedback edge.
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"a", "b"}, 5);
    set_score(inst, "c", {"a"}, 1);
    EXPECT_EQ(oracle_solve(inst, MoralClassConstraint{{GraphClass::forest, Deletion::edge, 0}}).score, 1);
    EXPECT_EQ(oracle_solve(inst, MoralClassConstraint{{GraphClass::forest, Deletion::edge, 1}}).score, 5);
}

TEST(Oracle, ClassesWithoutFastChecker) {
    // Path a -> b -> c -> d has max degree 2; one vertex deletion brings a star down to Π2.
    Instance inst = named({"a", "b", "c", "d"});
    set_score(inst, "b", {"a"}, 1);
    set_score(inst, "c", {"b"}, 1);
    set_score(inst, "d", {"c"}, 1);
    EXPECT_EQ(oracle_solve(inst, MoralClassConstraint{{GraphClass::pi2, Deletion::vertex, 0}}).score, 3);
    EXPECT_EQ(oracle_solve(inst, MoralClassConstraint{{GraphClass::pi1, Deletion::vertex, 0}}).score, 2);

    Instance star = named({"h", "a", "b", "c"});
    set_score(star, "a", {"h"}, 1);
    set_score(star, "b", {"h"}, 1);
    set_score(star, "c", {"h"}, 1);
    EXPECT_EQ(oracle_solve(star, MoralClassConstraint{{GraphClass::pi2, Deletion::vertex, 0}}).score, 2);
    const auto r = oracle_solve(star, MoralClassConstraint{{GraphClass::pi2, Deletion::vertex, 1}});
    EXPECT_EQ(r.score, 3);
    EXPECT_EQ(r.dissociation_set.size(), 1u);
    EXPECT_EQ(oracle_solve(star, MoralClassConstraint{{GraphClass::pi2, Deletion::edge, 1}}).score, 3);
    EXPECT_EQ(oracle_solve(star, MoralClassConstraint{{GraphClass::pi3coc, Deletion::edge, 1}}).score, 3);
    EXPECT_EQ(oracle_solve(star, MoralClassConstraint{{GraphClass::pi3coc, Deletion::vertex, 0}}).score, 2);
}

TEST(Oracle, MaskCheckerAgreesWithGraphChecker) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const auto g = random_graph(n, 0.4, rng);
        std::vector<detail::Mask> adj(n, 0);
        for (const Edge& e : g.edges()) {
            adj[static_cast<std::size_t>(e.u)] |= detail::bit(e.v);
            adj[static_cast<std::size_t>(e.v)] |= detail::bit(e.u);
        }
        const std::int64_t budget = static_cast<std::int64_t>(rng() % 4);
        for (const ClassSpec spec : {ClassSpec{GraphClass::pi1, Deletion::vertex, budget},
                                     ClassSpec{GraphClass::pi0, Deletion::edge, budget},
                                     ClassSpec{GraphClass::forest, Deletion::edge, budget},
                                     ClassSpec{GraphClass::pi2, Deletion::vertex, 0},
                                     ClassSpec{GraphClass::pi3coc, Deletion::vertex, 0}}) {
            const bool fast = check_class(g, spec).member;
            const bool slow = detail::MaskClassChecker(adj, spec).check().has_value();
            ASSERT_EQ(fast, slow) << "trial " << trial;
        }
    }
}

TEST(Oracle, PotentialSetsLoseNothing) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Instance inst = random_small_instance(600 + seed, false, 1, seed % 2 == 0);
        if (inst.n() > 4) continue;
        for (const Constraint& c : {Constraint{NoConstraint{}}, Constraint{ArcCountConstraint{2}},
                                    Constraint{MoralClassConstraint{{GraphClass::pi1, Deletion::vertex, 1}}}}) {
            EXPECT_EQ(oracle_solve(inst, c, CandidateSpace::potential).score,
                      oracle_solve(inst, c, CandidateSpace::exhaustive).score)
                << seed;
        }
    }
}

TEST(Oracle, ThreadCountDoesNotChangeResult) {
    const Instance inst = random_small_instance(8, false, 2, true);
    const Constraint c = MoralClassConstraint{{GraphClass::pi1, Deletion::vertex, 2}};
    const auto one = oracle_solve(inst, c, CandidateSpace::potential, 1);
    const auto many = oracle_solve(inst, c, CandidateSpace::potential, 4);
    EXPECT_EQ(one.score, many.score);
    EXPECT_EQ(one.arcs, many.arcs);
}

TEST(Oracle, LexicographicallySmallestAmongTies) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"b"}, 4);
    set_score(inst, "c", {"a"}, 4);
    EXPECT_EQ(oracle_solve(inst, NoConstraint{}).arcs.arcs(), (std::vector<Arc>{{0, 2}}));
}

TEST(Oracle, SizeGuard) {
    RandomInstanceParams p;
    p.n = 12;
    p.max_parents = 3;
    p.entries_per_vertex = 9;
    EXPECT_THROW(oracle_solve(random_instance(p), NoConstraint{}), SizeError);
}
