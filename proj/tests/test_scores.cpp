#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace bnsl;
using namespace bnsl::testing;

TEST(ParentSet, SortsAndRejectsDuplicates) {
    ParentSet p{3, 1, 2};
    EXPECT_EQ(p.members(), (std::vector<VertexId>{1, 2, 3}));
    EXPECT_TRUE(p.contains(2));
    EXPECT_FALSE(p.contains(0));
    EXPECT_THROW(ParentSet({1, 1}), ArgumentError);
    EXPECT_THROW(ParentSet({-1}), ArgumentError);
}

TEST(ScoreTable, StoresNonZeroEntriesOnly) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"a", "b"}, 10);
    set_score(inst, "c", {"a"}, 0);
    inst.scores.set_empty_score(2, 4);
    EXPECT_EQ(inst.scores.entries(2).size(), 1u);
    EXPECT_EQ(inst.scores.score(2, ParentSet{0, 1}), 10);
    EXPECT_EQ(inst.scores.score(2, ParentSet{0}), 0);
    EXPECT_EQ(inst.scores.score(2, ParentSet{}), 4);
}

TEST(ScoreTable, RejectsBadEntries) {
    Instance inst = named({"a", "b"});
    EXPECT_THROW(set_score(inst, "a", {"a"}, 1), ArgumentError);
    EXPECT_THROW(inst.scores.add(0, ParentSet{5}, 1), ArgumentError);
    EXPECT_THROW(inst.scores.add(0, ParentSet{1}, -1), ArgumentError);
    set_score(inst, "a", {"b"}, 2);
    EXPECT_THROW(set_score(inst, "a", {"b"}, 3), ArgumentError);
}

TEST(PotentialParents, EmptySetFirstThenStoredOrder) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"b"}, 3);
    set_score(inst, "c", {"a"}, 5);
    const auto pots = potential_parents(inst, 2);
    ASSERT_EQ(pots.size(), 3u);
    EXPECT_TRUE(pots[0].parents.empty());
    EXPECT_EQ(pots[1].parents, ParentSet{1});
    EXPECT_EQ(pots[2].parents, ParentSet{0});
    EXPECT_EQ(delta(inst), 3u);
}

TEST(Delta, EmptyTablesGiveOne) {
    EXPECT_EQ(delta(named({"a", "b"})), 1u);
}

TEST(Superstructure, ArcPerStoredParent) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"a", "b"}, 10);
    set_score(inst, "a", {"b"}, 1);
    const ArcSet s = superstructure(inst);
    EXPECT_EQ(s.arcs(), (std::vector<Arc>{{0, 2}, {1, 0}, {1, 2}}));
}

TEST(BestSubsetScore, ForcedAndPoolSemantics) {
    Instance inst = named({"s1", "s2", "w", "v"});
    set_score(inst, "v", {"s1"}, 3);
    set_score(inst, "v", {"s1", "s2"}, 5);
    set_score(inst, "v", {"w", "s1"}, 9);
    set_score(inst, "v", {"w"}, 2);
    inst.scores.set_empty_score(3, 1);
    const std::vector<VertexId> pool{0, 1}, forced{2}, none{};
    auto s_only = best_subset_score(inst, 3, pool, none);
    ASSERT_TRUE(s_only);
    EXPECT_EQ(s_only->score, 5);
    auto with_w = best_subset_score(inst, 3, pool, forced);
    ASSERT_TRUE(with_w);
    EXPECT_EQ(with_w->score, 9);
    EXPECT_EQ(with_w->parents, (ParentSet{0, 2}));
    auto empty_pool = best_subset_score(inst, 3, none, none);
    EXPECT_EQ(empty_pool->score, 1);
    EXPECT_TRUE(empty_pool->parents.empty());
    const std::vector<VertexId> bad{3};
    EXPECT_THROW(best_subset_score(inst, 3, bad, none), ArgumentError);
    const std::vector<VertexId> overlap{0};
    EXPECT_THROW(best_subset_score(inst, 3, overlap, overlap), ArgumentError);
}

TEST(BestSubsetScore, NoQualifyingSetWithForcedMember) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"a"}, 2);
    const std::vector<VertexId> pool{0}, forced{1};
    EXPECT_FALSE(best_subset_score(inst, 2, pool, forced).has_value());
}

TEST(BestSubsetScore, TieGoesToLexicographicallySmallest) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"b"}, 4);
    set_score(inst, "c", {"a"}, 4);
    const std::vector<VertexId> pool{0, 1}, none{};
    EXPECT_EQ(best_subset_score(inst, 2, pool, none)->parents, ParentSet{0});
}

TEST(Normalize, ShiftsAndDrops) {
    Instance inst = named({"u", "v"}, 12, 1);
    inst.scores.set_empty_score(1, 5);
    set_score(inst, "v", {"u"}, 7);
    Instance other = inst;
    const auto norm = normalize(inst);
    EXPECT_EQ(norm.offset, 5);
    EXPECT_EQ(norm.instance.t, 7);
    EXPECT_EQ(norm.instance.scores.empty_score(1), 0);
    EXPECT_EQ(norm.instance.scores.score(1, ParentSet{0}), 2);

    Instance low = named({"u", "v"}, 12, 1);
    low.scores.set_empty_score(1, 5);
    set_score(low, "v", {"u"}, 3);
    EXPECT_TRUE(normalize(low).instance.scores.entries(1).empty());
}

TEST(Normalize, TrivialYesWhenThresholdBelowEmptyNetwork) {
    Instance inst = named({"u"}, 2, 0);
    inst.scores.set_empty_score(0, 5);
    try {
        normalize(inst);
        FAIL() << "expected TrivialYesInstance";
    } catch (const TrivialYesInstance& e) {
        EXPECT_EQ(e.offset(), 5);
    }
}

TEST(PruneParentSize, DropsWideSets) {
    Instance inst = named({"a", "b", "c", "d"});
    set_score(inst, "d", {"a", "b", "c"}, 3);
    set_score(inst, "d", {"a"}, 1);
    const Instance pruned = prune_parent_size(inst, 2);
    EXPECT_EQ(pruned.scores.entries(3).size(), 1u);
    EXPECT_EQ(pruned.scores.score(3, ParentSet{0}), 1);
}

TEST(TotalScore, SumsLocalScores) {
    Instance inst = named({"a", "b", "c"});
    set_score(inst, "c", {"a", "b"}, 10);
    inst.scores.set_empty_score(0, 2);
    EXPECT_EQ(total_score(inst, arcs_named(inst, {{"a", "c"}, {"b", "c"}})), 12);
    EXPECT_EQ(total_score(inst, arcs_named(inst, {{"a", "c"}})), 2);
}

TEST(Validate, RejectsDuplicateNamesAndNegativeParameters) {
    EXPECT_THROW(named({"a", "a"}), ArgumentError);
    EXPECT_THROW(named({"a"}, -1, 0), ArgumentError);
    EXPECT_THROW(named({"a"}, 0, -1), ArgumentError);
}
