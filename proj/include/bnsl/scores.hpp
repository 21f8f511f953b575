#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnsl/core.hpp"

namespace bnsl {

struct ScoredParentSet {
    ParentSet parents;
    Score score = 0;

    friend bool operator==(const ScoredParentSet&, const ScoredParentSet&) = default;
};

/// Local scores in non-zero representation: per vertex, the stored (parent set, score)
/// entries with score > 0 in insertion order, plus the score of the empty parent set.
class ParentScoreTable {
public:
    ParentScoreTable() = default;
    explicit ParentScoreTable(std::size_t n) : rows_(n) {}

    std::size_t vertex_count() const noexcept { return rows_.size(); }

    /// Stores f_v(P) = score. The empty set updates the explicit empty-set score;
    /// zero scores on nonempty sets are not stored. Duplicates are rejected.
    void add(VertexId v, ParentSet parents, Score score) {
        Row& row = row_at(v);
        if (score < 0) throw ArgumentError("negative local score");
        if (parents.empty()) {
            row.empty_score = score;
            return;
        }
        for (VertexId p : parents) {
            if (p == v) throw ArgumentError("parent set contains its own child");
            if (static_cast<std::size_t>(p) >= rows_.size()) throw ArgumentError("parent id out of range");
        }
        if (row.index.contains(parents)) throw ArgumentError("duplicate parent set");
        if (score == 0) return;
        row.index.emplace(parents, row.entries.size());
        row.entries.push_back({std::move(parents), score});
    }

    void set_empty_score(VertexId v, Score score) { add(v, ParentSet{}, score); }

    Score empty_score(VertexId v) const { return row_at(v).empty_score; }

    std::span<const ScoredParentSet> entries(VertexId v) const { return row_at(v).entries; }

    /// f_v(P); zero for sets that are not stored.
    Score score(VertexId v, const ParentSet& parents) const {
        const Row& row = row_at(v);
        if (parents.empty()) return row.empty_score;
        auto it = row.index.find(parents);
        return it == row.index.end() ? 0 : row.entries[it->second].score;
    }

    /// Removes every stored entry of v for which `drop` returns true.
    template <typename Pred>
    void erase_if(VertexId v, Pred drop) {
        Row& row = row_at(v);
        std::vector<ScoredParentSet> kept;
        for (auto& e : row.entries)
            if (!drop(e)) kept.push_back(std::move(e));
        row.entries = std::move(kept);
        row.index.clear();
        for (std::size_t i = 0; i < row.entries.size(); ++i) row.index.emplace(row.entries[i].parents, i);
    }

    friend bool operator==(const ParentScoreTable& a, const ParentScoreTable& b) {
        if (a.rows_.size() != b.rows_.size()) return false;
        for (std::size_t i = 0; i < a.rows_.size(); ++i)
            if (a.rows_[i].empty_score != b.rows_[i].empty_score || a.rows_[i].entries != b.rows_[i].entries)
                return false;
        return true;
    }

private:
    struct Row {
        Score empty_score = 0;
        std::vector<ScoredParentSet> entries;
        std::map<ParentSet, std::size_t> index;
    };

    Row& row_at(VertexId v) {
        if (v < 0 || static_cast<std::size_t>(v) >= rows_.size()) throw ArgumentError("vertex id out of range");
        return rows_[static_cast<std::size_t>(v)];
    }
    const Row& row_at(VertexId v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= rows_.size()) throw ArgumentError("vertex id out of range");
        return rows_[static_cast<std::size_t>(v)];
    }

    std::vector<Row> rows_;
};

/// (N, F, t, k).
struct Instance {
    std::vector<std::string> names;
    ParentScoreTable scores;
    Score t = 0;
    std::int64_t k = 0;

    std::size_t n() const noexcept { return names.size(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

inline void validate(const Instance& inst) {
    if (inst.scores.vertex_count() != inst.n()) throw ArgumentError("score table size does not match vertex count");
    if (inst.t < 0) throw ArgumentError("threshold t must be nonnegative");
    if (inst.k < 0) throw ArgumentError("budget k must be nonnegative");
    std::vector<std::string> sorted = inst.names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ArgumentError("vertex names must be unique");
}

/// Instance with names "0".."n-1"-style labels supplied by the caller and empty tables.
inline Instance make_instance(std::vector<std::string> names, Score t = 0, std::int64_t k = 0) {
    Instance inst;
    inst.scores = ParentScoreTable(names.size());
    inst.names = std::move(names);
    inst.t = t;
    inst.k = k;
    validate(inst);
    return inst;
}

inline VertexId vertex_by_name(const Instance& inst, const std::string& name) {
    auto it = std::find(inst.names.begin(), inst.names.end(), name);
    if (it == inst.names.end()) throw ArgumentError("unknown vertex name '" + name + "'");
    return static_cast<VertexId>(it - inst.names.begin());
}

// ---------------------------------------------------------------------------

/// P_F(v): the empty set (first, with its score) followed by the stored entries.
inline std::vector<ScoredParentSet> potential_parents(const Instance& inst, VertexId v) {
    auto stored = inst.scores.entries(v);
    std::vector<ScoredParentSet> out;
    out.reserve(stored.size() + 1);
    out.push_back({ParentSet{}, inst.scores.empty_score(v)});
    out.insert(out.end(), stored.begin(), stored.end());
    return out;
}

/// δ_F = max_v |P_F(v)|.
inline std::size_t delta(const Instance& inst) {
    std::size_t best = 1;
    for (std::size_t v = 0; v < inst.n(); ++v)
        best = std::max(best, inst.scores.entries(static_cast<VertexId>(v)).size() + 1);
    return best;
}

/// Arc (u,v) iff u belongs to some stored parent set of v.
inline ArcSet superstructure(const Instance& inst) {
    std::vector<Arc> arcs;
    for (std::size_t v = 0; v < inst.n(); ++v)
        for (const auto& e : inst.scores.entries(static_cast<VertexId>(v)))
            for (VertexId u : e.parents) arcs.push_back({u, static_cast<VertexId>(v)});
    return ArcSet(inst.n(), std::move(arcs));
}

inline Score empty_score_sum(const Instance& inst) {
    Score sum = 0;
    for (std::size_t v = 0; v < inst.n(); ++v) sum += inst.scores.empty_score(static_cast<VertexId>(v));
    return sum;
}

/// Raised by normalize when t < Σ f_v(∅): the empty arc set already reaches t.
class TrivialYesInstance : public Error {
public:
    explicit TrivialYesInstance(Score offset)
        : Error("trivial yes-instance: t is below the empty-network score " + std::to_string(offset)),
          offset_(offset) {}
    Score offset() const noexcept { return offset_; }

private:
    Score offset_;
};

struct Normalized {
    Instance instance;
    Score offset = 0;
};

/// Shifts every vertex so f'_v(∅) = 0: f'_v(P) = f_v(P) - f_v(∅), clamped at 0 and
/// dropped when not positive; t' = t - Σ f_v(∅).
inline Normalized normalize(const Instance& inst) {
    const Score offset = empty_score_sum(inst);
    if (inst.t < offset) throw TrivialYesInstance(offset);
    Normalized out{inst, offset};
    out.instance.t = inst.t - offset;
    ParentScoreTable shifted(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) {
        const auto v = static_cast<VertexId>(i);
        const Score base = inst.scores.empty_score(v);
        for (const auto& e : inst.scores.entries(v))
            if (e.score > base) shifted.add(v, e.parents, e.score - base);
    }
    out.instance.scores = std::move(shifted);
    return out;
}

/// Drops every stored entry with |P| > limit.
inline Instance prune_parent_size(const Instance& inst, std::size_t limit) {
    Instance out = inst;
    for (std::size_t v = 0; v < inst.n(); ++v)
        out.scores.erase_if(static_cast<VertexId>(v),
                            [limit](const ScoredParentSet& e) { return e.parents.size() > limit; });
    return out;
}

/// max f_v(P) over potential parent sets with forced ⊆ P ⊆ pool ∪ forced; ties go to the
/// lexicographically smallest member list. Empty optional when forced ≠ ∅ and no stored
/// set qualifies. `pool` and `forced` must be sorted.
inline std::optional<ScoredParentSet> best_subset_score(const Instance& inst, VertexId v,
                                                        std::span<const VertexId> pool,
                                                        std::span<const VertexId> forced) {
    if (v < 0 || static_cast<std::size_t>(v) >= inst.n()) throw ArgumentError("vertex id out of range");
    if (!std::is_sorted(pool.begin(), pool.end()) || !std::is_sorted(forced.begin(), forced.end()))
        throw ArgumentError("pool and forced sets must be sorted");
    if (std::binary_search(pool.begin(), pool.end(), v) || std::binary_search(forced.begin(), forced.end(), v))
        throw ArgumentError("child vertex inside pool or forced set");
    std::vector<VertexId> allowed;
    std::set_union(pool.begin(), pool.end(), forced.begin(), forced.end(), std::back_inserter(allowed));
    if (allowed.size() != pool.size() + forced.size()) throw ArgumentError("pool and forced sets overlap");

    std::optional<ScoredParentSet> best;
    if (forced.empty()) best = ScoredParentSet{ParentSet{}, inst.scores.empty_score(v)};
    for (const auto& e : inst.scores.entries(v)) {
        const auto& m = e.parents.members();
        if (!sorted_includes(m, forced) || !sorted_includes(allowed, m)) continue;
        if (!best || e.score > best->score || (e.score == best->score && e.parents < best->parents)) best = e;
    }
    return best;
}

/// Σ_v f_v(P^A_v).
inline Score total_score(const Instance& inst, const ArcSet& arcs) {
    if (arcs.n() != inst.n()) throw ArgumentError("arc set vertex count does not match instance");
    Score sum = 0;
    const auto parents = arcs.parent_sets();
    for (std::size_t v = 0; v < inst.n(); ++v) sum += inst.scores.score(static_cast<VertexId>(v), parents[v]);
    return sum;
}

/// Largest f_v over all potential parent sets of v.
inline Score max_local_score(const Instance& inst, VertexId v) {
    Score best = inst.scores.empty_score(v);
    for (const auto& e : inst.scores.entries(v)) best = std::max(best, e.score);
    return best;
}

}  // namespace bnsl
