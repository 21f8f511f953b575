#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "bnsl/core.hpp"
#include "bnsl/graphs.hpp"
#include "bnsl/parallel.hpp"
#include "bnsl/scores.hpp"

namespace bnsl {

struct Coloring {
    std::vector<int> colors;  // 0-based, one per vertex
    int count = 1;
};

/// No arc inside a color class, and at most one vertex per class with parents.
inline bool color_loyal(const ArcSet& arcs, const Coloring& chi) {
    if (chi.colors.size() != arcs.n()) throw ArgumentError("coloring does not cover every vertex");
    std::vector<int> owner(static_cast<std::size_t>(std::max(chi.count, 1)), -1);
    for (const Arc& a : arcs) {
        const int c = chi.colors[static_cast<std::size_t>(a.to)];
        if (chi.colors[static_cast<std::size_t>(a.from)] == c) return false;
        int& who = owner[static_cast<std::size_t>(c)];
        if (who >= 0 && who != a.to) return false;
        who = a.to;
    }
    return true;
}

namespace detail {

inline std::int64_t effective_budget(const Instance& inst) {
    std::int64_t cap = 0;
    for (std::size_t v = 0; v < inst.n(); ++v) {
        std::size_t widest = 0;
        for (const auto& e : inst.scores.entries(static_cast<VertexId>(v))) widest = std::max(widest, e.parents.size());
        cap += static_cast<std::int64_t>(widest);
    }
    return std::min(inst.k, cap);
}

inline void check_arc_bounded(const Instance& inst, const SolveResult& r, const char* who) {
    if (!is_dag(r.arcs) || static_cast<std::int64_t>(r.arcs.size()) > inst.k ||
        total_score(inst, r.arcs) != r.score)
        throw std::logic_error(std::string(who) + " produced an invalid network");
}

}  // namespace detail

/// Exact arc-bounded BNSL when the superstructure is acyclic: a knapsack-style DP over the
/// vertices in reverse topological order. Cyclic superstructures raise UnsupportedError.
inline SolveResult solve_ba_topological(const Instance& inst) {
    validate(inst);
    const auto order = topological_order(superstructure(inst));
    if (!order.acyclic()) throw UnsupportedError("superstructure is cyclic; topological DP does not apply");
    const std::size_t n = inst.n();
    const auto budget = static_cast<std::size_t>(detail::effective_budget(inst));

    // Label i (1-based) is the vertex at position n-i of the topological order, so every
    // superstructure arc (a,b) has label(a) > label(b).
    std::vector<VertexId> by_label(n);
    for (std::size_t i = 0; i < n; ++i) by_label[i] = order.order[n - 1 - i];
    std::vector<std::vector<ScoredParentSet>> pots(n);
    for (std::size_t i = 0; i < n; ++i) pots[i] = potential_parents(inst, by_label[i]);

    std::vector<std::vector<Score>> T(n + 1, std::vector<Score>(budget + 1, 0));
    std::vector<std::vector<int>> pick(n + 1, std::vector<int>(budget + 1, -1));
    SolveResult out;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j <= budget; ++j) {
            ++out.telemetry.candidates;
            const auto& cands = pots[i - 1];
            for (std::size_t p = 0; p < cands.size(); ++p) {
                const std::size_t size = cands[p].parents.size();
                if (size > j) continue;
                const Score value = cands[p].score + T[i - 1][j - size];
                if (pick[i][j] < 0 || value > T[i][j]) {
                    T[i][j] = value;
                    pick[i][j] = static_cast<int>(p);
                }
            }
        }

    out.arcs = ArcSet(n);
    out.score = T[n][budget];
    std::size_t j = budget;
    for (std::size_t i = n; i >= 1; --i) {
        const auto& chosen = pots[i - 1][static_cast<std::size_t>(pick[i][j])];
        for (VertexId p : chosen.parents) out.arcs.insert({p, by_label[i - 1]});
        j -= chosen.parents.size();
    }
    out.yes = out.score >= inst.t;
    out.moral_graph_edges = moralize(out.arcs).graph.edge_count();
    detail::check_arc_bounded(inst, out, "topological DP");
    return out;
}

/// Best color-loyal arc set with |A| <= k for a fixed coloring, by DP over color subsets.
/// Requires f_v(∅) = 0 for every v (see normalize) and at most max(1, 2k) colors.
inline SolveResult solve_colored_ba(const Instance& inst, const Coloring& chi) {
    validate(inst);
    constexpr int kMaxColors = 24;
    const std::size_t n = inst.n();
    for (std::size_t v = 0; v < n; ++v)
        if (inst.scores.empty_score(static_cast<VertexId>(v)) != 0)
            throw PreconditionError("colored DP expects a normalized instance (every f_v(empty) = 0)");
    if (chi.colors.size() != n) throw ArgumentError("coloring does not cover every vertex");
    if (chi.count < 1 || chi.count > std::max<std::int64_t>(1, 2 * inst.k))
        throw PreconditionError("color count must lie in 1..max(1, 2k)");
    if (chi.count > kMaxColors) throw SizeError("colored DP is limited to 24 colors");
    for (int c : chi.colors)
        if (c < 0 || c >= chi.count) throw ArgumentError("color out of range");

    const int c_count = chi.count;
    const auto budget = static_cast<std::size_t>(detail::effective_budget(inst));
    std::vector<std::vector<VertexId>> classes(static_cast<std::size_t>(c_count));
    for (std::size_t v = 0; v < n; ++v) classes[static_cast<std::size_t>(chi.colors[v])].push_back(static_cast<VertexId>(v));
    std::vector<Score> class_empty(static_cast<std::size_t>(c_count), 0);
    for (int c = 0; c < c_count; ++c)
        for (VertexId w : classes[static_cast<std::size_t>(c)])
            class_empty[static_cast<std::size_t>(c)] += inst.scores.empty_score(w);

    // Per vertex: potential parent sets with their color masks.
    struct Cand {
        const ScoredParentSet* set;
        std::uint32_t mask;
    };
    std::vector<std::vector<ScoredParentSet>> pots(n);
    std::vector<std::vector<Cand>> cands(n);
    for (std::size_t v = 0; v < n; ++v) {
        pots[v] = potential_parents(inst, static_cast<VertexId>(v));
        for (const auto& p : pots[v]) {
            std::uint32_t mask = 0;
            for (VertexId u : p.parents) mask |= 1u << chi.colors[static_cast<std::size_t>(u)];
            cands[v].push_back({&p, mask});
        }
    }

    struct Choice {
        int color = -1;
        VertexId vertex = -1;  // -1: an empty class peeled off
        const ScoredParentSet* set = nullptr;
    };
    constexpr Score kNone = std::numeric_limits<Score>::min();
    const std::size_t masks = std::size_t{1} << c_count;
    std::vector<Score> T(masks * (budget + 1), kNone);
    std::vector<Choice> choice(masks * (budget + 1));
    auto at = [&](std::size_t mask, std::size_t k) { return mask * (budget + 1) + k; };
    for (std::size_t k = 0; k <= budget; ++k) T[at(0, k)] = 0;

    SolveResult out;
    for (std::size_t mask = 1; mask < masks; ++mask)
        for (std::size_t k = 0; k <= budget; ++k) {
            ++out.telemetry.candidates;
            Score& best = T[at(mask, k)];
            Choice& how = choice[at(mask, k)];
            for (int c = 0; c < c_count; ++c) {
                if (!(mask >> c & 1u)) continue;
                const std::size_t rest = mask & ~(std::size_t{1} << c);
                const auto& members = classes[static_cast<std::size_t>(c)];
                if (members.empty()) {
                    if (T[at(rest, k)] != kNone && T[at(rest, k)] > best) {
                        best = T[at(rest, k)];
                        how = {c, -1, nullptr};
                    }
                    continue;
                }
                for (VertexId v : members) {
                    const Score others = class_empty[static_cast<std::size_t>(c)] - inst.scores.empty_score(v);
                    for (const Cand& cand : cands[static_cast<std::size_t>(v)]) {
                        const std::size_t size = cand.set->parents.size();
                        if (size > k || (cand.mask & ~static_cast<std::uint32_t>(rest)) != 0) continue;
                        const Score prev = T[at(rest, k - size)];
                        if (prev == kNone) continue;
                        const Score value = prev + cand.set->score + others;
                        if (value > best) {
                            best = value;
                            how = {c, v, cand.set};
                        }
                    }
                }
            }
        }

    out.arcs = ArcSet(n);
    std::size_t mask = masks - 1, k = budget;
    out.score = T[at(mask, k)];
    while (mask != 0) {
        const Choice& how = choice[at(mask, k)];
        if (how.vertex >= 0) {
            for (VertexId p : how.set->parents) out.arcs.insert({p, how.vertex});
            k -= how.set->parents.size();
        }
        mask &= ~(std::size_t{1} << how.color);
    }
    out.yes = out.score >= inst.t;
    out.coloring = chi.colors;
    out.moral_graph_edges = moralize(out.arcs).graph.edge_count();
    detail::check_arc_bounded(inst, out, "colored DP");
    if (!color_loyal(out.arcs, chi)) throw std::logic_error("colored DP produced a disloyal arc set");
    return out;
}

/// ⌈e^{2k}⌉: colorings needed for success probability at least 1 - 1/e.
inline std::uint64_t default_repetitions(std::int64_t k) {
    return static_cast<std::uint64_t>(std::ceil(std::exp(2.0 * static_cast<double>(k))));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Randomized arc-bounded BNSL: normalize, then try `repetitions` uniform colorings with
/// min(2k, n) colors and keep the best color-loyal network. Never answers yes wrongly.
/// Trial i draws its colors from mt19937_64 seeded with splitmix64(seed + i).
inline SolveResult solve_ba_color_coding(const Instance& inst, std::uint64_t seed,
                                         std::optional<std::uint64_t> repetitions = std::nullopt,
                                         unsigned threads = 1) {
    validate(inst);
    if (inst.k < 1) throw ArgumentError("color coding needs k >= 1");
    constexpr std::uint64_t kMaxRepetitions = 10'000'000;
    const std::uint64_t reps = repetitions.value_or(default_repetitions(inst.k));
    if (reps < 1) throw ArgumentError("at least one repetition is required");
    if (reps > kMaxRepetitions) throw SizeError("repetition count exceeds 10^7");

    Instance target = inst;
    target.t = std::max(inst.t, empty_score_sum(inst));
    const Normalized norm = normalize(target);
    const int colors = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(2 * inst.k, static_cast<std::int64_t>(inst.n()))));

    // Fixed chunking keeps the merge order independent of the thread count.
    constexpr std::uint64_t kChunks = 64;
    struct ChunkBest {
        bool found = false;
        SolveResult result;
        std::uint64_t successes = 0;
    };
    std::vector<ChunkBest> chunks(kChunks);
    parallel_for(kChunks, threads, [&](std::size_t ci) {
        ChunkBest& mine = chunks[ci];
        for (std::uint64_t i = ci; i < reps; i += kChunks) {
            std::mt19937_64 rng(detail::splitmix64(seed + i));
            Coloring chi{std::vector<int>(inst.n()), colors};
            for (auto& c : chi.colors) c = static_cast<int>(rng() % static_cast<std::uint64_t>(colors));
            SolveResult r = solve_colored_ba(norm.instance, chi);
            if (r.score >= norm.instance.t) ++mine.successes;
            if (!mine.found || r.score > mine.result.score ||
                (r.score == mine.result.score && arcs_less(r.arcs, mine.result.arcs))) {
                mine.found = true;
                mine.result = std::move(r);
            }
        }
    });

    SolveResult out;
    bool found = false;
    for (const auto& ch : chunks) {
        out.telemetry.successes += ch.successes;
        if (!ch.found) continue;
        if (!found || ch.result.score > out.score || (ch.result.score == out.score && arcs_less(ch.result.arcs, out.arcs))) {
            found = true;
            out.score = ch.result.score;
            out.arcs = ch.result.arcs;
            out.coloring = ch.result.coloring;
        }
    }
    out.score += norm.offset;
    out.telemetry.trials = reps;
    out.yes = out.score >= inst.t;
    out.moral_graph_edges = moralize(out.arcs).graph.edge_count();
    detail::check_arc_bounded(inst, out, "color coding");
    return out;
}

/// Exhaustive search over superstructure arc subsets of size at most k for a DAG whose
/// moral graph has at most k edges.
inline SolveResult solve_pi0e(const Instance& inst) {
    validate(inst);
    constexpr double kMaxSubsets = 1e7;
    const ArcSet super = superstructure(inst);
    const auto& arcs = super.arcs();
    const std::size_t m = arcs.size();
    const auto k = static_cast<std::size_t>(std::min<std::int64_t>(inst.k, static_cast<std::int64_t>(m)));
    double count = 0, term = 1;
    for (std::size_t i = 0; i <= k; ++i) {
        count += term;
        term = term * static_cast<double>(m - i) / static_cast<double>(i + 1);
    }
    if (count > kMaxSubsets) throw SizeError("more than 10^7 arc subsets to enumerate");

    SolveResult out;
    bool found = false;
    std::vector<Arc> picked;
    auto leaf = [&] {
        ++out.telemetry.candidates;
        ArcSet candidate(inst.n(), picked);
        if (!is_dag(candidate)) return;
        const std::size_t edges = moralize(candidate).graph.edge_count();
        if (static_cast<std::int64_t>(edges) > inst.k) return;
        const Score s = total_score(inst, candidate);
        if (!found || s > out.score || (s == out.score && arcs_less(candidate, out.arcs))) {
            found = true;
            out.score = s;
            out.arcs = std::move(candidate);
            out.moral_graph_edges = edges;
        }
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            leaf();
            return;
        }
        self(self, i + 1);
        if (picked.size() < k) {
            picked.push_back(arcs[i]);
            self(self, i + 1);
            picked.pop_back();
        }
    };
    rec(rec, 0);
    out.yes = out.score >= inst.t;
    if (!is_dag(out.arcs) || static_cast<std::int64_t>(out.moral_graph_edges) > inst.k ||
        total_score(inst, out.arcs) != out.score)
        throw std::logic_error("pi0e search produced an invalid network");
    return out;
}

}  // namespace bnsl
