#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bnsl/core.hpp"
#include "bnsl/graphs.hpp"
#include "bnsl/parallel.hpp"
#include "bnsl/scores.hpp"

namespace bnsl {

struct NoConstraint {};
struct ArcCountConstraint {
    std::int64_t k = 0;
};
struct MoralClassConstraint {
    ClassSpec spec;
};
using Constraint = std::variant<NoConstraint, ArcCountConstraint, MoralClassConstraint>;

/// potential: the empty set plus stored sets per vertex. exhaustive: every subset of the
/// other vertices (only sensible for n <= 4 or so).
enum class CandidateSpace { potential, exhaustive };

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }

/// Class membership by exhaustive search over deletion sets; adjacency as bitmasks.
class MaskClassChecker {
public:
    MaskClassChecker(std::vector<Mask> adj, ClassSpec spec) : adj_(std::move(adj)), spec_(spec) {
        n_ = static_cast<int>(adj_.size());
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (adj_[static_cast<std::size_t>(u)] & bit(v)) edges_.push_back({u, v});
        if (spec_.mode == Deletion::edge && edges_.size() > 63) throw SizeError("edge-deletion oracle needs at most 63 edges");
    }

    /// Returns the deleted vertices (vertex mode) on success, or nullopt.
    std::optional<std::vector<VertexId>> check() {
        const Mask all = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
        if (spec_.cls == GraphClass::pi0 && spec_.mode == Deletion::edge)
            return static_cast<std::int64_t>(edges_.size()) <= spec_.budget ? std::optional(std::vector<VertexId>{})
                                                                             : std::nullopt;
        if (spec_.mode == Deletion::vertex) {
            for (std::int64_t size = 0; size <= std::min<std::int64_t>(spec_.budget, n_); ++size) {
                std::optional<std::vector<VertexId>> hit;
                choose(0, static_cast<int>(size), 0, [&](Mask removed) {
                    if (hit || !base(all & ~removed, adj_)) return;
                    std::vector<VertexId> out;
                    for (int v = 0; v < n_; ++v)
                        if (removed & bit(v)) out.push_back(v);
                    hit = out;
                });
                if (hit) return hit;
            }
            return std::nullopt;
        }
        const int m = static_cast<int>(edges_.size());
        for (std::int64_t size = 0; size <= std::min<std::int64_t>(spec_.budget, m); ++size) {
            bool hit = false;
            choose_edges(0, static_cast<int>(size), 0, [&](Mask removed) {
                if (hit) return;
                auto adj = adj_;
                for (int e = 0; e < m; ++e)
                    if (removed & bit(e)) {
                        adj[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].first)] &= ~bit(edges_[static_cast<std::size_t>(e)].second);
                        adj[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].second)] &= ~bit(edges_[static_cast<std::size_t>(e)].first);
                    }
                hit = base(all, adj);
            });
            if (hit) return std::vector<VertexId>{};
        }
        return std::nullopt;
    }

private:
    template <typename Fn>
    void choose(int from, int left, Mask acc, Fn&& fn) {
        if (left == 0) {
            fn(acc);
            return;
        }
        for (int v = from; v <= n_ - left; ++v) choose(v + 1, left - 1, acc | bit(v), fn);
    }

    template <typename Fn>
    void choose_edges(int from, int left, Mask acc, Fn&& fn) {
        if (left == 0) {
            fn(acc);
            return;
        }
        const int m = static_cast<int>(edges_.size());
        for (int e = from; e <= m - left; ++e) choose_edges(e + 1, left - 1, acc | bit(e), fn);
    }

    bool base(Mask alive, const std::vector<Mask>& adj) const {
        int edge_ends = 0, max_deg = 0;
        for (int v = 0; v < n_; ++v) {
            if (!(alive & bit(v))) continue;
            const int d = std::popcount(adj[static_cast<std::size_t>(v)] & alive);
            edge_ends += d;
            max_deg = std::max(max_deg, d);
        }
        switch (spec_.cls) {
            case GraphClass::pi0: return edge_ends == 0;
            case GraphClass::pi1: return max_deg <= 1;
            case GraphClass::pi2: return max_deg <= 2;
            case GraphClass::pi3coc:
            case GraphClass::forest: {
                int components = 0;
                bool small = true;
                Mask left = alive;
                while (left) {
                    Mask comp = left & (~left + 1), frontier = comp;
                    while (frontier) {
                        Mask next = 0;
                        for (Mask f = frontier; f; f &= f - 1)
                            next |= adj[static_cast<std::size_t>(std::countr_zero(f))] & alive;
                        frontier = next & ~comp;
                        comp |= next;
                    }
                    left &= ~comp;
                    ++components;
                    if (std::popcount(comp) > 3) small = false;
                }
                if (spec_.cls == GraphClass::pi3coc) return small;
                return edge_ends / 2 + components == std::popcount(alive);
            }
        }
        return false;
    }

    std::vector<Mask> adj_;
    ClassSpec spec_;
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

struct OracleCandidate {
    Mask parents = 0;
    Score score = 0;
    int size = 0;
};

struct OracleBranch {
    bool found = false;
    Score score = 0;
    std::vector<Mask> parents;
    ArcSet arcs;
    std::vector<VertexId> deleted;
    std::uint64_t leaves = 0;
    std::uint64_t pruned = 0;
};

inline ArcSet arcs_from_masks(const std::vector<Mask>& parents) {
    std::vector<Arc> arcs;
    for (std::size_t v = 0; v < parents.size(); ++v)
        for (Mask m = parents[v]; m; m &= m - 1) arcs.push_back({std::countr_zero(m), static_cast<VertexId>(v)});
    return ArcSet(parents.size(), std::move(arcs));
}

class OracleSearch {
public:
    OracleSearch(const std::vector<std::vector<OracleCandidate>>& cands, const Constraint& constraint)
        : cands_(cands), constraint_(constraint), n_(static_cast<int>(cands.size())), parents_(cands.size(), 0),
          children_(cands.size(), 0), suffix_max_(cands.size() + 1, 0) {
        for (int v = n_ - 1; v >= 0; --v) {
            Score best = 0;
            for (const auto& c : cands_[static_cast<std::size_t>(v)]) best = std::max(best, c.score);
            suffix_max_[static_cast<std::size_t>(v)] = suffix_max_[static_cast<std::size_t>(v) + 1] + best;
        }
        if (auto* ac = std::get_if<ArcCountConstraint>(&constraint_)) arc_limit_ = ac->k;
    }

    OracleBranch run_from(int first_choice) {
        const auto& c = cands_[0][static_cast<std::size_t>(first_choice)];
        if (n_ > 0 && try_assign(0, c)) {
            recurse(1, c.score, c.size);
            unassign(0);
        }
        return std::move(best_);
    }

private:
    bool reaches(int from, Mask targets) const {
        Mask seen = bit(from), frontier = bit(from);
        while (frontier) {
            if (frontier & targets) return true;
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= children_[static_cast<std::size_t>(std::countr_zero(f))];
            frontier = next & ~seen;
            seen |= next;
        }
        return false;
    }

    bool try_assign(int v, const OracleCandidate& c) {
        if (c.parents && reaches(v, c.parents)) return false;
        parents_[static_cast<std::size_t>(v)] = c.parents;
        for (Mask m = c.parents; m; m &= m - 1) children_[static_cast<std::size_t>(std::countr_zero(m))] |= bit(v);
        return true;
    }

    void unassign(int v) {
        for (Mask m = parents_[static_cast<std::size_t>(v)]; m; m &= m - 1)
            children_[static_cast<std::size_t>(std::countr_zero(m))] &= ~bit(v);
        parents_[static_cast<std::size_t>(v)] = 0;
    }

    void recurse(int v, Score partial, std::int64_t arcs_used) {
        if (arc_limit_ >= 0 && arcs_used > arc_limit_) return;
        if (best_.found && partial + suffix_max_[static_cast<std::size_t>(v)] < best_.score) {
            ++best_.pruned;
            return;
        }
        if (v == n_) {
            leaf(partial);
            return;
        }
        for (const auto& c : cands_[static_cast<std::size_t>(v)]) {
            if (!try_assign(v, c)) continue;
            recurse(v + 1, partial + c.score, arcs_used + c.size);
            unassign(v);
        }
    }

    void leaf(Score score) {
        ++best_.leaves;
        if (best_.found && score < best_.score) return;
        ArcSet arcs = arcs_from_masks(parents_);
        if (best_.found && score == best_.score && !arcs_less(arcs, best_.arcs)) return;
        std::vector<VertexId> deleted;
        if (auto* mc = std::get_if<MoralClassConstraint>(&constraint_)) {
            std::vector<Mask> adj(static_cast<std::size_t>(n_), 0);
            for (int v = 0; v < n_; ++v) {
                const Mask p = parents_[static_cast<std::size_t>(v)];
                adj[static_cast<std::size_t>(v)] |= p;
                for (Mask m = p; m; m &= m - 1) {
                    const int u = std::countr_zero(m);
                    adj[static_cast<std::size_t>(u)] |= bit(v) | (p & ~bit(u));
                }
            }
            auto verdict = MaskClassChecker(std::move(adj), mc->spec).check();
            if (!verdict) return;
            deleted = std::move(*verdict);
        }
        best_.found = true;
        best_.score = score;
        best_.parents = parents_;
        best_.arcs = std::move(arcs);
        best_.deleted = std::move(deleted);
    }

    const std::vector<std::vector<OracleCandidate>>& cands_;
    const Constraint& constraint_;
    int n_;
    std::vector<Mask> parents_;
    std::vector<Mask> children_;
    std::vector<Score> suffix_max_;
    std::int64_t arc_limit_ = -1;
    OracleBranch best_;
};

}  // namespace detail

/// Ground truth by enumerating one candidate parent set per vertex; keeps acyclic
/// assignments satisfying the constraint and returns the best (lexicographically smallest
/// arc set among ties). Moral-class checks search deletion sets exhaustively and do not
/// use the graph module's branching algorithms.
inline SolveResult oracle_solve(const Instance& inst, const Constraint& constraint,
                                CandidateSpace space = CandidateSpace::potential, unsigned threads = 1) {
    validate(inst);
    constexpr double kMaxAssignments = 1e7;
    const std::size_t n = inst.n();
    if (n > 64) throw SizeError("oracle handles at most 64 vertices");
    if (const auto* ac = std::get_if<ArcCountConstraint>(&constraint); ac && ac->k < 0)
        throw ArgumentError("arc budget must be nonnegative");
    if (const auto* mc = std::get_if<MoralClassConstraint>(&constraint); mc && mc->spec.budget < 0)
        throw ArgumentError("class budget must be nonnegative");

    std::vector<std::vector<detail::OracleCandidate>> cands(n);
    double product = 1;
    for (std::size_t v = 0; v < n; ++v) {
        const auto vid = static_cast<VertexId>(v);
        if (space == CandidateSpace::potential) {
            for (const auto& p : potential_parents(inst, vid)) {
                detail::Mask m = 0;
                for (VertexId u : p.parents) m |= detail::bit(u);
                cands[v].push_back({m, p.score, static_cast<int>(p.parents.size())});
            }
        } else {
            if (n > 20) throw SizeError("exhaustive candidate space needs n <= 20");
            for (detail::Mask m = 0; m < detail::bit(static_cast<int>(n)); ++m) {
                if (m & detail::bit(vid)) continue;
                std::vector<VertexId> members;
                for (detail::Mask x = m; x; x &= x - 1) members.push_back(std::countr_zero(x));
                const Score s = inst.scores.score(vid, ParentSet(members));
                cands[v].push_back({m, s, std::popcount(m)});
            }
        }
        product *= static_cast<double>(cands[v].size());
        if (product > kMaxAssignments) throw SizeError("more than 10^7 parent-set assignments to enumerate");
    }

    SolveResult out;
    if (n == 0) {
        out.arcs = ArcSet(0);
        out.yes = out.score >= inst.t;
        return out;
    }
    std::vector<detail::OracleBranch> branches(cands[0].size());
    parallel_for(branches.size(), threads, [&](std::size_t i) {
        branches[i] = detail::OracleSearch(cands, constraint).run_from(static_cast<int>(i));
    });
    bool found = false;
    for (auto& b : branches) {
        out.telemetry.candidates += b.leaves;
        out.telemetry.pruned += b.pruned;
        if (!b.found) continue;
        if (!found || b.score > out.score || (b.score == out.score && arcs_less(b.arcs, out.arcs))) {
            found = true;
            out.score = b.score;
            out.arcs = b.arcs;
            out.dissociation_set = b.deleted;
        }
    }
    if (!found) throw std::logic_error("oracle found no feasible assignment");
    out.yes = out.score >= inst.t;
    out.moral_graph_edges = moralize(out.arcs).graph.edge_count();
    return out;
}

}  // namespace bnsl
