#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bnsl/core.hpp"
#include "bnsl/graphs.hpp"
#include "bnsl/matching.hpp"
#include "bnsl/parallel.hpp"
#include "bnsl/scores.hpp"

namespace bnsl {

/// Ancestor tuple <Q, A_Q> for a dissociation-set candidate S. A_Q lives on all n vertices
/// but may only touch S ∪ Q.
struct AncestorTuple {
    std::vector<VertexId> S;
    std::vector<VertexId> Q;
    ArcSet A_Q;
};

enum class TupleViolation { none, cyclic, no_descendant_in_s, outside_neighbors };

struct TupleVerdict {
    TupleViolation violation = TupleViolation::none;
    VertexId vertex = -1;  // the offending Q vertex for the last two kinds

    explicit operator bool() const noexcept { return violation == TupleViolation::none; }
};

struct TuplePartition {
    std::vector<VertexId> Q0;  // degree 0 in Mo(D_Q) - S
    std::vector<VertexId> Q1;
    std::vector<VertexId> R;   // N \ (S ∪ Q)
};

enum class SuitViolation { none, outside_domain, self_loop, shared_endpoint };

struct SuitVerdict {
    SuitViolation violation = SuitViolation::none;
    Arc arc{};          // first offending arc (domain, self-loop)
    VertexId vertex = -1;  // vertex with two incident arcs

    explicit operator bool() const noexcept { return violation == SuitViolation::none; }
};

struct Decomposition {
    AncestorTuple tuple;
    ArcSet A_R;
};

struct CompletionResult {
    ArcSet arcs;  // A_R
    Score score = 0;
    bool meets = false;
};

namespace detail {

enum Role : char { kRest = 0, kInS = 1, kInQ = 2 };

inline std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw ArgumentError("vertex set contains a duplicate");
    return v;
}

inline std::vector<char> roles(std::size_t n, const std::vector<VertexId>& S, const std::vector<VertexId>& Q) {
    std::vector<char> role(n, kRest);
    auto mark = [&](const std::vector<VertexId>& set, char r) {
        for (VertexId v : set) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) throw ArgumentError("vertex id out of range");
            if (role[static_cast<std::size_t>(v)] != kRest) throw ArgumentError("S and Q overlap");
            role[static_cast<std::size_t>(v)] = r;
        }
    };
    mark(sorted_unique(S), kInS);
    mark(sorted_unique(Q), kInQ);
    return role;
}

/// Vertices with a descendant in `targets` (targets themselves included).
inline std::vector<char> has_descendant_in(const ArcSet& arcs, const std::vector<VertexId>& targets) {
    std::vector<std::vector<VertexId>> parents(arcs.n());
    for (const Arc& a : arcs) parents[static_cast<std::size_t>(a.to)].push_back(a.from);
    std::vector<char> mark(arcs.n(), 0);
    std::vector<VertexId> stack(targets.begin(), targets.end());
    for (VertexId v : targets) mark[static_cast<std::size_t>(v)] = 1;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (VertexId p : parents[static_cast<std::size_t>(v)])
            if (!mark[static_cast<std::size_t>(p)]) {
                mark[static_cast<std::size_t>(p)] = 1;
                stack.push_back(p);
            }
    }
    return mark;
}

}  // namespace detail

inline TupleVerdict is_ancestor_tuple(const AncestorTuple& tuple) {
    const std::size_t n = tuple.A_Q.n();
    const auto role = detail::roles(n, tuple.S, tuple.Q);
    for (const Arc& a : tuple.A_Q)
        if (role[static_cast<std::size_t>(a.from)] == detail::kRest || role[static_cast<std::size_t>(a.to)] == detail::kRest)
            throw ArgumentError("A_Q has an arc outside S ∪ Q");
    if (!is_dag(tuple.A_Q)) return {TupleViolation::cyclic, -1};

    const auto reaches = detail::has_descendant_in(tuple.A_Q, tuple.S);
    auto q = detail::sorted_unique(tuple.Q);
    for (VertexId v : q)
        if (!reaches[static_cast<std::size_t>(v)]) return {TupleViolation::no_descendant_in_s, v};

    const auto moral = moralize(tuple.A_Q);
    for (VertexId v : q) {
        const auto& nb = moral.graph.neighbors(v);
        const auto outside = std::count_if(nb.begin(), nb.end(),
                                           [&](VertexId w) { return role[static_cast<std::size_t>(w)] != detail::kInS; });
        if (outside > 1) return {TupleViolation::outside_neighbors, v};
    }
    return {};
}

/// Splits Q by degree in Mo(D_Q) - S and collects R. Assumes a valid ancestor tuple.
inline TuplePartition partition(const AncestorTuple& tuple) {
    const std::size_t n = tuple.A_Q.n();
    const auto role = detail::roles(n, tuple.S, tuple.Q);
    const auto moral = moralize(tuple.A_Q);
    TuplePartition out;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<VertexId>(i);
        if (role[i] == detail::kRest) {
            out.R.push_back(v);
        } else if (role[i] == detail::kInQ) {
            const auto& nb = moral.graph.neighbors(v);
            const bool isolated = std::none_of(nb.begin(), nb.end(), [&](VertexId w) {
                return role[static_cast<std::size_t>(w)] != detail::kInS;
            });
            (isolated ? out.Q0 : out.Q1).push_back(v);
        }
    }
    return out;
}

inline SuitVerdict is_suitable(std::vector<Arc> A_R, const AncestorTuple& tuple) {
    if (!is_ancestor_tuple(tuple)) throw PreconditionError("not an ancestor tuple");
    const std::size_t n = tuple.A_Q.n();
    const auto parts = partition(tuple);
    std::vector<char> in_r(n, 0), in_q0(n, 0), in_s(n, 0);
    for (VertexId v : parts.R) in_r[static_cast<std::size_t>(v)] = 1;
    for (VertexId v : parts.Q0) in_q0[static_cast<std::size_t>(v)] = 1;
    for (VertexId v : tuple.S) in_s[static_cast<std::size_t>(v)] = 1;

    std::sort(A_R.begin(), A_R.end());
    A_R.erase(std::unique(A_R.begin(), A_R.end()), A_R.end());
    std::vector<int> incident(n, 0);
    for (const Arc& a : A_R) {
        if (a.from < 0 || a.to < 0 || static_cast<std::size_t>(a.from) >= n || static_cast<std::size_t>(a.to) >= n)
            return {SuitViolation::outside_domain, a, -1};
        const auto from = static_cast<std::size_t>(a.from), to = static_cast<std::size_t>(a.to);
        if (!in_r[to] || !(in_s[from] || in_q0[from] || in_r[from])) return {SuitViolation::outside_domain, a, -1};
        if (a.from == a.to) return {SuitViolation::self_loop, a, -1};
    }
    for (const Arc& a : A_R) {
        if (in_s[static_cast<std::size_t>(a.from)]) continue;
        for (VertexId v : {a.from, a.to})
            if (++incident[static_cast<std::size_t>(v)] > 1) return {SuitViolation::shared_endpoint, a, v};
    }
    return {};
}

/// (N, A_Q ∪ A_R). The result is re-checked for acyclicity and the dissociation property.
inline ArcSet compose(const AncestorTuple& tuple, const ArcSet& A_R) {
    if (A_R.n() != tuple.A_Q.n()) throw ArgumentError("arc sets differ in vertex count");
    if (!is_ancestor_tuple(tuple)) throw PreconditionError("not an ancestor tuple");
    if (!is_suitable(A_R.arcs(), tuple)) throw PreconditionError("A_R is not suitable for the tuple");
    ArcSet all = tuple.A_Q;
    for (const Arc& a : A_R) all.insert(a);
    if (!is_dag(all) || !is_dissociation_set(moralize(all).graph, tuple.S))
        throw std::logic_error("composed arc set violates the ancestor-tuple guarantees");
    return all;
}

/// Splits a DAG along S: Q are the vertices outside S with a descendant in S.
inline Decomposition decompose(const ArcSet& dag, std::vector<VertexId> S) {
    S = detail::sorted_unique(std::move(S));
    const auto role = detail::roles(dag.n(), S, {});
    const auto moral = moralize(dag);
    if (!is_dissociation_set(moral.graph, S)) throw PreconditionError("S is not a dissociation set of the moral graph");
    const auto reaches = detail::has_descendant_in(dag, S);
    Decomposition out{{S, {}, ArcSet(dag.n())}, ArcSet(dag.n())};
    std::vector<char> inside(dag.n(), 0);
    for (std::size_t i = 0; i < dag.n(); ++i) {
        if (reaches[i] && role[i] != detail::kInS) out.tuple.Q.push_back(static_cast<VertexId>(i));
        inside[i] = reaches[i];
    }
    for (const Arc& a : dag) {
        if (inside[static_cast<std::size_t>(a.from)] && inside[static_cast<std::size_t>(a.to)])
            out.tuple.A_Q.insert(a);
        else
            out.A_R.insert(a);
    }
    return out;
}

namespace detail {

/// Per-S lookup: for each vertex outside S, its best S-only parent set and, per single
/// outside member w, its best parent set of the form S' ∪ {w}.
struct CompletionTables {
    std::vector<ScoredParentSet> s_only;
    std::vector<std::map<VertexId, ScoredParentSet>> with_one;
};

inline bool better(const ScoredParentSet& a, const ScoredParentSet& b) {
    return a.score > b.score || (a.score == b.score && a.parents < b.parents);
}

inline CompletionTables completion_tables(const Instance& inst, const std::vector<char>& in_s) {
    const std::size_t n = inst.n();
    CompletionTables t{std::vector<ScoredParentSet>(n), std::vector<std::map<VertexId, ScoredParentSet>>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        if (in_s[i]) continue;
        const auto v = static_cast<VertexId>(i);
        t.s_only[i] = {ParentSet{}, inst.scores.empty_score(v)};
        for (const auto& e : inst.scores.entries(v)) {
            VertexId outside = -1;
            int count = 0;
            for (VertexId p : e.parents)
                if (!in_s[static_cast<std::size_t>(p)]) {
                    outside = p;
                    ++count;
                }
            if (count == 0) {
                if (better(e, t.s_only[i])) t.s_only[i] = e;
            } else if (count == 1) {
                auto [it, fresh] = t.with_one[i].try_emplace(outside, e);
                if (!fresh && better(e, it->second)) it->second = e;
            }
        }
    }
    return t;
}

/// Optimal suitable A_R for fixed (S, Q0, R) by maximum weight matching on Q0 ∪ R ∪ R'.
inline CompletionResult complete(const Instance& inst, const CompletionTables& tables,
                                 const std::vector<VertexId>& Q0, const std::vector<VertexId>& R, Score target) {
    const std::size_t n = inst.n();
    std::vector<int> index(n, -1);
    for (std::size_t i = 0; i < Q0.size(); ++i) index[static_cast<std::size_t>(Q0[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < R.size(); ++i)
        index[static_cast<std::size_t>(R[i])] = static_cast<int>(Q0.size() + i);
    const int prime_offset = static_cast<int>(R.size());
    std::vector<char> in_r(n, 0), in_q0(n, 0);
    for (VertexId v : R) in_r[static_cast<std::size_t>(v)] = 1;
    for (VertexId v : Q0) in_q0[static_cast<std::size_t>(v)] = 1;

    auto one = [&](VertexId v, VertexId w) -> const ScoredParentSet* {
        const auto& m = tables.with_one[static_cast<std::size_t>(v)];
        auto it = m.find(w);
        return it == m.end() ? nullptr : &it->second;
    };
    // φ(u1,u2): u2 becomes the single outside parent of u1. -1 when u1 has no such set.
    auto phi = [&](VertexId u1, VertexId u2) -> Score {
        const auto* p = one(u1, u2);
        return p ? p->score + tables.s_only[static_cast<std::size_t>(u2)].score : -1;
    };

    WeightedGraph g(Q0.size() + 2 * R.size());
    for (VertexId v : R) {
        const auto vi = index[static_cast<std::size_t>(v)];
        const Score z = tables.s_only[static_cast<std::size_t>(v)].score;
        if (z > 0) g.add_edge(vi, vi + prime_offset, z);
        for (const auto& [w, best] : tables.with_one[static_cast<std::size_t>(v)]) {
            if (in_q0[static_cast<std::size_t>(w)]) {
                if (best.score > 0) g.add_edge(vi, index[static_cast<std::size_t>(w)], best.score);
            } else if (in_r[static_cast<std::size_t>(w)]) {
                // Each R pair once: from the smaller id, or from v when w lacks a set with v.
                if (w < v && one(w, v)) continue;
                const Score weight = std::max(phi(v, w), phi(w, v));
                if (weight > 0) g.add_edge(vi, index[static_cast<std::size_t>(w)], weight);
            }
        }
    }

    const Matching matching = max_weight_matching(g);
    std::vector<VertexId> vertex_of(Q0.size() + R.size());
    for (std::size_t i = 0; i < n; ++i)
        if (index[i] >= 0) vertex_of[static_cast<std::size_t>(index[i])] = static_cast<VertexId>(i);

    std::vector<const ScoredParentSet*> chosen(n, nullptr);
    for (VertexId v : R) chosen[static_cast<std::size_t>(v)] = &tables.s_only[static_cast<std::size_t>(v)];
    for (const Edge& e : matching.edges) {
        if (e.v >= static_cast<VertexId>(vertex_of.size())) continue;  // {v, v'}: keep the S-only set
        const VertexId a = vertex_of[static_cast<std::size_t>(e.u)];
        const VertexId b = vertex_of[static_cast<std::size_t>(e.v)];
        if (in_q0[static_cast<std::size_t>(a)] || in_q0[static_cast<std::size_t>(b)]) {
            const VertexId r = in_r[static_cast<std::size_t>(a)] ? a : b;
            const VertexId q = r == a ? b : a;
            chosen[static_cast<std::size_t>(r)] = one(r, q);
        } else {
            const Score ab = phi(a, b), ba = phi(b, a);
            VertexId child;
            if (ab != ba) child = ab > ba ? a : b;
            else child = std::min(a, b);
            chosen[static_cast<std::size_t>(child)] = one(child, child == a ? b : a);
        }
    }

    CompletionResult out;
    out.arcs = ArcSet(n);
    for (VertexId v : R) {
        const auto* p = chosen[static_cast<std::size_t>(v)];
        out.score += p->score;
        for (VertexId u : p->parents) out.arcs.insert({u, v});
    }
    if (out.score != matching.total) throw std::logic_error("completion reconstruction disagrees with matching weight");
    out.meets = out.score >= target;
    return out;
}

}  // namespace detail

/// Best suitable arc set for the tuple; `target` is t' (what R still has to contribute).
inline CompletionResult solve_completion(const Instance& inst, const AncestorTuple& tuple, Score target) {
    if (tuple.A_Q.n() != inst.n()) throw ArgumentError("tuple vertex count does not match instance");
    if (!is_ancestor_tuple(tuple)) throw PreconditionError("not an ancestor tuple");
    std::vector<char> in_s(inst.n(), 0);
    for (VertexId v : tuple.S) in_s[static_cast<std::size_t>(v)] = 1;
    const auto tables = detail::completion_tables(inst, in_s);
    const auto parts = partition(tuple);
    return detail::complete(inst, tables, parts.Q0, parts.R, target);
}

namespace detail {

struct Pi1vUnitResult {
    Score score = 0;
    ArcSet arcs;
    Telemetry telemetry;
};

/// Everything reachable from one choice of S: all ancestor tuples, each completed optimally.
/// Tuples are built by handing a parent set to the smallest unassigned vertex of S ∪ Q;
/// parents outside S ∪ Q join Q, so Q is exactly the ancestor set of S.
class Pi1vUnit {
public:
    Pi1vUnit(const Instance& inst, const std::vector<std::vector<ScoredParentSet>>& candidates,
             const std::vector<Score>& max_local, std::vector<VertexId> S)
        : inst_(inst), candidates_(candidates), max_local_(max_local), S_(std::move(S)), n_(inst.n()),
          role_(n_, kRest), assigned_(n_, 0), chosen_(n_, nullptr), children_(n_),
          moral_(n_, std::vector<char>(n_, 0)), qdeg_(n_, 0) {
        std::vector<char> in_s(n_, 0);
        for (VertexId v : S_) {
            role_[static_cast<std::size_t>(v)] = kInS;
            in_s[static_cast<std::size_t>(v)] = 1;
        }
        tables_ = completion_tables(inst_, in_s);
        for (Score m : max_local_) remaining_ += m;
    }

    Pi1vUnitResult run() {
        extend();
        return std::move(result_);
    }

private:
    bool reaches_any(VertexId from, const ParentSet& targets) const {
        std::vector<char> seen(n_, 0);
        std::vector<VertexId> stack{from};
        seen[static_cast<std::size_t>(from)] = 1;
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            if (targets.contains(v)) return true;
            for (VertexId c : children_[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(c)]) {
                    seen[static_cast<std::size_t>(c)] = 1;
                    stack.push_back(c);
                }
        }
        return false;
    }

    // Adds a moral edge; returns false when a Q vertex gains a second Q neighbour.
    bool add_moral(VertexId a, VertexId b, std::vector<std::pair<VertexId, VertexId>>& added) {
        auto& cell = moral_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (cell) return true;
        cell = moral_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
        added.emplace_back(a, b);
        if (role_[static_cast<std::size_t>(a)] == kInQ && role_[static_cast<std::size_t>(b)] == kInQ) {
            const int da = ++qdeg_[static_cast<std::size_t>(a)];
            const int db = ++qdeg_[static_cast<std::size_t>(b)];
            if (da > 1 || db > 1) return false;
        }
        return true;
    }

    void remove_moral(const std::vector<std::pair<VertexId, VertexId>>& added) {
        for (auto [a, b] : added) {
            moral_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 0;
            moral_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 0;
            if (role_[static_cast<std::size_t>(a)] == kInQ && role_[static_cast<std::size_t>(b)] == kInQ) {
                --qdeg_[static_cast<std::size_t>(a)];
                --qdeg_[static_cast<std::size_t>(b)];
            }
        }
    }

    void extend() {
        VertexId v = -1;
        for (std::size_t i = 0; i < n_; ++i)
            if (role_[i] != kRest && !assigned_[i]) {
                v = static_cast<VertexId>(i);
                break;
            }
        if (v < 0) {
            evaluate();
            return;
        }
        const auto vi = static_cast<std::size_t>(v);
        for (const ScoredParentSet& cand : candidates_[vi]) {
            if (found_ && partial_ + cand.score + remaining_ - max_local_[vi] < result_.score) {
                ++result_.telemetry.pruned;
                continue;
            }
            std::vector<VertexId> joined;
            for (VertexId p : cand.parents)
                if (role_[static_cast<std::size_t>(p)] == kRest) joined.push_back(p);
            if (q_size_ + joined.size() > 2 * S_.size()) continue;
            if (!cand.parents.empty() && reaches_any(v, cand.parents)) continue;

            for (VertexId p : joined) role_[static_cast<std::size_t>(p)] = kInQ;
            q_size_ += joined.size();
            for (VertexId p : cand.parents) children_[static_cast<std::size_t>(p)].push_back(v);
            std::vector<std::pair<VertexId, VertexId>> added;
            bool ok = true;
            const auto& m = cand.parents.members();
            for (std::size_t i = 0; i < m.size() && ok; ++i) {
                ok = add_moral(m[i], v, added);
                for (std::size_t j = i + 1; j < m.size() && ok; ++j) ok = add_moral(m[i], m[j], added);
            }
            if (ok) {
                assigned_[vi] = 1;
                chosen_[vi] = &cand;
                partial_ += cand.score;
                remaining_ -= max_local_[vi];
                extend();
                remaining_ += max_local_[vi];
                partial_ -= cand.score;
                chosen_[vi] = nullptr;
                assigned_[vi] = 0;
            }
            remove_moral(added);
            for (VertexId p : cand.parents) children_[static_cast<std::size_t>(p)].pop_back();
            q_size_ -= joined.size();
            for (VertexId p : joined) role_[static_cast<std::size_t>(p)] = kRest;
        }
    }

    void evaluate() {
        ++result_.telemetry.candidates;
        if (found_ && partial_ + remaining_ < result_.score) {
            ++result_.telemetry.pruned;
            return;
        }
        std::vector<VertexId> Q0, R;
        for (std::size_t i = 0; i < n_; ++i) {
            if (role_[i] == kRest) R.push_back(static_cast<VertexId>(i));
            else if (role_[i] == kInQ && qdeg_[i] == 0)
                Q0.push_back(static_cast<VertexId>(i));
        }
        ++result_.telemetry.completions;
        CompletionResult completion = complete(inst_, tables_, Q0, R, 0);
        const Score total = partial_ + completion.score;
        ArcSet arcs = std::move(completion.arcs);
        for (std::size_t i = 0; i < n_; ++i)
            if (chosen_[i])
                for (VertexId p : chosen_[i]->parents) arcs.insert({p, static_cast<VertexId>(i)});
        if (!found_ || total > result_.score || (total == result_.score && arcs_less(arcs, result_.arcs))) {
            found_ = true;
            result_.score = total;
            result_.arcs = std::move(arcs);
        }
    }

    const Instance& inst_;
    const std::vector<std::vector<ScoredParentSet>>& candidates_;
    const std::vector<Score>& max_local_;
    std::vector<VertexId> S_;
    std::size_t n_;
    std::vector<char> role_;
    std::vector<char> assigned_;
    std::vector<const ScoredParentSet*> chosen_;
    std::vector<std::vector<VertexId>> children_;
    std::vector<std::vector<char>> moral_;
    std::vector<int> qdeg_;
    std::size_t q_size_ = 0;
    Score partial_ = 0;
    Score remaining_ = 0;
    bool found_ = false;
    CompletionTables tables_;
    Pi1vUnitResult result_;
};

/// All subsets of {0..n-1} of size at most k, by size then lexicographically.
inline std::vector<std::vector<VertexId>> subsets_up_to(std::size_t n, std::size_t k) {
    std::vector<std::vector<VertexId>> out;
    for (std::size_t size = 0; size <= std::min(k, n); ++size) {
        std::vector<VertexId> cur(size);
        for (std::size_t i = 0; i < size; ++i) cur[i] = static_cast<VertexId>(i);
        while (true) {
            out.push_back(cur);
            std::size_t i = size;
            while (i > 0 && cur[i - 1] == static_cast<VertexId>(n - size + i - 1)) --i;
            if (i == 0) break;
            ++cur[i - 1];
            for (std::size_t j = i; j < size; ++j) cur[j] = cur[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace detail

/// Exact solver for BNSL with moral graph in Π1 + kv (dissociation set of size at most k).
/// `threads` = 0 uses every hardware thread; output does not depend on it.
inline SolveResult solve_pi1v(const Instance& original, unsigned threads = 1) {
    validate(original);
    const Instance inst = prune_parent_size(original, static_cast<std::size_t>(original.k) + 1);
    const std::size_t n = inst.n();
    std::vector<std::vector<ScoredParentSet>> candidates(n);
    std::vector<Score> max_local(n);
    for (std::size_t v = 0; v < n; ++v) {
        candidates[v] = potential_parents(inst, static_cast<VertexId>(v));
        max_local[v] = max_local_score(inst, static_cast<VertexId>(v));
    }

    const auto units = detail::subsets_up_to(n, static_cast<std::size_t>(original.k));
    std::vector<detail::Pi1vUnitResult> results(units.size());
    parallel_for(units.size(), threads, [&](std::size_t i) {
        results[i] = detail::Pi1vUnit(inst, candidates, max_local, units[i]).run();
    });

    SolveResult out;
    std::size_t winner = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out.telemetry.candidates += r.telemetry.candidates;
        out.telemetry.completions += r.telemetry.completions;
        out.telemetry.pruned += r.telemetry.pruned;
        const auto& best = results[winner];
        if (i == 0 || r.score > best.score || (r.score == best.score && arcs_less(r.arcs, best.arcs))) winner = i;
    }
    out.score = results[winner].score;
    out.arcs = results[winner].arcs;
    out.dissociation_set = units[winner];
    out.yes = out.score >= original.t;
    out.moral_graph_edges = moralize(out.arcs).graph.edge_count();

    const bool valid = is_dag(out.arcs) && total_score(original, out.arcs) == out.score &&
                       is_dissociation_set(moralize(out.arcs).graph, out.dissociation_set) &&
                       check_class(moralize(out.arcs).graph, {GraphClass::pi1, Deletion::vertex, original.k}).member;
    if (!valid) throw std::logic_error("pi1v solver produced an invalid network");
    return out;
}

}  // namespace bnsl
