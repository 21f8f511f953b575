#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bnsl/core.hpp"
#include "bnsl/graphs.hpp"
#include "bnsl/scores.hpp"

namespace bnsl {

/// Undirected graph whose vertices are partitioned into classes 0..class_count-1.
struct ColoredGraph {
    UndirectedGraph graph;
    std::vector<int> color_of;
    int class_count = 0;
};

inline void validate(const ColoredGraph& cg) {
    if (cg.color_of.size() != cg.graph.n()) throw ArgumentError("every vertex needs a color class");
    std::vector<int> size(static_cast<std::size_t>(std::max(cg.class_count, 0)), 0);
    for (int c : cg.color_of) {
        if (c < 0 || c >= cg.class_count) throw ArgumentError("color class out of range");
        ++size[static_cast<std::size_t>(c)];
    }
    for (int s : size)
        if (s == 0) throw ArgumentError("color classes must be nonempty");
}

inline Score binomial2(std::int64_t l) { return l * (l - 1) / 2; }

namespace detail {

inline std::vector<std::string> vertex_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    return names;
}

inline std::string edge_name(int copy, const Edge& e) {
    return "e" + std::to_string(copy) + ":v" + std::to_string(e.u) + "-v" + std::to_string(e.v);
}

}  // namespace detail

/// Yes-instance of BNSL under Π1 + kv iff g has a clique on `ell` vertices.
/// Vertices: v0.., then e1:u-v per edge, then e2:u-v per edge.
inline Instance from_clique(const UndirectedGraph& g, std::int64_t ell) {
    if (ell < 2) throw ArgumentError("clique size must be at least 2");
    auto names = detail::vertex_names(g.n());
    const auto m = g.edge_count();
    for (int copy : {1, 2})
        for (const Edge& e : g.edges()) names.push_back(detail::edge_name(copy, e));
    Instance inst = make_instance(std::move(names), binomial2(ell), ell);
    for (std::size_t i = 0; i < m; ++i) {
        const Edge& e = g.edges()[i];
        const auto e1 = static_cast<VertexId>(g.n() + i);
        const auto e2 = static_cast<VertexId>(g.n() + m + i);
        inst.scores.add(e1, ParentSet{e2, e.u, e.v}, 1);
    }
    return inst;
}

/// Yes-instance under Π2 at k = 0 iff g has a Hamiltonian path.
inline Instance from_hampath(const UndirectedGraph& g) {
    const auto n = static_cast<Score>(g.n());
    Instance inst = make_instance(detail::vertex_names(g.n()), std::max<Score>(n - 1, 0), 0);
    for (std::size_t v = 0; v < g.n(); ++v)
        for (VertexId w : g.neighbors(static_cast<VertexId>(v))) inst.scores.add(static_cast<VertexId>(v), ParentSet{w}, 1);
    return inst;
}

/// Yes-instance under Π3^COC at k = 0 iff g has a perfect triangle packing. When n is not
/// divisible by 3, t is set one above the largest reachable total so the answer is no.
inline Instance from_triangle_cover(const UndirectedGraph& g) {
    const auto n = static_cast<Score>(g.n());
    Instance inst = make_instance(detail::vertex_names(g.n()), 0, 0);
    for (std::size_t i = 0; i < g.n(); ++i) {
        const auto v = static_cast<VertexId>(i);
        const auto& nb = g.neighbors(v);
        for (VertexId w : nb) inst.scores.add(v, ParentSet{w}, 1);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) inst.scores.add(v, ParentSet{nb[a], nb[b]}, n);
    }
    if (n % 3 == 0) {
        inst.t = (n * n + n) / 3;
    } else {
        Score reachable = 0;
        for (std::size_t v = 0; v < g.n(); ++v) reachable += max_local_score(inst, static_cast<VertexId>(v));
        inst.t = reachable + 1;
    }
    return inst;
}

/// Yes-instance under Π0 + ke iff cg has a multicolored clique. Vertices: v0.., then
/// w{i,j} per class pair (1-based, i < j), then the central vertex x.
inline Instance from_multicolored_clique(const ColoredGraph& cg) {
    validate(cg);
    const std::int64_t ell = cg.class_count;
    if (ell < 2) throw ArgumentError("need at least 2 color classes");
    auto names = detail::vertex_names(cg.graph.n());
    std::vector<std::vector<VertexId>> w_id(static_cast<std::size_t>(ell), std::vector<VertexId>(static_cast<std::size_t>(ell), -1));
    for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j) {
            w_id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<VertexId>(names.size());
            names.push_back("w{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}");
        }
    const auto x = static_cast<VertexId>(names.size());
    names.push_back("x");
    Instance inst = make_instance(std::move(names), binomial2(ell), 4 * binomial2(ell) + ell);
    for (const Edge& e : cg.graph.edges()) {
        int ci = cg.color_of[static_cast<std::size_t>(e.u)], cj = cg.color_of[static_cast<std::size_t>(e.v)];
        if (ci == cj) continue;
        if (ci > cj) std::swap(ci, cj);
        inst.scores.add(w_id[static_cast<std::size_t>(ci)][static_cast<std::size_t>(cj)], ParentSet{e.u, e.v, x}, 1);
    }
    return inst;
}

/// Arc-bounded instance (k = |N|^2, so effectively unbounded) that is a yes-instance iff
/// cg has a multicolored independent set. Vertices: members of every class but the last
/// (named v<original id>), then x.
inline Instance from_multicolored_independent_set(const ColoredGraph& cg) {
    validate(cg);
    const int ell = cg.class_count;
    if (ell < 2) throw ArgumentError("need at least 2 color classes");
    const int last = ell - 1;
    std::vector<VertexId> id(cg.graph.n(), -1);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < cg.graph.n(); ++v)
        if (cg.color_of[v] != last) {
            id[v] = static_cast<VertexId>(names.size());
            names.push_back("v" + std::to_string(v));
        }
    const auto x = static_cast<VertexId>(names.size());
    names.push_back("x");
    const auto size = static_cast<std::int64_t>(names.size());
    Instance inst = make_instance(std::move(names), ell, size * size);

    for (std::size_t v = 0; v < cg.graph.n(); ++v) {
        const int c = cg.color_of[v];
        if (c == last) continue;
        std::set<VertexId> parents{x};
        for (std::size_t w = 0; w < cg.graph.n(); ++w)
            if (w != v && cg.color_of[w] == c) parents.insert(id[w]);
        for (VertexId w : cg.graph.neighbors(static_cast<VertexId>(v)))
            if (cg.color_of[static_cast<std::size_t>(w)] != last) parents.insert(id[static_cast<std::size_t>(w)]);
        inst.scores.add(id[v], ParentSet(std::vector<VertexId>(parents.begin(), parents.end())), 1);
    }
    std::set<ParentSet> seen;
    for (std::size_t w = 0; w < cg.graph.n(); ++w) {
        if (cg.color_of[w] != last) continue;
        std::vector<VertexId> nb;
        for (VertexId u : cg.graph.neighbors(static_cast<VertexId>(w)))
            if (cg.color_of[static_cast<std::size_t>(u)] != last) nb.push_back(id[static_cast<std::size_t>(u)]);
        ParentSet p(std::move(nb));
        if (!seen.insert(p).second) continue;
        if (p.empty()) inst.scores.set_empty_score(x, 1);
        else inst.scores.add(x, std::move(p), 1);
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

struct RandomInstanceParams {
    std::size_t n = 5;
    std::size_t max_parents = 2;
    std::size_t entries_per_vertex = 3;
    Score min_score = 1;
    Score max_score = 10;
    Score empty_score_max = 0;  // f_v(∅) drawn from [0, empty_score_max]
    std::uint64_t seed = 0;
    bool acyclic = false;  // parents restricted to lower ids; entries capped by what exists
    Score t = 0;
    std::int64_t k = 0;
};

namespace detail {

// Portable bounded draw; std::uniform_int_distribution differs between standard libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

inline std::uint64_t count_sets(std::size_t pool, std::size_t max_size) {
    std::uint64_t total = 0, term = 1;
    for (std::size_t s = 1; s <= std::min(pool, max_size); ++s) {
        term = term * (pool - s + 1) / s;
        total += term;
    }
    return total;
}

}  // namespace detail

inline Instance random_instance(const RandomInstanceParams& p) {
    if (p.n == 0) throw ArgumentError("n must be positive");
    if (p.max_parents == 0 || p.max_parents >= p.n) throw ArgumentError("max_parents must lie in 1..n-1");
    if (p.min_score < 1 || p.min_score > p.max_score) throw ArgumentError("score range must satisfy 1 <= min <= max");
    if (p.empty_score_max < 0) throw ArgumentError("empty score bound must be nonnegative");
    if (!p.acyclic && detail::count_sets(p.n - 1, p.max_parents) < p.entries_per_vertex)
        throw ArgumentError("not enough distinct parent sets for entries_per_vertex");

    std::mt19937_64 rng(p.seed);
    Instance inst = make_instance(detail::vertex_names(p.n), p.t, p.k);
    for (std::size_t i = 0; i < p.n; ++i) {
        const auto v = static_cast<VertexId>(i);
        inst.scores.set_empty_score(v, static_cast<Score>(detail::draw(rng, 0, static_cast<std::uint64_t>(p.empty_score_max))));
        std::vector<VertexId> pool;
        for (std::size_t u = 0; u < (p.acyclic ? i : p.n); ++u)
            if (u != i) pool.push_back(static_cast<VertexId>(u));
        const std::size_t widest = std::min(p.max_parents, pool.size());
        const auto want = std::min<std::uint64_t>(p.entries_per_vertex, detail::count_sets(pool.size(), widest));
        std::set<ParentSet> taken;
        while (taken.size() < want) {
            const auto size = static_cast<std::size_t>(detail::draw(rng, 1, widest));
            std::vector<VertexId> shuffled = pool;
            for (std::size_t a = 0; a < size; ++a)
                std::swap(shuffled[a], shuffled[a + detail::draw(rng, 0, shuffled.size() - a - 1)]);
            ParentSet parents(std::vector<VertexId>(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(size)));
            if (!taken.insert(parents).second) continue;
            const auto score = static_cast<Score>(detail::draw(rng, static_cast<std::uint64_t>(p.min_score),
                                                               static_cast<std::uint64_t>(p.max_score)));
            inst.scores.add(v, std::move(parents), score);
        }
    }
    return inst;
}

}  // namespace bnsl
