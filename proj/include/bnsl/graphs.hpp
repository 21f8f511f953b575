#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <queue>
#include <vector>

#include "bnsl/core.hpp"

namespace bnsl {

// ---------------------------------------------------------------------------
// Directed graphs
// ---------------------------------------------------------------------------

struct TopologicalOrder {
    std::vector<VertexId> order;  // complete iff acyclic
    std::vector<VertexId> cycle;  // v0 -> v1 -> ... -> v0, rotated to start at its smallest id

    bool acyclic() const noexcept { return cycle.empty(); }
};

/// Kahn's algorithm, smallest ready id first. On a cyclic input reports one directed cycle.
inline TopologicalOrder topological_order(const ArcSet& arcs) {
    const std::size_t n = arcs.n();
    std::vector<std::vector<VertexId>> children(n), parents(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const Arc& a : arcs) {
        children[static_cast<std::size_t>(a.from)].push_back(a.to);
        parents[static_cast<std::size_t>(a.to)].push_back(a.from);
        ++indegree[static_cast<std::size_t>(a.to)];
    }

    TopologicalOrder result;
    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push(static_cast<VertexId>(v));
    std::vector<char> done(n, 0);
    while (!ready.empty()) {
        const VertexId v = ready.top();
        ready.pop();
        done[static_cast<std::size_t>(v)] = 1;
        result.order.push_back(v);
        for (VertexId c : children[static_cast<std::size_t>(v)])
            if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push(c);
    }
    if (result.order.size() == n) return result;

    // Every leftover vertex keeps a leftover parent; walk parents until a repeat.
    VertexId start = 0;
    while (done[static_cast<std::size_t>(start)]) ++start;
    std::vector<int> seen_at(n, -1);
    std::vector<VertexId> walk;
    VertexId cur = start;
    while (seen_at[static_cast<std::size_t>(cur)] < 0) {
        seen_at[static_cast<std::size_t>(cur)] = static_cast<int>(walk.size());
        walk.push_back(cur);
        VertexId next = -1;
        for (VertexId p : parents[static_cast<std::size_t>(cur)])
            if (!done[static_cast<std::size_t>(p)] && (next < 0 || p < next)) next = p;
        cur = next;
    }
    std::vector<VertexId> cycle(walk.begin() + seen_at[static_cast<std::size_t>(cur)], walk.end());
    std::reverse(cycle.begin(), cycle.end());  // the walk followed arcs backwards
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    result.cycle = std::move(cycle);
    return result;
}

inline bool is_dag(const ArcSet& arcs) { return topological_order(arcs).acyclic(); }

// ---------------------------------------------------------------------------
// Undirected graphs
// ---------------------------------------------------------------------------

struct Edge {
    VertexId u = 0;  // u < v
    VertexId v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
    friend bool operator==(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on 0..n-1 with sorted adjacency lists.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(std::size_t n) : adjacency_(n) {}

    UndirectedGraph(std::size_t n, const std::vector<Edge>& edges) : adjacency_(n) {
        for (const Edge& e : edges) add_edge(e.u, e.v);
    }

    std::size_t n() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    bool has_edge(VertexId a, VertexId b) const {
        const auto& nb = neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    bool add_edge(VertexId a, VertexId b) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n() || static_cast<std::size_t>(b) >= n())
            throw ArgumentError("edge endpoint out of range");
        if (a == b) throw ArgumentError("self-loop edge");
        const Edge e = make_edge(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it != edges_.end() && *it == e) return false;
        edges_.insert(it, e);
        insert_sorted(adjacency_[static_cast<std::size_t>(a)], b);
        insert_sorted(adjacency_[static_cast<std::size_t>(b)], a);
        return true;
    }

    /// Graph with every vertex of `removed` isolated (ids are kept).
    UndirectedGraph without_vertices(const std::vector<VertexId>& removed) const {
        std::vector<char> gone(n(), 0);
        for (VertexId v : removed) gone[static_cast<std::size_t>(v)] = 1;
        UndirectedGraph g(n());
        for (const Edge& e : edges_)
            if (!gone[static_cast<std::size_t>(e.u)] && !gone[static_cast<std::size_t>(e.v)]) g.add_edge(e.u, e.v);
        return g;
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& nb : adjacency_) d = std::max(d, nb.size());
        return d;
    }

    /// Component label per vertex, labels 0..c-1 in order of smallest member.
    std::vector<int> components() const {
        std::vector<int> label(n(), -1);
        int next = 0;
        for (std::size_t s = 0; s < n(); ++s) {
            if (label[s] >= 0) continue;
            std::vector<VertexId> stack{static_cast<VertexId>(s)};
            label[s] = next;
            while (!stack.empty()) {
                const VertexId v = stack.back();
                stack.pop_back();
                for (VertexId w : neighbors(v))
                    if (label[static_cast<std::size_t>(w)] < 0) {
                        label[static_cast<std::size_t>(w)] = next;
                        stack.push_back(w);
                    }
            }
            ++next;
        }
        return label;
    }

    std::size_t component_count() const {
        const auto label = components();
        return label.empty() ? 0 : static_cast<std::size_t>(*std::max_element(label.begin(), label.end()) + 1);
    }

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    static void insert_sorted(std::vector<VertexId>& list, VertexId x) {
        list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    }

    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Moralization
// ---------------------------------------------------------------------------

enum class EdgeKind { direct, moral };

struct MoralGraph {
    UndirectedGraph graph;
    std::vector<EdgeKind> kinds;  // parallel to graph.edges()

    std::size_t moral_edge_count() const {
        return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), EdgeKind::moral));
    }

    EdgeKind kind(Edge e) const {
        const auto& edges = graph.edges();
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) throw ArgumentError("edge not present in moral graph");
        return kinds[static_cast<std::size_t>(it - edges.begin())];
    }
};

/// Mo(D): underlying undirected arcs plus an edge between every two parents of a common
/// child. An edge that is both an arc and a co-parent pair is tagged direct.
inline MoralGraph moralize(const ArcSet& dag) {
    if (!is_dag(dag)) throw PreconditionError("moralize requires an acyclic arc set");
    MoralGraph out{UndirectedGraph(dag.n()), {}};
    for (const Arc& a : dag) out.graph.add_edge(a.from, a.to);
    for (const ParentSet& parents : dag.parent_sets()) {
        const auto& m = parents.members();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j) out.graph.add_edge(m[i], m[j]);
    }
    out.kinds.reserve(out.graph.edge_count());
    for (const Edge& e : out.graph.edges()) {
        const bool direct = dag.contains({e.u, e.v}) || dag.contains({e.v, e.u});
        out.kinds.push_back(direct ? EdgeKind::direct : EdgeKind::moral);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dissociation sets
// ---------------------------------------------------------------------------

namespace detail {

inline bool dissociation_branch(const UndirectedGraph& g, std::vector<char>& removed, std::int64_t budget,
                                std::vector<VertexId>& chosen) {
    // Lowest-id vertex with two surviving neighbours, and its two lowest-id surviving neighbours.
    for (std::size_t vi = 0; vi < g.n(); ++vi) {
        if (removed[vi]) continue;
        VertexId first = -1, second = -1;
        for (VertexId w : g.neighbors(static_cast<VertexId>(vi))) {
            if (removed[static_cast<std::size_t>(w)]) continue;
            if (first < 0) {
                first = w;
            } else {
                second = w;
                break;
            }
        }
        if (second < 0) continue;
        if (budget == 0) return false;
        for (VertexId pick : {first, static_cast<VertexId>(vi), second}) {
            removed[static_cast<std::size_t>(pick)] = 1;
            chosen.push_back(pick);
            if (dissociation_branch(g, removed, budget - 1, chosen)) return true;
            chosen.pop_back();
            removed[static_cast<std::size_t>(pick)] = 0;
        }
        return false;
    }
    return true;
}

}  // namespace detail

/// Some S with |S| <= k such that G - S has maximum degree at most one, if one exists.
/// Bounded search tree: every P3 u-v-w forces one of its three vertices into S.
inline std::optional<std::vector<VertexId>> dissociation_set_at_most(const UndirectedGraph& g, std::int64_t k) {
    if (k < 0) throw ArgumentError("budget must be nonnegative");
    std::vector<char> removed(g.n(), 0);
    std::vector<VertexId> chosen;
    if (!detail::dissociation_branch(g, removed, k, chosen)) return std::nullopt;
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

inline bool is_dissociation_set(const UndirectedGraph& g, const std::vector<VertexId>& s) {
    return g.without_vertices(s).max_degree() <= 1;
}

// ---------------------------------------------------------------------------
// Graph classes
// ---------------------------------------------------------------------------

enum class GraphClass { pi0, pi1, pi2, pi3coc, forest };
enum class Deletion { vertex, edge };

struct ClassSpec {
    GraphClass cls = GraphClass::pi1;
    Deletion mode = Deletion::vertex;
    std::int64_t budget = 0;
};

struct ClassCheck {
    bool member = false;
    std::vector<VertexId> deleted_vertices;  // vertex-deletion witness
    std::vector<Edge> deleted_edges;         // edge-deletion witness
};

/// Membership of G in the class itself (no deletions).
inline bool in_base_class(const UndirectedGraph& g, GraphClass cls) {
    switch (cls) {
        case GraphClass::pi0: return g.edge_count() == 0;
        case GraphClass::pi1: return g.max_degree() <= 1;
        case GraphClass::pi2: return g.max_degree() <= 2;
        case GraphClass::pi3coc: {
            const auto label = g.components();
            std::vector<int> size(g.n(), 0);
            for (int l : label) ++size[static_cast<std::size_t>(l)];
            return std::all_of(size.begin(), size.end(), [](int s) { return s <= 3; });
        }
        case GraphClass::forest: return g.edge_count() + g.component_count() == g.n();
    }
    return false;
}

/// Edges outside a DFS spanning forest (smallest ids first); a minimum feedback edge set.
inline std::vector<Edge> spanning_forest_complement(const UndirectedGraph& g) {
    std::vector<char> seen(g.n(), 0);
    std::vector<Edge> tree;
    for (std::size_t s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::vector<VertexId> stack{static_cast<VertexId>(s)};
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(v))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    tree.push_back(make_edge(v, w));
                    stack.push_back(w);
                }
        }
    }
    std::sort(tree.begin(), tree.end());
    std::vector<Edge> rest;
    std::set_difference(g.edges().begin(), g.edges().end(), tree.begin(), tree.end(), std::back_inserter(rest));
    return rest;
}

/// Decides G ∈ Π + k·mode for the supported combinations:
///   budget 0, any class and mode;  Pi0 + ke;  Pi1 + kv;  PiForest + ke.
/// Anything else raises UnsupportedError.
inline ClassCheck check_class(const UndirectedGraph& g, const ClassSpec& spec) {
    if (spec.budget < 0) throw ArgumentError("class budget must be nonnegative");
    ClassCheck out;
    if (spec.budget == 0) {
        out.member = in_base_class(g, spec.cls);
        return out;
    }
    if (spec.cls == GraphClass::pi0 && spec.mode == Deletion::edge) {
        out.member = static_cast<std::int64_t>(g.edge_count()) <= spec.budget;
        if (out.member) out.deleted_edges = g.edges();
        return out;
    }
    if (spec.cls == GraphClass::pi1 && spec.mode == Deletion::vertex) {
        if (auto s = dissociation_set_at_most(g, spec.budget)) {
            out.member = true;
            out.deleted_vertices = std::move(*s);
        }
        return out;
    }
    if (spec.cls == GraphClass::forest && spec.mode == Deletion::edge) {
        const auto feedback = static_cast<std::int64_t>(g.edge_count() + g.component_count()) -
                              static_cast<std::int64_t>(g.n());
        out.member = feedback <= spec.budget;
        if (out.member) out.deleted_edges = spanning_forest_complement(g);
        return out;
    }
    throw UnsupportedError("no exact checker for this class, deletion mode and nonzero budget");
}

}  // namespace bnsl
