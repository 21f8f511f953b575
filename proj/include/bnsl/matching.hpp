#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bnsl/core.hpp"
#include "bnsl/graphs.hpp"

namespace bnsl {

struct WeightedEdge {
    VertexId u = 0;
    VertexId v = 0;
    Score weight = 0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Simple undirected graph with nonnegative integer edge weights.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t n) : n_(n) {}

    std::size_t n() const noexcept { return n_; }
    const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }

    void add_edge(VertexId a, VertexId b, Score weight) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n_ || static_cast<std::size_t>(b) >= n_)
            throw ArgumentError("edge endpoint out of range");
        if (a == b) throw ArgumentError("self-loop edge");
        if (weight < 0) throw ArgumentError("negative edge weight");
        const Edge e = make_edge(a, b);
        for (const auto& x : edges_)
            if (x.u == e.u && x.v == e.v) throw ArgumentError("parallel edge");
        edges_.push_back({e.u, e.v, weight});
    }

private:
    std::size_t n_ = 0;
    std::vector<WeightedEdge> edges_;
};

struct Matching {
    std::vector<Edge> edges;  // sorted
    Score total = 0;
};

namespace detail {

// Edmonds' blossom algorithm with primal-dual updates, O(n^3); a line-by-line port of
// Joris van Rantwijk's reference implementation (not forced to maximum cardinality).
// Weights are doubled so every dual stays an even integer.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const WeightedGraph& g) : nvertex_(static_cast<int>(g.n())) {
        for (const auto& e : g.edges()) edges_.push_back({e.u, e.v, 2 * e.weight});
        nedge_ = static_cast<int>(edges_.size());
    }

    std::vector<int> run() {
        const int nv = nvertex_;
        mate_.assign(static_cast<std::size_t>(nv), -1);
        if (nedge_ == 0) return mate_;
        Score maxweight = 0;
        for (const auto& e : edges_) maxweight = std::max(maxweight, e.weight);
        endpoint_.resize(static_cast<std::size_t>(2 * nedge_));
        for (int p = 0; p < 2 * nedge_; ++p) endpoint_[u(p)] = p % 2 == 0 ? edges_[u(p / 2)].u : edges_[u(p / 2)].v;
        neighbend_.assign(u(nv), {});
        for (int k = 0; k < nedge_; ++k) {
            neighbend_[u(edges_[u(k)].u)].push_back(2 * k + 1);
            neighbend_[u(edges_[u(k)].v)].push_back(2 * k);
        }
        label_.assign(u(2 * nv), 0);
        labelend_.assign(u(2 * nv), -1);
        inblossom_.resize(u(nv));
        for (int i = 0; i < nv; ++i) inblossom_[u(i)] = i;
        blossomparent_.assign(u(2 * nv), -1);
        blossomchilds_.assign(u(2 * nv), {});
        blossombase_.assign(u(2 * nv), -1);
        for (int i = 0; i < nv; ++i) blossombase_[u(i)] = i;
        blossomendps_.assign(u(2 * nv), {});
        bestedge_.assign(u(2 * nv), -1);
        blossombestedges_.assign(u(2 * nv), {});
        has_bestedges_.assign(u(2 * nv), 0);
        unusedblossoms_.clear();
        for (int i = nv; i < 2 * nv; ++i) unusedblossoms_.push_back(i);
        dualvar_.assign(u(2 * nv), 0);
        for (int i = 0; i < nv; ++i) dualvar_[u(i)] = maxweight;
        allowedge_.assign(u(nedge_), 0);

        for (int stage = 0; stage < nv; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = nv; b < 2 * nv; ++b) {
                blossombestedges_[u(b)].clear();
                has_bestedges_[u(b)] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < nv; ++v)
                if (mate_[u(v)] == -1 && label_[u(inblossom_[u(v)])] == 0) assign_label(v, 1, -1);

            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[u(v)]) {
                        const int k = p / 2;
                        const int w = endpoint_[u(p)];
                        if (inblossom_[u(v)] == inblossom_[u(w)]) continue;
                        Score kslack = 0;
                        if (!allowedge_[u(k)]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[u(k)] = 1;
                        }
                        if (allowedge_[u(k)]) {
                            if (label_[u(inblossom_[u(w)])] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[u(inblossom_[u(w)])] == 1) {
                                const int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[u(w)] == 0) {
                                label_[u(w)] = 2;
                                labelend_[u(w)] = p ^ 1;
                            }
                        } else if (label_[u(inblossom_[u(w)])] == 1) {
                            const int b = inblossom_[u(v)];
                            if (bestedge_[u(b)] == -1 || kslack < slack(bestedge_[u(b)])) bestedge_[u(b)] = k;
                        } else if (label_[u(w)] == 0) {
                            if (bestedge_[u(w)] == -1 || kslack < slack(bestedge_[u(w)])) bestedge_[u(w)] = k;
                        }
                    }
                }
                if (augmented) break;

                int deltatype = 1;
                Score delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv);
                int deltaedge = -1, deltablossom = -1;
                for (int v = 0; v < nv; ++v)
                    if (label_[u(inblossom_[u(v)])] == 0 && bestedge_[u(v)] != -1) {
                        const Score d = slack(bestedge_[u(v)]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[u(v)];
                        }
                    }
                for (int b = 0; b < 2 * nv; ++b)
                    if (blossomparent_[u(b)] == -1 && label_[u(b)] == 1 && bestedge_[u(b)] != -1) {
                        const Score d = slack(bestedge_[u(b)]) / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[u(b)];
                        }
                    }
                for (int b = nv; b < 2 * nv; ++b)
                    if (blossombase_[u(b)] >= 0 && blossomparent_[u(b)] == -1 && label_[u(b)] == 2 &&
                        dualvar_[u(b)] < delta) {
                        delta = dualvar_[u(b)];
                        deltatype = 4;
                        deltablossom = b;
                    }

                for (int v = 0; v < nv; ++v) {
                    const int l = label_[u(inblossom_[u(v)])];
                    if (l == 1) dualvar_[u(v)] -= delta;
                    else if (l == 2) dualvar_[u(v)] += delta;
                }
                for (int b = nv; b < 2 * nv; ++b)
                    if (blossombase_[u(b)] >= 0 && blossomparent_[u(b)] == -1) {
                        if (label_[u(b)] == 1) dualvar_[u(b)] += delta;
                        else if (label_[u(b)] == 2) dualvar_[u(b)] -= delta;
                    }

                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[u(deltaedge)] = 1;
                    int i = edges_[u(deltaedge)].u, j = edges_[u(deltaedge)].v;
                    if (label_[u(inblossom_[u(i)])] == 0) std::swap(i, j);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[u(deltaedge)] = 1;
                    queue_.push_back(edges_[u(deltaedge)].u);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (int b = nv; b < 2 * nv; ++b)
                if (blossomparent_[u(b)] == -1 && blossombase_[u(b)] >= 0 && label_[u(b)] == 1 &&
                    dualvar_[u(b)] == 0)
                    expand_blossom(b, true);
        }

        for (int v = 0; v < nv; ++v)
            if (mate_[u(v)] >= 0) mate_[u(v)] = endpoint_[u(mate_[u(v)])];
        return mate_;
    }

private:
    struct E {
        int u, v;
        Score weight;
    };

    static std::size_t u(int i) { return static_cast<std::size_t>(i); }

    // Python-style index into a list, negative values counting from the back.
    static int& wrap(std::vector<int>& list, int i) {
        const int n = static_cast<int>(list.size());
        return list[u(((i % n) + n) % n)];
    }

    static int index_of(const std::vector<int>& list, int x) {
        return static_cast<int>(std::find(list.begin(), list.end(), x) - list.begin());
    }

    Score slack(int k) const {
        const E& e = edges_[u(k)];
        return dualvar_[u(e.u)] + dualvar_[u(e.v)] - 2 * e.weight;
    }

    void leaves(int b, std::vector<int>& out) const {
        if (b < nvertex_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[u(b)]) leaves(t, out);
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[u(w)];
        label_[u(w)] = label_[u(b)] = t;
        labelend_[u(w)] = labelend_[u(b)] = p;
        bestedge_[u(w)] = bestedge_[u(b)] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            const int base = blossombase_[u(b)];
            assign_label(endpoint_[u(mate_[u(base)])], 1, mate_[u(base)] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[u(v)];
            if (label_[u(b)] & 4) {
                base = blossombase_[u(b)];
                break;
            }
            path.push_back(b);
            label_[u(b)] = 5;
            if (labelend_[u(b)] == -1) {
                v = -1;
            } else {
                v = endpoint_[u(labelend_[u(b)])];
                b = inblossom_[u(v)];
                v = endpoint_[u(labelend_[u(b)])];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[u(b)] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edges_[u(k)].u, w = edges_[u(k)].v;
        const int bb = inblossom_[u(base)];
        int bv = inblossom_[u(v)];
        int bw = inblossom_[u(w)];
        const int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[u(b)] = base;
        blossomparent_[u(b)] = -1;
        blossomparent_[u(bb)] = b;
        std::vector<int> path, endps;
        while (bv != bb) {
            blossomparent_[u(bv)] = b;
            path.push_back(bv);
            endps.push_back(labelend_[u(bv)]);
            v = endpoint_[u(labelend_[u(bv)])];
            bv = inblossom_[u(v)];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[u(bw)] = b;
            path.push_back(bw);
            endps.push_back(labelend_[u(bw)] ^ 1);
            w = endpoint_[u(labelend_[u(bw)])];
            bw = inblossom_[u(w)];
        }
        blossomchilds_[u(b)] = path;
        blossomendps_[u(b)] = endps;
        label_[u(b)] = 1;
        labelend_[u(b)] = labelend_[u(bb)];
        dualvar_[u(b)] = 0;
        for (int x : leaves(b)) {
            if (label_[u(inblossom_[u(x)])] == 2) queue_.push_back(x);
            inblossom_[u(x)] = b;
        }

        std::vector<int> bestedgeto(u(2 * nvertex_), -1);
        for (int child : path) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges_[u(child)]) {
                for (int x : leaves(child)) {
                    std::vector<int> list;
                    for (int p : neighbend_[u(x)]) list.push_back(p / 2);
                    nblists.push_back(std::move(list));
                }
            } else {
                nblists.push_back(blossombestedges_[u(child)]);
            }
            for (const auto& nblist : nblists)
                for (int ke : nblist) {
                    int i = edges_[u(ke)].u, j = edges_[u(ke)].v;
                    if (inblossom_[u(j)] == b) std::swap(i, j);
                    const int bj = inblossom_[u(j)];
                    if (bj != b && label_[u(bj)] == 1 &&
                        (bestedgeto[u(bj)] == -1 || slack(ke) < slack(bestedgeto[u(bj)])))
                        bestedgeto[u(bj)] = ke;
                }
            blossombestedges_[u(child)].clear();
            has_bestedges_[u(child)] = 0;
            bestedge_[u(child)] = -1;
        }
        auto& best = blossombestedges_[u(b)];
        best.clear();
        for (int ke : bestedgeto)
            if (ke != -1) best.push_back(ke);
        has_bestedges_[u(b)] = 1;
        bestedge_[u(b)] = -1;
        for (int ke : best)
            if (bestedge_[u(b)] == -1 || slack(ke) < slack(bestedge_[u(b)])) bestedge_[u(b)] = ke;
    }

    void expand_blossom(int b, bool endstage) {
        const std::vector<int> childs = blossomchilds_[u(b)];
        for (int s : childs) {
            blossomparent_[u(s)] = -1;
            if (s < nvertex_) {
                inblossom_[u(s)] = s;
            } else if (endstage && dualvar_[u(s)] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int x : leaves(s)) inblossom_[u(x)] = s;
            }
        }
        if (!endstage && label_[u(b)] == 2) {
            auto& ch = blossomchilds_[u(b)];
            auto& ep = blossomendps_[u(b)];
            const int entrychild = inblossom_[u(endpoint_[u(labelend_[u(b)] ^ 1)])];
            int j = index_of(ch, entrychild);
            int jstep, endptrick;
            if (j & 1) {
                j -= static_cast<int>(ch.size());
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[u(b)];
            while (j != 0) {
                label_[u(endpoint_[u(p ^ 1)])] = 0;
                label_[u(endpoint_[u(wrap(ep, j - endptrick) ^ endptrick ^ 1)])] = 0;
                assign_label(endpoint_[u(p ^ 1)], 2, p);
                allowedge_[u(wrap(ep, j - endptrick) / 2)] = 1;
                j += jstep;
                p = wrap(ep, j - endptrick) ^ endptrick;
                allowedge_[u(p / 2)] = 1;
                j += jstep;
            }
            int bv = wrap(ch, j);
            label_[u(endpoint_[u(p ^ 1)])] = label_[u(bv)] = 2;
            labelend_[u(endpoint_[u(p ^ 1)])] = labelend_[u(bv)] = p;
            bestedge_[u(bv)] = -1;
            j += jstep;
            while (wrap(ch, j) != entrychild) {
                bv = wrap(ch, j);
                if (label_[u(bv)] == 1) {
                    j += jstep;
                    continue;
                }
                int labelled = -1;
                for (int x : leaves(bv))
                    if (label_[u(x)] != 0) {
                        labelled = x;
                        break;
                    }
                if (labelled >= 0) {
                    label_[u(labelled)] = 0;
                    label_[u(endpoint_[u(mate_[u(blossombase_[u(bv)])])])] = 0;
                    assign_label(labelled, 2, labelend_[u(labelled)]);
                }
                j += jstep;
            }
        }
        label_[u(b)] = labelend_[u(b)] = -1;
        blossomchilds_[u(b)].clear();
        blossomendps_[u(b)].clear();
        blossombase_[u(b)] = -1;
        blossombestedges_[u(b)].clear();
        has_bestedges_[u(b)] = 0;
        bestedge_[u(b)] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[u(t)] != b) t = blossomparent_[u(t)];
        if (t >= nvertex_) augment_blossom(t, v);
        auto& ch = blossomchilds_[u(b)];
        auto& ep = blossomendps_[u(b)];
        const int i = index_of(ch, t);
        int j = i;
        int jstep, endptrick;
        if (i & 1) {
            j -= static_cast<int>(ch.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = wrap(ch, j);
            const int p = wrap(ep, j - endptrick) ^ endptrick;
            if (t >= nvertex_) augment_blossom(t, endpoint_[u(p)]);
            j += jstep;
            t = wrap(ch, j);
            if (t >= nvertex_) augment_blossom(t, endpoint_[u(p ^ 1)]);
            mate_[u(endpoint_[u(p)])] = p ^ 1;
            mate_[u(endpoint_[u(p ^ 1)])] = p;
        }
        std::rotate(ch.begin(), ch.begin() + i, ch.end());
        std::rotate(ep.begin(), ep.begin() + i, ep.end());
        blossombase_[u(b)] = blossombase_[u(ch.front())];
    }

    void augment_matching(int k) {
        const int v = edges_[u(k)].u, w = edges_[u(k)].v;
        for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
            while (true) {
                const int bs = inblossom_[u(s)];
                if (bs >= nvertex_) augment_blossom(bs, s);
                mate_[u(s)] = p;
                if (labelend_[u(bs)] == -1) break;
                const int t = endpoint_[u(labelend_[u(bs)])];
                const int bt = inblossom_[u(t)];
                s = endpoint_[u(labelend_[u(bt)])];
                const int j = endpoint_[u(labelend_[u(bt)] ^ 1)];
                if (bt >= nvertex_) augment_blossom(bt, j);
                mate_[u(j)] = labelend_[u(bt)];
                p = labelend_[u(bt)] ^ 1;
            }
        }
    }

    int nvertex_ = 0;
    int nedge_ = 0;
    std::vector<E> edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_;
    std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<Score> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

inline Matching collect(const WeightedGraph& g, const std::vector<int>& mate) {
    Matching out;
    for (const auto& e : g.edges())
        if (mate[static_cast<std::size_t>(e.u)] == e.v) {
            out.edges.push_back({e.u, e.v});
            out.total += e.weight;
        }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

}  // namespace detail

/// Maximum weight matching (not necessarily of maximum cardinality).
inline Matching max_weight_matching(const WeightedGraph& g) {
    detail::BlossomMatcher matcher(g);
    return detail::collect(g, matcher.run());
}

/// Exhaustive reference matcher for tiny graphs (at most 24 edges).
inline Matching brute_force_matching(const WeightedGraph& g) {
    constexpr std::size_t kMaxEdges = 24;
    const auto& edges = g.edges();
    if (edges.size() > kMaxEdges) throw ArgumentError("brute-force matching is limited to 24 edges");
    std::vector<char> used(g.n(), 0);
    std::vector<std::size_t> chosen, best_chosen;
    Score best = 0;
    auto rec = [&](auto&& self, std::size_t i, Score sum) -> void {
        if (i == edges.size()) {
            if (sum > best) {
                best = sum;
                best_chosen = chosen;
            }
            return;
        }
        self(self, i + 1, sum);
        const auto& e = edges[i];
        if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) return;
        used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
        chosen.push_back(i);
        self(self, i + 1, sum + e.weight);
        chosen.pop_back();
        used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 0;
    };
    rec(rec, 0, 0);
    Matching out;
    out.total = best;
    for (std::size_t i : best_chosen) out.edges.push_back({edges[i].u, edges[i].v});
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

}  // namespace bnsl
