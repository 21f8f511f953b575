#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bnsl {

using VertexId = int;
using Score = std::int64_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed argument (bad vertex id, overlapping sets, size-guard breach on inputs).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Enumeration would exceed a hard size guard.
class SizeError : public Error {
public:
    using Error::Error;
};

/// The requested (class, mode, budget) combination or structure is not handled.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// ---------------------------------------------------------------------------
// ParentSet: sorted, duplicate-free member list
// ---------------------------------------------------------------------------

class ParentSet {
public:
    ParentSet() = default;

    ParentSet(std::initializer_list<VertexId> members) : ParentSet(std::vector<VertexId>(members)) {}

    explicit ParentSet(std::vector<VertexId> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw ArgumentError("parent set contains a duplicate member");
        if (!members_.empty() && members_.front() < 0)
            throw ArgumentError("parent set contains a negative vertex id");
    }

    const std::vector<VertexId>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(VertexId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

    friend auto operator<=>(const ParentSet&, const ParentSet&) = default;
    friend bool operator==(const ParentSet&, const ParentSet&) = default;

private:
    std::vector<VertexId> members_;
};

/// Merge-scan test for sorted ranges: is every element of `sub` in `super`?
inline bool sorted_includes(std::span<const VertexId> super, std::span<const VertexId> sub) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// ---------------------------------------------------------------------------
// Arcs
// ---------------------------------------------------------------------------

struct Arc {
    VertexId from = 0;
    VertexId to = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed arc set over vertices 0..n-1. No self-loops, no duplicate ordered pairs;
/// arcs are kept sorted by (from, to).
class ArcSet {
public:
    ArcSet() = default;
    explicit ArcSet(std::size_t n) : n_(n) {}

    ArcSet(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
        for (const Arc& a : arcs_) check(a);
        std::sort(arcs_.begin(), arcs_.end());
        arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return arcs_.size(); }
    bool empty() const noexcept { return arcs_.empty(); }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    auto begin() const noexcept { return arcs_.begin(); }
    auto end() const noexcept { return arcs_.end(); }

    bool contains(Arc a) const { return std::binary_search(arcs_.begin(), arcs_.end(), a); }

    bool insert(Arc a) {
        check(a);
        auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
        if (it != arcs_.end() && *it == a) return false;
        arcs_.insert(it, a);
        return true;
    }

    /// Parent sets P^A_v for every vertex.
    std::vector<ParentSet> parent_sets() const {
        std::vector<std::vector<VertexId>> members(n_);
        for (const Arc& a : arcs_) members[static_cast<std::size_t>(a.to)].push_back(a.from);
        std::vector<ParentSet> out;
        out.reserve(n_);
        for (auto& m : members) out.emplace_back(std::move(m));
        return out;
    }

    friend bool operator==(const ArcSet&, const ArcSet&) = default;

private:
    void check(Arc a) const {
        if (a.from < 0 || a.to < 0 || static_cast<std::size_t>(a.from) >= n_ ||
            static_cast<std::size_t>(a.to) >= n_)
            throw ArgumentError("arc endpoint out of range");
        if (a.from == a.to) throw ArgumentError("self-loop arc");
    }

    std::size_t n_ = 0;
    std::vector<Arc> arcs_;
};

/// Lexicographic comparison of sorted arc lists; the tie-break used by every solver.
inline bool arcs_less(const ArcSet& a, const ArcSet& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Solver output
// ---------------------------------------------------------------------------

struct Telemetry {
    std::uint64_t candidates = 0;   // structures examined (tuples, assignments, subsets)
    std::uint64_t completions = 0;  // matching completions (pi1v only)
    std::uint64_t pruned = 0;       // branches cut by the score bound
    std::uint64_t trials = 0;       // colorings tried (color coding only)
    std::uint64_t successes = 0;    // trials whose colored optimum reached t
};

struct SolveResult {
    Score score = 0;
    ArcSet arcs;
    bool yes = false;

    // Variant-specific constraint witnesses.
    std::vector<VertexId> dissociation_set;
    std::vector<int> coloring;  // 0-based color per vertex
    std::size_t moral_graph_edges = 0;  // |E(Mo(D))|, direct and moral edges together

    Telemetry telemetry;
};

}  // namespace bnsl
