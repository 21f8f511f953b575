#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bnsl/core.hpp"
#include "bnsl/generators.hpp"
#include "bnsl/graphs.hpp"
#include "bnsl/scores.hpp"

namespace bnsl {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace detail {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

/// Non-blank lines split on whitespace, with 1-based line numbers.
inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::istringstream fields{std::string(text.substr(pos, end - pos))};
        Line line{number, {}};
        for (std::string tok; fields >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
        pos = end + 1;
    }
    return out;
}

inline std::int64_t parse_int(const std::string& tok, std::size_t line, const char* what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec == std::errc::result_out_of_range) throw ParseError(line, std::string(what) + " overflows 64 bits: '" + tok + "'");
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("expected integer ") + what + ", got '" + tok + "'");
    return value;
}

inline std::int64_t parse_count(const std::string& tok, std::size_t line, const char* what) {
    const auto v = parse_int(tok, line, what);
    if (v < 0) throw ParseError(line, std::string(what) + " must be nonnegative");
    return v;
}

inline bool looks_decimal(const std::string& tok) {
    return tok.find_first_of(".eE") != std::string::npos;
}

/// round(tok · 10^digits), half away from zero, computed exactly on the decimal digits.
inline std::int64_t scale_decimal(const std::string& tok, int digits, std::size_t line) {
    std::size_t i = 0;
    bool negative = false;
    if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) negative = tok[i++] == '-';
    std::string mantissa;
    int exponent = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < tok.size(); ++i) {
        const char c = tok[i];
        if (c >= '0' && c <= '9') {
            mantissa += c;
            seen_digit = true;
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw ParseError(line, "malformed score '" + tok + "'");
    if (i < tok.size()) {
        if (tok[i] != 'e' && tok[i] != 'E') throw ParseError(line, "malformed score '" + tok + "'");
        const std::string exp_tok = tok.substr(i + 1);
        int e = 0;
        auto [ptr, ec] = std::from_chars(exp_tok.data() + (exp_tok.starts_with('+') ? 1 : 0),
                                         exp_tok.data() + exp_tok.size(), e);
        if (ec != std::errc() || ptr != exp_tok.data() + exp_tok.size() || exp_tok.empty())
            throw ParseError(line, "malformed exponent in '" + tok + "'");
        exponent += e;
    }
    exponent += digits;
    // value = mantissa · 10^exponent
    constexpr __int128 kLimit = static_cast<__int128>(INT64_MAX);
    __int128 value = 0;
    const auto overflow = [&] { return ParseError(line, "scaled score overflows 64 bits: '" + tok + "'"); };
    const long keep = static_cast<long>(mantissa.size()) + std::min(exponent, 0);
    for (long d = 0; d < static_cast<long>(mantissa.size()) && d < keep; ++d) {
        value = value * 10 + (mantissa[static_cast<std::size_t>(d)] - '0');
        if (value > kLimit) throw overflow();
    }
    for (int e = 0; e < exponent; ++e) {
        value *= 10;
        if (value > kLimit) throw overflow();
    }
    if (exponent < 0 && keep >= 0 && keep < static_cast<long>(mantissa.size()) &&
        mantissa[static_cast<std::size_t>(keep)] >= '5') {
        ++value;
        if (value > kLimit) throw overflow();
    }
    return static_cast<std::int64_t>(negative ? -value : value);
}

}  // namespace detail

struct ScoreFileOptions {
    std::optional<int> scale_digits;  // accept decimal / negative scores, see parse_score_text
};

struct ParsedScores {
    Instance instance;         // t = k = 0
    std::vector<Score> shift;  // per-vertex shift added after scaling (all zero without scaling)
};

/// Parses the score file format:
///   n
///   name r            (n times)
///   score p p1 .. pp  (r times per vertex; parents by name, forward references allowed)
/// Integer scores only, unless scale_digits is set: then every score is multiplied by
/// 10^digits, rounded half away from zero, and each vertex is shifted by -min over its
/// listed scores when that minimum is negative. Unlisted parent sets score 0 afterwards.
inline ParsedScores parse_score_text(std::string_view text, const ScoreFileOptions& options = {}) {
    const auto lines = detail::tokenize(text);
    std::size_t next = 0;
    auto take = [&](const char* expectation) -> const detail::Line& {
        if (next >= lines.size()) {
            const std::size_t at = lines.empty() ? 1 : lines.back().number + 1;
            throw ParseError(at, std::string("unexpected end of file, expected ") + expectation);
        }
        return lines[next++];
    };

    const auto& first = take("vertex count");
    if (first.tokens.size() != 1) throw ParseError(first.number, "first line must hold only the vertex count");
    const auto n = static_cast<std::size_t>(detail::parse_count(first.tokens[0], first.number, "vertex count"));

    struct RawEntry {
        std::size_t line;
        std::int64_t score;
        std::vector<std::string> parents;
    };
    std::vector<std::string> names;
    std::map<std::string, VertexId> ids;
    std::vector<std::vector<RawEntry>> raw(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& header = take("vertex header 'name r'");
        if (header.tokens.size() != 2) throw ParseError(header.number, "vertex header must be 'name r'");
        const std::string& name = header.tokens[0];
        if (!ids.emplace(name, static_cast<VertexId>(v)).second)
            throw ParseError(header.number, "duplicate vertex name '" + name + "'");
        names.push_back(name);
        const auto r = detail::parse_count(header.tokens[1], header.number, "entry count");
        for (std::int64_t j = 0; j < r; ++j) {
            const auto& entry = take("score line 'score p parents...'");
            if (entry.tokens.size() < 2) throw ParseError(entry.number, "score line needs 'score p parents...'");
            const std::string& tok = entry.tokens[0];
            std::int64_t score = 0;
            if (options.scale_digits) {
                score = detail::scale_decimal(tok, *options.scale_digits, entry.number);
            } else {
                if (detail::looks_decimal(tok))
                    throw ParseError(entry.number, "decimal score '" + tok + "' needs --scale");
                score = detail::parse_int(tok, entry.number, "score");
                if (score < 0) throw ParseError(entry.number, "negative score '" + tok + "' needs --scale");
            }
            const auto p = detail::parse_count(entry.tokens[1], entry.number, "parent count");
            if (static_cast<std::size_t>(p) != entry.tokens.size() - 2)
                throw ParseError(entry.number, "parent count " + std::to_string(p) + " does not match " +
                                                   std::to_string(entry.tokens.size() - 2) + " listed parents");
            raw[v].push_back({entry.number, score, {entry.tokens.begin() + 2, entry.tokens.end()}});
        }
    }
    if (next < lines.size()) throw ParseError(lines[next].number, "unexpected content after the last vertex");

    ParsedScores out{make_instance(names), std::vector<Score>(n, 0)};
    for (std::size_t v = 0; v < n; ++v) {
        Score shift = 0;
        if (options.scale_digits) {
            for (const auto& e : raw[v]) shift = std::max(shift, -e.score);
            out.shift[v] = shift;
        }
        std::set<ParentSet> seen;
        for (const auto& e : raw[v]) {
            std::vector<VertexId> members;
            for (const auto& pname : e.parents) {
                auto it = ids.find(pname);
                if (it == ids.end()) throw ParseError(e.line, "unknown parent '" + pname + "'");
                if (it->second == static_cast<VertexId>(v))
                    throw ParseError(e.line, "vertex '" + names[v] + "' listed as its own parent");
                members.push_back(it->second);
            }
            std::vector<VertexId> sorted = members;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw ParseError(e.line, "parent listed twice");
            ParentSet parents(std::move(members));
            if (!seen.insert(parents).second) throw ParseError(e.line, "duplicate parent set for '" + names[v] + "'");
            if (e.score > INT64_MAX - shift) throw ParseError(e.line, "shifted score overflows 64 bits");
            out.instance.scores.add(static_cast<VertexId>(v), std::move(parents), e.score + shift);
        }
    }
    return out;
}

inline ParsedScores parse_score_file(const std::string& path, const ScoreFileOptions& options = {}) {
    return parse_score_text(read_text_file(path), options);
}

/// Writes the instance's tables in the score file format: per vertex the empty set first,
/// then stored entries in insertion order.
inline std::string write_score_text(const Instance& inst) {
    validate(inst);
    std::ostringstream out;
    out << inst.n() << '\n';
    for (std::size_t i = 0; i < inst.n(); ++i) {
        const auto v = static_cast<VertexId>(i);
        const auto& name = inst.names[i];
        if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos)
            throw ArgumentError("vertex name '" + name + "' cannot be written as a single token");
        const auto entries = inst.scores.entries(v);
        out << name << ' ' << entries.size() + 1 << '\n';
        out << inst.scores.empty_score(v) << " 0\n";
        for (const auto& e : entries) {
            out << e.score << ' ' << e.parents.size();
            for (VertexId p : e.parents) out << ' ' << inst.names[static_cast<std::size_t>(p)];
            out << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Graph files: "n m", then m lines "u v" (0-based), optionally "colors c1 .. cn" (1-based classes)
// ---------------------------------------------------------------------------

struct GraphInput {
    UndirectedGraph graph;
    std::optional<std::vector<int>> colors;  // 0-based classes

    ColoredGraph colored() const {
        if (!colors) throw ArgumentError("graph file has no colors line");
        ColoredGraph cg{graph, *colors, 0};
        for (int c : *colors) cg.class_count = std::max(cg.class_count, c + 1);
        validate(cg);
        return cg;
    }
};

inline GraphInput parse_graph_text(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty graph file");
    const auto& head = lines[0];
    if (head.tokens.size() != 2) throw ParseError(head.number, "first line must be 'n m'");
    const auto n = static_cast<std::size_t>(detail::parse_count(head.tokens[0], head.number, "vertex count"));
    const auto m = static_cast<std::size_t>(detail::parse_count(head.tokens[1], head.number, "edge count"));
    GraphInput out{UndirectedGraph(n), std::nullopt};
    std::size_t next = 1;
    for (std::size_t i = 0; i < m; ++i, ++next) {
        if (next >= lines.size()) throw ParseError(lines.back().number + 1, "unexpected end of file, expected an edge");
        const auto& l = lines[next];
        if (l.tokens.size() != 2) throw ParseError(l.number, "edge line must be 'u v'");
        const auto u = detail::parse_count(l.tokens[0], l.number, "endpoint");
        const auto v = detail::parse_count(l.tokens[1], l.number, "endpoint");
        if (static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            throw ParseError(l.number, "endpoint out of range");
        if (u == v) throw ParseError(l.number, "self-loop");
        if (!out.graph.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v)))
            throw ParseError(l.number, "duplicate edge");
    }
    if (next < lines.size()) {
        const auto& l = lines[next++];
        if (l.tokens.empty() || l.tokens[0] != "colors" || l.tokens.size() != n + 1)
            throw ParseError(l.number, "expected 'colors' followed by one class per vertex");
        std::vector<int> colors;
        for (std::size_t i = 1; i < l.tokens.size(); ++i) {
            const auto c = detail::parse_int(l.tokens[i], l.number, "color");
            if (c < 1 || c > static_cast<std::int64_t>(n)) throw ParseError(l.number, "color classes are numbered 1..n");
            colors.push_back(static_cast<int>(c - 1));
        }
        out.colors = std::move(colors);
    }
    if (next < lines.size()) throw ParseError(lines[next].number, "unexpected content after the graph");
    return out;
}

inline GraphInput parse_graph_file(const std::string& path) { return parse_graph_text(read_text_file(path)); }

inline std::string write_graph_text(const UndirectedGraph& g, const std::vector<int>* colors = nullptr) {
    std::ostringstream out;
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    if (colors) {
        out << "colors";
        for (int c : *colors) out << ' ' << c + 1;
        out << '\n';
    }
    return out.str();
}

}  // namespace bnsl
