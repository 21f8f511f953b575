#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bnsl/arc_bounded.hpp"
#include "bnsl/core.hpp"
#include "bnsl/generators.hpp"
#include "bnsl/graphs.hpp"
#include "bnsl/io.hpp"
#include "bnsl/oracle.hpp"
#include "bnsl/pi1v.hpp"
#include "bnsl/scores.hpp"

namespace bnsl {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kExitYes = 0, kExitNo = 1, kExitUsage = 2, kExitInvalid = 3 };

// ---------------------------------------------------------------------------
// Constraints by name: none | arcs | <pi0|pi1|pi2|pi3coc|forest><v|e>
// ---------------------------------------------------------------------------

inline Constraint parse_constraint(const std::string& text, std::int64_t k) {
    if (text == "none") return NoConstraint{};
    if (text == "arcs") return ArcCountConstraint{k};
    if (text.size() >= 2) {
        const std::string cls = text.substr(0, text.size() - 1);
        const char mode = text.back();
        ClassSpec spec;
        spec.budget = k;
        if (mode == 'v') spec.mode = Deletion::vertex;
        else if (mode == 'e') spec.mode = Deletion::edge;
        else throw ArgumentError("unknown constraint '" + text + "'");
        if (cls == "pi0") spec.cls = GraphClass::pi0;
        else if (cls == "pi1") spec.cls = GraphClass::pi1;
        else if (cls == "pi2") spec.cls = GraphClass::pi2;
        else if (cls == "pi3coc") spec.cls = GraphClass::pi3coc;
        else if (cls == "forest") spec.cls = GraphClass::forest;
        else throw ArgumentError("unknown constraint '" + text + "'");
        return MoralClassConstraint{spec};
    }
    throw ArgumentError("unknown constraint '" + text + "'");
}

/// Class membership for verification: the branching checkers where they exist, the
/// exhaustive deletion search otherwise.
inline bool moral_graph_in_class(const ArcSet& dag, const ClassSpec& spec) {
    const auto moral = moralize(dag).graph;
    try {
        return check_class(moral, spec).member;
    } catch (const UnsupportedError&) {
        std::vector<detail::Mask> adj(moral.n(), 0);
        for (const Edge& e : moral.edges()) {
            adj[static_cast<std::size_t>(e.u)] |= detail::bit(e.v);
            adj[static_cast<std::size_t>(e.v)] |= detail::bit(e.u);
        }
        if (moral.n() > 64) throw;
        return detail::MaskClassChecker(std::move(adj), spec).check().has_value();
    }
}

// ---------------------------------------------------------------------------
// Independent verification of a learned network
// ---------------------------------------------------------------------------

struct Claim {
    std::string variant;  // pi1v | ba-dp | ba-cc | pi0e | oracle
    std::string constraint = "none";
    ArcSet arcs;
    std::optional<Score> score;
    std::optional<std::vector<VertexId>> dissociation_set;
    std::optional<Coloring> coloring;
};

struct Verdict {
    bool valid = false;
    Score score = 0;
    std::string reason;  // empty when valid
};

/// Recomputes everything from the instance: acyclicity, the score, and the variant's
/// structural constraint. Never trusts solver state beyond the claimed witnesses.
inline Verdict verify_claim(const Instance& inst, const Claim& claim) {
    Verdict v;
    auto fail = [&](std::string why) {
        v.valid = false;
        v.reason = std::move(why);
        return v;
    };
    if (claim.arcs.n() != inst.n()) return fail("arc set vertex count does not match the instance");
    if (!is_dag(claim.arcs)) return fail("arc set has a directed cycle");
    v.score = total_score(inst, claim.arcs);
    if (claim.score && *claim.score != v.score) return fail("reported score differs from the recomputed score");
    const auto arc_count = static_cast<std::int64_t>(claim.arcs.size());

    if (claim.variant == "pi1v") {
        if (!moral_graph_in_class(claim.arcs, {GraphClass::pi1, Deletion::vertex, inst.k}))
            return fail("moral graph has no dissociation set of size at most k");
        if (claim.dissociation_set) {
            const auto& s = *claim.dissociation_set;
            if (static_cast<std::int64_t>(s.size()) > inst.k || !is_dissociation_set(moralize(claim.arcs).graph, s))
                return fail("reported dissociation set is not valid");
        }
    } else if (claim.variant == "ba-dp" || claim.variant == "ba-cc") {
        if (arc_count > inst.k) return fail("more than k arcs");
        if (claim.coloring && !color_loyal(claim.arcs, *claim.coloring))
            return fail("arc set is not color-loyal for the reported coloring");
    } else if (claim.variant == "pi0e") {
        if (!moral_graph_in_class(claim.arcs, {GraphClass::pi0, Deletion::edge, inst.k}))
            return fail("moral graph has more than k edges");
    } else if (claim.variant == "oracle") {
        const Constraint c = parse_constraint(claim.constraint, inst.k);
        if (std::holds_alternative<ArcCountConstraint>(c) && arc_count > inst.k) return fail("more than k arcs");
        if (const auto* mc = std::get_if<MoralClassConstraint>(&c); mc && !moral_graph_in_class(claim.arcs, mc->spec))
            return fail("moral graph violates the class constraint");
    } else {
        throw ArgumentError("unknown variant '" + claim.variant + "'");
    }
    v.valid = true;
    return v;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct RunReport {
    std::string variant;
    std::string constraint;  // oracle only
    SolveResult result;
    Score t = 0;
    std::int64_t k = 0;
    bool verified = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> elapsed_ms;
    std::optional<int> scale_digits;
    std::vector<Score> shift;
};

inline Json names_of(const Instance& inst, const std::vector<VertexId>& ids) {
    Json out = Json::array();
    for (VertexId v : ids) out.push_back(inst.names[static_cast<std::size_t>(v)]);
    return out;
}

inline Json report_json(const Instance& inst, const RunReport& r) {
    Json j;
    j["variant"] = r.variant;
    if (!r.constraint.empty()) j["constraint"] = r.constraint;
    j["answer"] = r.result.yes ? "yes" : "no";
    j["score"] = r.result.score;
    j["t"] = r.t;
    j["k"] = r.k;
    Json arcs = Json::array();
    for (const Arc& a : r.result.arcs)
        arcs.push_back({inst.names[static_cast<std::size_t>(a.from)], inst.names[static_cast<std::size_t>(a.to)]});
    j["arcs"] = std::move(arcs);

    Json witness = Json::object();
    if (r.variant == "pi1v" || (r.variant == "oracle" && r.constraint == "pi1v"))
        witness["dissociation_set"] = names_of(inst, r.result.dissociation_set);
    if (r.variant == "ba-cc") {
        Json colors = Json::object();
        for (std::size_t v = 0; v < inst.n(); ++v) colors[inst.names[v]] = r.result.coloring[v] + 1;
        witness["coloring"] = std::move(colors);
    }
    witness["arc_count"] = r.result.arcs.size();
    witness["moral_graph_edges"] = r.result.moral_graph_edges;
    j["witness"] = std::move(witness);
    j["verified"] = r.verified;
    j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    j["telemetry"] = {{"candidates", r.result.telemetry.candidates},
                      {"completions", r.result.telemetry.completions},
                      {"pruned", r.result.telemetry.pruned},
                      {"trials", r.result.telemetry.trials},
                      {"successes", r.result.telemetry.successes}};
    if (r.scale_digits) {
        Json shift = Json::object();
        for (std::size_t v = 0; v < inst.n(); ++v) shift[inst.names[v]] = r.shift[v];
        j["scale"] = {{"digits", *r.scale_digits}, {"shift", std::move(shift)}};
    }
    if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
    return j;
}

namespace detail {

inline ArcSet arcs_by_name(const Instance& inst, const std::vector<std::pair<std::string, std::string>>& pairs) {
    ArcSet arcs(inst.n());
    for (const auto& [from, to] : pairs) {
        const VertexId a = vertex_by_name(inst, from), b = vertex_by_name(inst, to);
        if (a == b) throw ArgumentError("self-loop arc '" + from + "'");
        arcs.insert({a, b});
    }
    return arcs;
}

/// A solution file is either a JSON report or plain "parent child" lines.
inline Claim read_claim(const Instance& inst, const std::string& text, const std::string& variant,
                        const std::string& constraint) {
    Claim claim;
    claim.variant = variant;
    claim.constraint = constraint;
    const auto start = text.find_first_not_of(" \t\r\n");
    std::vector<std::pair<std::string, std::string>> pairs;
    if (start != std::string::npos && text[start] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::exception& e) {
            throw ParseError(1, std::string("malformed JSON solution: ") + e.what());
        }
        try {
            for (const auto& a : j.at("arcs")) pairs.emplace_back(a.at(0).get<std::string>(), a.at(1).get<std::string>());
            if (j.contains("score")) claim.score = j["score"].get<Score>();
            if (j.contains("witness")) {
                const auto& w = j["witness"];
                if (w.contains("dissociation_set")) {
                    std::vector<VertexId> s;
                    for (const auto& name : w["dissociation_set"]) s.push_back(vertex_by_name(inst, name.get<std::string>()));
                    claim.dissociation_set = std::move(s);
                }
                if (w.contains("coloring")) {
                    Coloring chi{std::vector<int>(inst.n(), 0), 1};
                    for (const auto& [name, c] : w["coloring"].items()) {
                        const int color = c.get<int>() - 1;
                        chi.colors[static_cast<std::size_t>(vertex_by_name(inst, name))] = color;
                        chi.count = std::max(chi.count, color + 1);
                    }
                    claim.coloring = std::move(chi);
                }
            }
        } catch (const Json::exception& e) {
            throw ParseError(1, std::string("unexpected JSON solution layout: ") + e.what());
        }
    } else {
        for (const auto& line : tokenize(text)) {
            if (line.tokens.size() != 2) throw ParseError(line.number, "solution line must be 'parent child'");
            pairs.emplace_back(line.tokens[0], line.tokens[1]);
        }
    }
    claim.arcs = arcs_by_name(inst, pairs);
    return claim;
}

inline SolveResult dispatch(const Instance& inst, const std::string& variant, const std::string& constraint,
                            std::uint64_t seed, std::uint64_t reps_multiplier, unsigned threads) {
    if (variant == "pi1v") return solve_pi1v(inst, threads);
    if (variant == "ba-dp") return solve_ba_topological(inst);
    if (variant == "ba-cc") {
        if (reps_multiplier == 0) throw ArgumentError("--reps must be at least 1");
        const std::uint64_t base = default_repetitions(inst.k);
        if (base > UINT64_MAX / reps_multiplier) throw SizeError("repetition count overflows");
        return solve_ba_color_coding(inst, seed, base * reps_multiplier, threads);
    }
    if (variant == "pi0e") return solve_pi0e(inst);
    if (variant == "oracle") return oracle_solve(inst, parse_constraint(constraint, inst.k), CandidateSpace::potential, threads);
    throw ArgumentError("unknown variant '" + variant + "'");
}

}  // namespace detail

/// Command-line entry point. Exit codes: 0 yes / valid and reaching t, 1 no / valid below t,
/// 2 usage, parse or unsupported input, 3 failed verification.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and parameterized Bayesian network structure learning"};
    app.require_subcommand(1);

    std::string score_path, solution_path, variant = "pi1v", constraint = "none";
    Score t = 0;
    std::int64_t k = 0;
    std::uint64_t seed = 0, reps = 1;
    unsigned threads = 1;
    std::optional<int> scale;
    bool timing = false;

    auto* solve = app.add_subcommand("solve", "Learn an optimal network under a structural constraint");
    solve->add_option("scores", score_path, "Score file")->required();
    solve->add_option("--variant", variant, "pi1v | ba-dp | ba-cc | pi0e | oracle")
        ->check(CLI::IsMember({"pi1v", "ba-dp", "ba-cc", "pi0e", "oracle"}));
    solve->add_option("-t", t, "Score threshold")->check(CLI::NonNegativeNumber);
    solve->add_option("-k", k, "Budget parameter")->check(CLI::NonNegativeNumber);
    solve->add_option("--seed", seed, "Seed for color coding");
    solve->add_option("--reps", reps, "Multiplier on the default color-coding repetitions");
    solve->add_option("--threads", threads, "Worker threads (0 = all hardware threads)");
    solve->add_option("--scale", scale, "Accept decimal scores, multiplying by 10^d");
    solve->add_option("--constraint", constraint, "Oracle constraint: none | arcs | <pi0|pi1|pi2|pi3coc|forest><v|e>");
    solve->add_flag("--timing", timing, "Include elapsed_ms in the report");

    auto* verify = app.add_subcommand("verify", "Check a solution against a score file");
    verify->add_option("scores", score_path, "Score file")->required();
    verify->add_option("solution", solution_path, "JSON report or 'parent child' lines")->required();
    verify->add_option("--variant", variant, "pi1v | ba-dp | ba-cc | pi0e | oracle")
        ->check(CLI::IsMember({"pi1v", "ba-dp", "ba-cc", "pi0e", "oracle"}));
    verify->add_option("-t", t, "Score threshold")->check(CLI::NonNegativeNumber);
    verify->add_option("-k", k, "Budget parameter")->check(CLI::NonNegativeNumber);
    verify->add_option("--scale", scale, "Accept decimal scores, multiplying by 10^d");
    verify->add_option("--constraint", constraint, "Constraint for --variant oracle");

    std::string reduction, graph_path, output_path;
    std::int64_t ell = 0;
    bool random = false;
    RandomInstanceParams rp;
    auto* gen = app.add_subcommand("gen", "Generate an instance from a reduction or at random");
    gen->add_option("--reduction", reduction, "clique | hampath | tricover | mcc | mis")
        ->check(CLI::IsMember({"clique", "hampath", "tricover", "mcc", "mis"}));
    gen->add_option("--graph", graph_path, "Graph file for reductions");
    gen->add_option("--ell", ell, "Clique size for the clique reduction");
    gen->add_flag("--random", random, "Random instance");
    gen->add_option("--n", rp.n, "Vertices (random)");
    gen->add_option("--max-parents", rp.max_parents, "Largest parent set (random)");
    gen->add_option("--entries", rp.entries_per_vertex, "Stored parent sets per vertex (random)");
    gen->add_option("--min-score", rp.min_score, "Smallest stored score (random)");
    gen->add_option("--max-score", rp.max_score, "Largest stored score (random)");
    gen->add_option("--empty-max", rp.empty_score_max, "Largest empty-set score (random)");
    gen->add_option("--seed", rp.seed, "Seed (random)");
    gen->add_flag("--acyclic", rp.acyclic, "Only lower ids as parents (random)");
    gen->add_option("-t", rp.t, "Threshold to record in the metadata (random)");
    gen->add_option("-k", rp.k, "Budget to record in the metadata (random)");
    gen->add_option("-o,--output", output_path, "Write the score file here instead of standard output");

    auto* stats = app.add_subcommand("stats", "Summarize a score file");
    stats->add_option("scores", score_path, "Score file")->required();
    stats->add_option("--scale", scale, "Accept decimal scores, multiplying by 10^d");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*solve) {
            const auto parsed = parse_score_file(score_path, {scale});
            Instance inst = parsed.instance;
            inst.t = t;
            inst.k = k;
            if (variant != "oracle") constraint.clear();
            else parse_constraint(constraint, k);

            const auto start = std::chrono::steady_clock::now();
            SolveResult result = detail::dispatch(inst, variant, constraint, seed, reps, threads);
            const auto stop = std::chrono::steady_clock::now();

            Claim claim{variant, constraint.empty() ? "none" : constraint, result.arcs, result.score, std::nullopt, std::nullopt};
            if (variant == "pi1v") claim.dissociation_set = result.dissociation_set;
            if (variant == "ba-cc")
                claim.coloring = Coloring{result.coloring, static_cast<int>(std::max<std::int64_t>(
                                                               1, std::min<std::int64_t>(2 * k, static_cast<std::int64_t>(inst.n()))))};
            const Verdict verdict = verify_claim(inst, claim);
            const bool verified = verdict.valid && (verdict.score >= t) == result.yes;

            RunReport report{variant, constraint, result, t, k, verified, std::nullopt, std::nullopt, scale, parsed.shift};
            if (variant == "ba-cc") report.seed = seed;
            if (timing) report.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            out << report_json(inst, report).dump(2) << '\n';
            if (!verified) {
                err << "verification failed: " << (verdict.reason.empty() ? "answer disagrees with score" : verdict.reason)
                    << '\n';
                return kExitInvalid;
            }
            return result.yes ? kExitYes : kExitNo;
        }

        if (*verify) {
            const auto parsed = parse_score_file(score_path, {scale});
            Instance inst = parsed.instance;
            inst.t = t;
            inst.k = k;
            Claim claim;
            try {
                claim = detail::read_claim(inst, read_text_file(solution_path), variant, constraint);
            } catch (const ArgumentError& e) {
                out << Json{{"valid", false}, {"reason", e.what()}}.dump(2) << '\n';
                return kExitInvalid;
            }
            const Verdict verdict = verify_claim(inst, claim);
            Json j{{"valid", verdict.valid}, {"score", verdict.score}, {"t", t}, {"meets", verdict.score >= t}};
            if (!verdict.valid) j["reason"] = verdict.reason;
            out << j.dump(2) << '\n';
            if (!verdict.valid) return kExitInvalid;
            return verdict.score >= t ? kExitYes : kExitNo;
        }

        if (*gen) {
            if (random == !reduction.empty()) throw ArgumentError("choose exactly one of --reduction and --random");
            Instance inst;
            if (random) {
                inst = random_instance(rp);
            } else {
                if (graph_path.empty()) throw ArgumentError("--reduction needs --graph");
                const GraphInput g = parse_graph_file(graph_path);
                if (reduction == "clique") inst = from_clique(g.graph, ell);
                else if (reduction == "hampath") inst = from_hampath(g.graph);
                else if (reduction == "tricover") inst = from_triangle_cover(g.graph);
                else if (reduction == "mcc") inst = from_multicolored_clique(g.colored());
                else inst = from_multicolored_independent_set(g.colored());
            }
            const Json meta{{"n", inst.n()}, {"t", inst.t}, {"k", inst.k}};
            const std::string text = write_score_text(inst);
            if (output_path.empty()) {
                out << text;
                err << meta.dump() << '\n';
            } else {
                std::ofstream file(output_path, std::ios::binary);
                if (!file) throw Error("cannot write '" + output_path + "'");
                file << text;
                out << meta.dump(2) << '\n';
            }
            return 0;
        }

        if (*stats) {
            const auto parsed = parse_score_file(score_path, {scale});
            const Instance& inst = parsed.instance;
            std::size_t stored = 0, widest = 0;
            for (std::size_t v = 0; v < inst.n(); ++v)
                for (const auto& e : inst.scores.entries(static_cast<VertexId>(v))) {
                    ++stored;
                    widest = std::max(widest, e.parents.size());
                }
            const ArcSet super = superstructure(inst);
            const Json j{{"n", inst.n()},
                         {"delta", delta(inst)},
                         {"stored_entries", stored},
                         {"max_parent_set_size", widest},
                         {"superstructure_arcs", super.size()},
                         {"acyclic", is_dag(super)}};
            out << j.dump(2) << '\n';
            return 0;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "internal verification failure: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitUsage;
}

}  // namespace bnsl
