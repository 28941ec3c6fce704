#pragma once
// Suite orchestration behind the command-line tool. Every run produces one
// canonical JSON report; the exit code is 0 (pass), 1 (violation found) or
// 2 (input error).

#include <string>
#include <vector>

#include "cohomology.hpp"
#include "ends.hpp"
#include "gog.hpp"
#include "graphs.hpp"
#include "io.hpp"

namespace endsbench {

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2 };

struct WorkbenchConfig {
    std::string subcommand;
    int prime = 0; // 0: taken from the input file, or 2
    std::string input;
    int max_edges = 7;
    std::vector<int> levels;
    int order_bound = 0; // 0: subcommand default
    std::uint64_t seed = 0;
    std::string out;
};

struct SuiteResult {
    int exit_code;
    Json report;
};

/// Prime in {2,3}; levels are powers of the prime within the order limit.
inline void check_config(const WorkbenchConfig& c)
{
    if (c.prime != 2 && c.prime != 3) throw InputError("/prime", "prime must be 2 or 3");
    if (c.max_edges < 0) throw InputError("/max_edges", "max edges must be nonnegative");
    for (std::size_t i = 0; i < c.levels.size(); ++i)
        if (c.levels[i] < c.prime || c.levels[i] > kMaxGroupOrder || !is_power_of(c.levels[i], c.prime))
            throw InputError("/levels/" + std::to_string(i), "level must be a power of the prime in [p, 256]");
    if (c.order_bound < 0 || c.order_bound > kMaxGroupOrder) throw InputError("/order_bound", "order bound must be at most 256");
}

namespace detail {

inline Json finalize(Json report, const Json& findings)
{
    report["findings"] = findings;
    report["status"] = findings.empty() ? "pass" : "fail";
    return report;
}

inline Json run_lemmas(const WorkbenchConfig& c)
{
    const int bound = c.order_bound > 0 ? c.order_bound : (c.prime == 2 ? 16 : 27);
    Json groups = Json::array(), findings = Json::array();
    for (const auto& g : catalog_groups(c.prime, bound)) {
        const auto reg = check_h1_regular_vanishes(g);
        int norm_fail = 0, shapiro_fail = 0, subgroups = 0;
        for (const auto& k : all_subgroups(g)) {
            ++subgroups;
            const auto norm = check_h0_norm_formula(k);
            if (!norm.holds) {
                ++norm_fail;
                findings.push_back({{"kind", "h0_norm_formula"}, {"group", group_to_json(*g)}, {"subgroup", k.elements},
                                    {"lhs", norm.lhs}, {"rhs", norm.rhs}});
            }
            for (int d : {0, 1}) {
                const auto sh = check_shapiro_dims(k, d);
                if (!sh.holds) {
                    ++shapiro_fail;
                    findings.push_back({{"kind", "shapiro_dims"}, {"degree", d}, {"group", group_to_json(*g)},
                                        {"subgroup", k.elements}, {"lhs", sh.lhs}, {"rhs", sh.rhs}});
                }
            }
        }
        if (!reg.holds) findings.push_back({{"kind", "h1_regular_vanishes"}, {"group", group_to_json(*g)}, {"h1_dim", reg.lhs}});
        groups.push_back({{"group", group_to_json(*g)},
                          {"order", g->order()},
                          {"h1_regular_dim", reg.lhs},
                          {"subgroups", subgroups},
                          {"norm_formula_failures", norm_fail},
                          {"shapiro_failures", shapiro_fail}});
    }
    return finalize({{"prime", c.prime}, {"order_bound", bound}, {"groups", groups}}, findings);
}

inline Json run_counting(const WorkbenchConfig& c)
{
    const auto v = verify_counting_lemma(c.max_edges, c.seed);
    Json graphs = Json::array(), exceptional = Json::array(), findings = Json::array();
    for (const auto& f : v.all) graphs.push_back(counting_to_json(f.graph, f.report));
    for (const auto& f : v.exceptional) exceptional.push_back(counting_to_json(f.graph, f.report));
    for (const auto& f : v.violations) {
        auto j = counting_to_json(f.graph, f.report);
        j["kind"] = "counting_bound";
        findings.push_back(std::move(j));
    }
    for (const auto& f : v.intermediate_failures) {
        auto j = counting_to_json(f.graph, f.report);
        j["kind"] = "proof_intermediate";
        findings.push_back(std::move(j));
    }
    return finalize({{"max_edges", c.max_edges},
                     {"exhaustive_edges", std::min(c.max_edges, kExhaustiveEdgeLimit)},
                     {"seed", c.seed},
                     {"family_size", v.family_size},
                     {"graphs", graphs},
                     {"exceptional_findings", exceptional}},
                    findings);
}

inline Json run_enumerate(const WorkbenchConfig& c)
{
    if (c.max_edges > kExhaustiveEdgeLimit)
        throw InputError("/max_edges", "enumeration is exhaustive only up to " + std::to_string(kExhaustiveEdgeLimit) + " edges");
    Json graphs = Json::array();
    std::vector<int> per_edges(static_cast<std::size_t>(c.max_edges) + 1, 0);
    for (const auto& g : enumerate_connected_multigraphs(c.max_edges, c.max_edges + 1)) {
        ++per_edges[static_cast<std::size_t>(g.edge_count())];
        graphs.push_back(graph_to_json(g));
    }
    return finalize({{"max_edges", c.max_edges}, {"count_by_edges", per_edges}, {"graphs", graphs}}, Json::array());
}

// Levels to compute: the configured ones, else the smallest witness order
// within the order bound.
inline std::vector<int> levels_for(const GraphOfGroups& g, const WorkbenchConfig& c)
{
    if (!c.levels.empty()) return c.levels;
    const int bound = c.order_bound > 0 ? c.order_bound : 64;
    if (auto w = find_proper_quotient(g, g.prime, bound)) return {w->quotient->order()};
    return {};
}

inline Json run_ends(const WorkbenchConfig& c, const GraphOfGroups& g)
{
    Json levels = Json::array(), witnesses = Json::array(), findings = Json::array(), missing = Json::array();
    if (!validate(g).connected) throw InputError("/edges", "graph of groups is disconnected");
    for (int level : levels_for(g, c)) {
        const auto w = find_proper_quotient(g, level, level);
        if (!w) {
            missing.push_back(level);
            continue;
        }
        const auto mv = mv_h0_map(g, *w);
        const auto r = ends_level(g, *w);
        if (r.fox_h1_dim != r.h1_dim)
            findings.push_back({{"kind", "fox_mismatch"}, {"level", level}, {"h1_dim", r.h1_dim}, {"fox_h1_dim", *r.fox_h1_dim}});
        if (mv.kernel_dim != 1) findings.push_back({{"kind", "mv_kernel"}, {"level", level}, {"kernel_dim", mv.kernel_dim}});
        levels.push_back(level_to_json(r));
        witnesses.push_back(witness_to_json(*w));
    }
    return finalize({{"levels", levels}, {"witnesses", witnesses}, {"not_found_levels", missing}}, findings);
}

inline Json run_analyze(const WorkbenchConfig& c, GraphOfGroups g)
{
    Json findings = Json::array();
    const auto v0 = validate(g);
    if (!v0.connected) throw InputError("/edges", "graph of groups is disconnected");
    const int input_edges = g.edge_count();
    const int b1_before = b1(g);
    g = reduce_fully(g);
    const int b1_after = b1(g);
    if (b1_before != b1_after) findings.push_back({{"kind", "b1_collapse"}, {"before", b1_before}, {"after", b1_after}});
    const int lb = leaf_bound(g);
    if (b1_after < lb) findings.push_back({{"kind", "b1_leaf_bound"}, {"b1", b1_after}, {"leaf_bound", lb}});

    const auto rep = theorem_bound_report(g, levels_for(g, c));
    Json levels = Json::array(), matching = Json::array();
    for (const auto& l : rep.levels) {
        levels.push_back(level_to_json(l));
        if (!l.bound_holds)
            findings.push_back({{"kind", "bound"}, {"level", l.level}, {"edge_count", l.edge_count}, {"bound_rhs", l.bound_rhs}});
        if (l.fox_h1_dim != l.h1_dim)
            findings.push_back({{"kind", "fox_mismatch"}, {"level", l.level}, {"h1_dim", l.h1_dim}, {"fox_h1_dim", *l.fox_h1_dim}});
        if (g.edge_count() > 0 && l.h1_dim == 0) findings.push_back({{"kind", "h1_vanishes"}, {"level", l.level}});
    }
    for (const auto& m : rep.matching) {
        matching.push_back({{"level", m.level}, {"matching_size", m.matching_size}, {"gen_count", m.gen_count}, {"holds", m.holds}});
        if (!m.holds) findings.push_back({{"kind", "matching_bound"}, {"level", m.level}, {"matching_size", m.matching_size}, {"gen_count", m.gen_count}});
    }
    return finalize({{"input_edges", input_edges},
                     {"edge_count", g.edge_count()},
                     {"reduced_input", v0.reduced},
                     {"b1", b1_after},
                     {"leaf_bound", lb},
                     {"levels", levels},
                     {"matching", matching},
                     {"not_found_levels", rep.not_found},
                     {"gen_count_monotone", rep.gen_count_monotone}},
                    findings);
}

} // namespace detail

/// Runs one subcommand. Input problems yield exit code 2 with an error report.
/// Other library errors raised mid-computation count as violations.
inline SuiteResult run_suite(const WorkbenchConfig& config)
{
    WorkbenchConfig c = config;
    try {
        Json report;
        GraphOfGroups g;
        const bool needs_input = c.subcommand == "analyze" || c.subcommand == "ends";
        if (needs_input) {
            if (c.input.empty()) throw InputError("/input", c.subcommand + " needs an input file");
            g = parse_input(c.input);
            if (c.prime == 0) c.prime = g.prime;
            if (g.prime != c.prime) throw InputError("/prime", "input prime differs from --prime");
        }
        if (c.prime == 0) c.prime = 2;
        check_config(c);
        if (c.subcommand == "verify-lemmas") report = detail::run_lemmas(c);
        else if (c.subcommand == "counting") report = detail::run_counting(c);
        else if (c.subcommand == "enumerate") report = detail::run_enumerate(c);
        else if (c.subcommand == "ends") report = detail::run_ends(c, g);
        else if (c.subcommand == "analyze") report = detail::run_analyze(c, std::move(g));
        else {
            throw InputError("/subcommand", "unknown subcommand '" + c.subcommand + "'");
        }
        const int code = report["findings"].empty() ? kPass : kViolation;
        return {code, std::move(report)};
    } catch (const InputError& e) {
        Json err = {{"error", {{"pointer", e.pointer}, {"message", e.what()}}}, {"status", "input_error"}, {"findings", Json::array()}};
        return {kInputError, std::move(err)};
    } catch (const Error& e) {
        Json f = Json::array({{{"kind", "error"}, {"message", e.what()}}});
        return {kViolation, {{"findings", f}, {"status", "fail"}}};
    }
}

} // namespace endsbench
