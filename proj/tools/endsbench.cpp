#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "endsbench/suite.hpp"

int main(int argc, char** argv)
{
    using namespace endsbench;
    CLI::App app{"Exact finite-level workbench for graphs of finite p-groups"};
    app.require_subcommand(1);
    WorkbenchConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--prime", cfg.prime, "prime p (2 or 3)");
        sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
        sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    };
    auto* lemmas = app.add_subcommand("verify-lemmas", "cohomology lemma checks over the group catalog");
    common(lemmas);
    lemmas->add_option("--order-bound", cfg.order_bound, "largest group order (default 16 for p=2, 27 for p=3)");

    auto* counting = app.add_subcommand("counting", "edge-count bound over small connected multigraphs");
    common(counting);
    counting->add_option("--max-edges", cfg.max_edges, "largest edge count")->capture_default_str();

    auto* enumerate = app.add_subcommand("enumerate", "connected multigraphs up to isomorphism");
    common(enumerate);
    enumerate->add_option("--max-edges", cfg.max_edges, "largest edge count")->capture_default_str();

    for (const char* name : {"analyze", "ends"}) {
        auto* sub = app.add_subcommand(name, std::string(name) == "analyze" ? "bound report for a graph of groups"
                                                                            : "per-level module of ends dimensions");
        common(sub);
        sub->add_option("input", cfg.input, "graph-of-groups JSON file")->required();
        sub->add_option("--levels", cfg.levels, "quotient orders, comma separated")->delimiter(',');
        sub->add_option("--order-bound", cfg.order_bound, "search bound when no levels are given (default 64)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    const auto result = run_suite(cfg);
    try {
        emit_report(result.report, cfg.out);
    } catch (const std::exception& e) {
        std::cerr << "endsbench: " << e.what() << "\n";
        return kInputError;
    }
    if (result.exit_code == kInputError) std::cerr << "endsbench: " << result.report["error"]["message"].get<std::string>() << "\n";
    return result.exit_code;
}
