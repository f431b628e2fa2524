#include "crkdg/errors.hpp"
#include "crkdg/harness.hpp"
#include "crkdg/vonneumann.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

using namespace crkdg;

namespace {

int cmd_run(const std::string& config, const std::string& outdir) {
    const Scenario sc = scenario_from_config_file(config);
    const RunResult res = run_scenario(sc);
    std::printf("scenario %s: %ld steps to t = %.6g (%.2f s)\n", sc.name.c_str(),
                res.steps, res.end_time, res.wall_seconds);
    if (res.has_oracle)
        std::printf("  L2 error %.6e, Linf error %.6e\n", res.l2_error, res.linf_error);
    std::printf("  conservation drift %.3e", res.max_drift);
    if (res.min_pressure != 0.0 || res.min_density != 0.0)
        std::printf(", min density %.6g, min pressure %.6g", res.min_density,
                    res.min_pressure);
    if (res.troubled_total > 0)
        std::printf(", troubled-cell flags %ld", res.troubled_total);
    std::printf("\n");
    emit_outputs(sc, res, outdir);
    return 0;
}

int cmd_convergence(const std::string& config, const std::string& outdir) {
    const auto sections = parse_config_file(config);
    const Scenario sc = scenario_from_sections(sections);
    std::vector<int> sizes;
    for (const auto& s : sections)
        if (s.name == "convergence")
            for (double v : s.get_doubles("sizes")) sizes.push_back(static_cast<int>(v));
    if (sizes.empty())
        throw crkdg::ConfigError("convergence needs a [convergence] section with sizes");
    const auto rows = convergence_study(sc, sizes);
    std::fputs(format_error_table(rows).c_str(), stdout);
    if (sc.emit_errors)
        write_error_table(rows, outdir + "/" + sc.name + "_errors.csv");
    return 0;
}

int cmd_cfl_table() {
    std::printf("scheme,tableau,degree,cfl_max\n");
    for (const CflEntry& e : cfl_table())
        std::printf("%s,%s,%d,%.4f\n", e.scheme.c_str(), e.tableau.c_str(), e.degree,
                    e.cfl_max);
    return 0;
}

int cmd_equivalence(int fields, unsigned seed) {
    const EquivalenceReport rep = equivalence_check(fields, seed);
    std::printf("max |crkdg - single-step form| over %d random fields:\n", fields);
    std::printf("  midpoint (k=1): %.3e\n", rep.max_diff_midpoint);
    std::printf("  rk3      (k=2): %.3e\n", rep.max_diff_rk3);
    std::printf("%s (tolerance 1e-12)\n", rep.pass ? "PASS" : "FAIL");
    return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compact Runge-Kutta discontinuous Galerkin solver"};
    app.require_subcommand(1);

    std::string config, outdir = ".";
    int threads = 1;
    int fields = 50;
    unsigned seed = 20240901;

    auto* run = app.add_subcommand("run", "time-march one scenario");
    run->add_option("config", config, "scenario config file")->required();
    run->add_option("--output-dir", outdir, "directory for emitted files");
    run->add_option("--threads", threads, "reserved; runs are single-threaded");

    auto* conv = app.add_subcommand("convergence", "error table over a mesh sequence");
    conv->add_option("config", config, "scenario config file")->required();
    conv->add_option("--output-dir", outdir, "directory for emitted files");
    conv->add_option("--threads", threads, "reserved; runs are single-threaded");

    app.add_subcommand("cfl-table", "maximum CFL numbers from the stability analysis");

    auto* eq = app.add_subcommand("equivalence-check",
                                  "compact stepper vs its single-step linear form");
    eq->add_option("--fields", fields, "number of random fields");
    eq->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config, outdir);
        if (conv->parsed()) return cmd_convergence(config, outdir);
        if (app.get_subcommand("cfl-table")->parsed()) return cmd_cfl_table();
        if (eq->parsed()) return cmd_equivalence(fields, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
