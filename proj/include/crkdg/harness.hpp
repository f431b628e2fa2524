#ifndef CRKDG_HARNESS_HPP
#define CRKDG_HARNESS_HPP

#include "crkdg/config.hpp"
#include "crkdg/field.hpp"
#include "crkdg/limiters.hpp"
#include "crkdg/physics.hpp"
#include "crkdg/riemann.hpp"
#include "crkdg/tableau.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace crkdg {

struct DtRule {
    enum class Kind { fixed_ch, cfl } kind = Kind::cfl;
    double value = 0.3; // c in dt = c*h, or the CFL number
};

// A fully specified run. `preset` selects the problem (law, domain, initial
// data, oracle, boundary layout); the remaining fields select the
// discretization. Empty strings mean "preset default".
struct Scenario {
    std::string name = "run";
    std::string preset;
    std::string scheme = "crkdg"; // rkdg | crkdg | shu_osher_hybrid
    std::string tableau;          // empty -> default for (scheme, degree)
    std::optional<ButcherTableau> custom_tableau;
    std::string flux;             // empty -> preset default
    int degree = 1;
    int nx = 40, ny = 0;          // ny = 0 -> nx
    Perturbation perturbation = Perturbation::none;
    std::string boundary;         // "periodic" | "inflow" where the preset allows both
    double end_time = -1.0;       // < 0 -> preset default
    long max_steps = 0;           // 0 -> unbounded
    DtRule dt;
    LimiterConfig limiter;

    bool emit_profile = false, emit_points = false, emit_contour = false,
         emit_errors = false;
    int samples_per_cell = 3;
};

struct RunResult {
    std::shared_ptr<FieldCoefficients> field;
    double end_time = 0.0;
    long steps = 0;
    bool has_oracle = false;
    double l2_error = 0.0;   // density component for flow laws
    double linf_error = 0.0;
    double max_drift = 0.0;  // max relative conservation drift over the run
    double min_density = 0.0, min_pressure = 0.0; // min over run, at cell means
    long troubled_total = 0;
    double wall_seconds = 0.0;
};

std::vector<std::string> scenario_presets();
Scenario scenario_from_sections(const std::vector<ConfigSection>& sections);
Scenario scenario_from_config_file(const std::string& path);

// Time-march a scenario. Computes errors against the preset's oracle when one
// exists. For periodic runs of conservative schemes the relative conservation
// drift is asserted to stay within 1e-12 per 100 steps (NumericError).
RunResult run_scenario(const Scenario& scenario);

struct ConvergenceRow {
    int n = 0;
    double l2 = 0.0, l2_order = 0.0;
    double linf = 0.0, linf_order = 0.0;
    double wall_seconds = 0.0;
};

// Run the scenario over a mesh-size list and tabulate errors and observed
// orders log2(e_N / e_2N).
std::vector<ConvergenceRow> convergence_study(const Scenario& base,
                                              const std::vector<int>& sizes);

void emit_outputs(const Scenario& scenario, const RunResult& result,
                  const std::string& output_dir);
void write_error_table(const std::vector<ConvergenceRow>& rows,
                       const std::string& path);
std::string format_error_table(const std::vector<ConvergenceRow>& rows);

// L1 error of the density cell distribution against an exact sampler.
double l1_density_error(const FieldCoefficients& field,
                        const std::function<double(double, double)>& exact_density);

// Cross-check of the compact stepper against its single-step linear form on
// random periodic fields (the tableau must have p stages at order p).
struct EquivalenceReport {
    double max_diff_midpoint = 0.0;
    double max_diff_rk3 = 0.0;
    bool pass = false;
};
EquivalenceReport equivalence_check(int n_fields, unsigned seed);

// First-order Godunov finite-volume reference for 1D scalar laws without a
// closed-form solution. Returns cell means on a uniform n-cell mesh.
std::vector<double> godunov_fv_reference(const ConservationLaw& law,
                                         const std::function<double(double)>& u0,
                                         double a, double b, int n, double t_end,
                                         double cfl = 0.4);

} // namespace crkdg

#endif
