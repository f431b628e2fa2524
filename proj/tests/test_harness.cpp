#include "crkdg/errors.hpp"
#include "crkdg/harness.hpp"

#include <cmath>
#include <cstdio>
#include <doctest.h>
#include <filesystem>
#include <fstream>

using namespace crkdg;

TEST_CASE("config parsing") {
    const std::string text = R"(
# comment
[scenario]
name = demo
preset = burgers_sine
degree = 2
nx = 40
dt_rule = fixed_ch
dt_value = 0.1
limiter = tvb_weno
tvb_m = 1.0
emit = profile errors
)";
    const Scenario sc = scenario_from_sections(parse_config(text));
    CHECK(sc.name == "demo");
    CHECK(sc.preset == "burgers_sine");
    CHECK(sc.degree == 2);
    CHECK(sc.dt.kind == DtRule::Kind::fixed_ch);
    CHECK(sc.dt.value == 0.1);
    CHECK(sc.limiter.kind == LimiterKind::tvb_weno);
    CHECK(sc.emit_profile);
    CHECK(sc.emit_errors);
    CHECK(!sc.emit_contour);

    CHECK_THROWS_AS(scenario_from_sections(parse_config("[scenario]\npreset = burgers_sine\nnx = 8\nwidget = 3\n")),
                    ConfigError);
    CHECK_THROWS_AS(scenario_from_sections(parse_config("[weird]\nx = 1\n")), ConfigError);
    CHECK_THROWS_AS(parse_config("[scenario\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("x = 1\n"), ConfigError);

    // custom tableau
    const std::string custom = R"(
[scenario]
preset = advection_sine
nx = 8
tableau = custom
[tableau]
stages = 2
order = 2
a_row_2 = 0.5
b = 0 1
c = 0 0.5
)";
    const Scenario sc2 = scenario_from_sections(parse_config(custom));
    REQUIRE(sc2.custom_tableau.has_value());
    CHECK(sc2.custom_tableau->stages == 2);
    CHECK(sc2.custom_tableau->a(1, 0) == 0.5);
}

TEST_CASE("every preset builds and marches a couple of steps") {
    for (const std::string& preset : scenario_presets()) {
        Scenario sc;
        sc.preset = preset;
        sc.degree = 1;
        sc.max_steps = 2;
        sc.dt.kind = DtRule::Kind::cfl;
        sc.dt.value = 0.2;
        if (preset == "double_mach") {
            sc.nx = 40;
            sc.ny = 10;
            sc.limiter.kind = LimiterKind::tvb_minmod;
            sc.limiter.tvb_m = 50.0;
        } else if (preset == "forward_step") {
            sc.nx = 30;
            sc.ny = 10;
            sc.limiter.kind = LimiterKind::tvb_minmod;
            sc.limiter.tvb_m = 50.0;
        } else if (preset == "blast") {
            sc.nx = 60;
            sc.limiter.kind = LimiterKind::tvb_weno;
            sc.limiter.tvb_m = 200.0;
            sc.limiter.characteristic = true;
        } else if (preset == "sod" || preset == "shu_osher") {
            sc.nx = 40;
            sc.limiter.kind = LimiterKind::tvb_weno;
            sc.limiter.tvb_m = 1.0;
            sc.limiter.characteristic = true;
        } else if (preset.rfind("buckley", 0) == 0) {
            sc.nx = 40;
            sc.limiter.kind = LimiterKind::tvb_weno;
            sc.limiter.tvb_m = 1.0;
            sc.flux = "godunov";
        } else {
            sc.nx = 16;
        }
        const RunResult r = run_scenario(sc);
        CHECK(r.steps == 2);
        for (double x : r.field->data) CHECK(std::isfinite(x));
        if (preset == "double_mach" || preset == "forward_step" || preset == "blast")
            CHECK(r.min_density > 0.0);
    }
    Scenario bad;
    bad.preset = "warp_drive";
    bad.nx = 8;
    CHECK_THROWS_AS(run_scenario(bad), ConfigError);
}

TEST_CASE("errors against oracles and a printed-table spot value") {
    // cRKDG k=2 advection with inflow boundary at N=160, dt = 0.16h, t = 20:
    // the printed L2 error is 1.1296e-05.
    Scenario sc;
    sc.preset = "advection_sine";
    sc.scheme = "crkdg";
    sc.degree = 2;
    sc.boundary = "inflow";
    sc.nx = 160;
    sc.dt.kind = DtRule::Kind::fixed_ch;
    sc.dt.value = 0.16;
    const RunResult r = run_scenario(sc);
    CHECK(r.has_oracle);
    CHECK(r.l2_error == doctest::Approx(1.1296e-05).epsilon(0.5));
    CHECK(r.l2_error < 2.0 * 1.1296e-05);
    CHECK(r.l2_error > 0.5 * 1.1296e-05);

    // t = 0 run: the projection alone, identity with the initial data
    Scenario sc0;
    sc0.preset = "advection2d_sine";
    sc0.degree = 1;
    sc0.nx = 8;
    sc0.end_time = 0.0;
    const RunResult r0 = run_scenario(sc0);
    CHECK(r0.steps == 0);
    // P1 projection error of the initial sine product on an 8x8 mesh
    CHECK(r0.l2_error < 0.05);
}

TEST_CASE("convergence_study orders and table formatting") {
    Scenario sc;
    sc.preset = "burgers_sine";
    sc.scheme = "crkdg";
    sc.degree = 1;
    sc.dt.kind = DtRule::Kind::fixed_ch;
    sc.dt.value = 0.1;
    const auto rows = convergence_study(sc, {20, 40, 80});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].l2_order == 0.0);
    CHECK(rows[2].l2_order > 1.6);
    const std::string table = format_error_table(rows);
    CHECK(table.find("N,L2_error") == 0);
    // one header + three data rows
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);
}

TEST_CASE("determinism of runs") {
    Scenario sc;
    sc.preset = "euler1d_wave";
    sc.degree = 2;
    sc.nx = 20;
    sc.end_time = 0.1;
    sc.dt.kind = DtRule::Kind::cfl;
    sc.dt.value = 0.16;
    const RunResult a = run_scenario(sc);
    const RunResult b = run_scenario(sc);
    REQUIRE(a.field->data.size() == b.field->data.size());
    for (size_t i = 0; i < a.field->data.size(); ++i)
        CHECK(a.field->data[i] == b.field->data[i]);
}

TEST_CASE("output files") {
    namespace fs = std::filesystem;
    const std::string dir = "harness_test_outputs";
    fs::remove_all(dir);

    Scenario sc;
    sc.preset = "sod";
    sc.name = "sod10";
    sc.degree = 1;
    sc.nx = 10;
    sc.end_time = 0.05;
    sc.dt.value = 0.3;
    sc.limiter.kind = LimiterKind::tvb_weno;
    sc.limiter.tvb_m = 1.0;
    sc.limiter.characteristic = true;
    sc.emit_profile = true;
    sc.emit_points = true;
    sc.samples_per_cell = 2;
    const RunResult r = run_scenario(sc);
    emit_outputs(sc, r, dir);

    std::ifstream prof(dir + "/sod10_profile.csv");
    REQUIRE(prof.good());
    std::string header;
    std::getline(prof, header);
    CHECK(header == "x,rho,w,p");
    int rows = 0;
    for (std::string line; std::getline(prof, line);) ++rows;
    CHECK(rows == 10);

    // 2D contour grid: ny rows of nx comma-separated density means
    Scenario sc2;
    sc2.preset = "euler2d_wave";
    sc2.name = "wave2d";
    sc2.degree = 1;
    sc2.nx = 6;
    sc2.end_time = 0.0;
    sc2.emit_contour = true;
    const RunResult r2 = run_scenario(sc2);
    emit_outputs(sc2, r2, dir);
    std::ifstream cont(dir + "/wave2d_contour.csv");
    REQUIRE(cont.good());
    rows = 0;
    for (std::string line; std::getline(cont, line);) {
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        ++rows;
    }
    CHECK(rows == 6);
    fs::remove_all(dir);
}

TEST_CASE("first-order finite-volume reference") {
    // Validate on Burgers Riemann problems with known exact solutions.
    BurgersLaw burgers;
    // shock: uL=1 > uR=0, speed 1/2; at t=0.5 the jump sits at x=0.25
    {
        const auto u = godunov_fv_reference(
            burgers, [](double x) { return x < 0.0 ? 1.0 : 0.0; }, -1.0, 1.0, 2000, 0.5);
        const double h = 2.0 / 2000;
        double l1 = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double x = -1.0 + (i + 0.5) * h;
            const double exact = x < 0.25 ? 1.0 : 0.0;
            l1 += h * std::abs(u[i] - exact);
        }
        CHECK(l1 < 0.01);
    }
    // rarefaction: uL=-1 < uR=1 opens a fan x/t
    {
        const auto u = godunov_fv_reference(
            burgers, [](double x) { return x < 0.0 ? -1.0 : 1.0; }, -1.5, 1.5, 2000, 0.5);
        const double h = 3.0 / 2000;
        double l1 = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double x = -1.5 + (i + 0.5) * h;
            const double exact = x < -0.5 ? -1.0 : (x > 0.5 ? 1.0 : x / 0.5);
            l1 += h * std::abs(u[i] - exact);
        }
        CHECK(l1 < 0.01);
    }
    CHECK_THROWS_AS(godunov_fv_reference(EulerLaw(1), [](double) { return 1.0; }, 0.0,
                                         1.0, 10, 0.1),
                    ParameterError);
}

TEST_CASE("nonconvex Riemann solutions track the finite-volume reference") {
    // the compact scheme with the Godunov flux converges to the entropy
    // solution on both Riemann problems
    for (const std::string preset : {"buckley_leverett_1", "buckley_leverett_2"}) {
        Scenario sc;
        sc.preset = preset;
        sc.scheme = "crkdg";
        sc.degree = 1;
        sc.nx = 80;
        sc.dt.value = 0.3;
        sc.limiter.kind = LimiterKind::tvb_weno;
        sc.limiter.tvb_m = 1.0;
        const RunResult r = run_scenario(sc);

        BuckleyLeverettLaw law;
        const bool first = preset == "buckley_leverett_1";
        const double ul = first ? 2.0 : -3.0;
        const double ur = first ? -2.0 : 3.0;
        const auto ref = godunov_fv_reference(
            law, [&](double x) { return x < 0.0 ? ul : ur; }, -2.5, 2.5, 20000, 1.0);
        // compare cell means against the averaged fine reference
        const int ratio = 20000 / 80;
        double l1 = 0.0;
        const double h = 5.0 / 80;
        for (int c = 0; c < 80; ++c) {
            double refmean = 0.0;
            for (int j = 0; j < ratio; ++j) refmean += ref[c * ratio + j];
            refmean /= ratio;
            l1 += h * std::abs(r.field->mean(c, 0) - refmean);
        }
        CHECK(l1 < 0.15);
    }
}

TEST_CASE("equivalence report") {
    const EquivalenceReport rep = equivalence_check(5, 123);
    CHECK(rep.pass);
    CHECK(rep.max_diff_midpoint <= 1e-12);
    CHECK(rep.max_diff_rk3 <= 1e-12);
}
