#include "crkdg/harness.hpp"
#include "crkdg/errors.hpp"
#include "crkdg/spatial_ops.hpp"
#include "crkdg/time_steppers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace crkdg {

namespace {

struct ScenarioSetup {
    std::shared_ptr<ConservationLaw> law;
    std::shared_ptr<const MeshTopology> mesh;
    std::shared_ptr<const ReferenceBasis> basis;
    BoundaryPolicy policy;
    std::function<void(double, double, double*)> initial;           // conserved
    std::function<void(double, double, double, double*)> oracle;    // may be empty
    FluxScheme flux;
    double default_end_time = 0.0;
    bool all_periodic = false;
};

std::string default_tableau(const std::string& scheme, int degree) {
    if (degree == 0) return "euler";
    if (degree == 1) return scheme == "rkdg" ? "heun" : "midpoint";
    if (degree == 2) return scheme == "rkdg" ? "ssprk3" : "rk3";
    if (degree == 3) return "rk4";
    return "fehlberg5";
}

FluxScheme make_flux(const std::string& name, const ConservationLaw& law) {
    FluxScheme f;
    f.kind = flux_kind_from_name(name);
    if (f.kind == FluxKind::lax_friedrichs_global) {
        const auto* adv = dynamic_cast<const AdvectionLaw*>(&law);
        if (!adv)
            throw ConfigError("global Lax-Friedrichs flux is wired for linear advection");
        f.global_alpha = std::hypot(adv->beta()[0], adv->beta()[1]);
    }
    return f;
}

ScenarioSetup build_setup(const Scenario& sc) {
    ScenarioSetup s;
    const int nx = sc.nx;
    const int ny = sc.ny > 0 ? sc.ny : sc.nx;
    std::string flux_name = sc.flux;
    const std::string boundary = sc.boundary.empty() ? "periodic" : sc.boundary;

    auto interval = [&](double a, double b, const BoundarySpec& bc) {
        s.mesh = std::make_shared<MeshTopology>(
            build_interval_mesh(a, b, nx, sc.perturbation, bc));
    };
    auto rect = [&](double x0, double x1, double y0, double y1, const BoundarySpec& bc) {
        s.mesh =
            std::make_shared<MeshTopology>(build_rect_mesh(x0, x1, y0, y1, nx, ny, bc));
    };

    if (sc.preset == "burgers_sine") {
        s.law = std::make_shared<BurgersLaw>();
        interval(-M_PI, M_PI, BoundarySpec::all(BoundaryTag::periodic));
        s.all_periodic = true;
        s.initial = [](double x, double, double* u) { u[0] = std::sin(x); };
        s.oracle = [](double x, double, double t, double* u) {
            u[0] = burgers_smooth_exact(x, t);
        };
        if (flux_name.empty()) flux_name = "godunov";
        s.default_end_time = 0.2;
    } else if (sc.preset == "advection_sine") {
        s.law = std::make_shared<AdvectionLaw>(1.0);
        if (boundary == "periodic") {
            interval(0.0, 4.0 * M_PI, BoundarySpec::all(BoundaryTag::periodic));
            s.all_periodic = true;
        } else if (boundary == "inflow") {
            BoundarySpec bc;
            bc.left = BoundaryTag::inflow;
            bc.right = BoundaryTag::outflow;
            interval(0.0, 4.0 * M_PI, bc);
            s.policy.prescribed = [](double x, double, double t, double* u) {
                u[0] = advection1d_sine(x, t);
            };
        } else {
            throw ConfigError("advection_sine: boundary must be periodic or inflow");
        }
        s.initial = [](double x, double, double* u) { u[0] = std::sin(x); };
        s.oracle = [](double x, double, double t, double* u) {
            u[0] = advection1d_sine(x, t);
        };
        if (flux_name.empty()) flux_name = "upwind";
        s.default_end_time = 20.0;
    } else if (sc.preset == "euler1d_wave") {
        s.law = std::make_shared<EulerLaw>(1);
        interval(0.0, 2.0, BoundarySpec::all(BoundaryTag::periodic));
        s.all_periodic = true;
        s.initial = [](double x, double, double* u) { euler1d_density_wave(x, 0.0, u); };
        s.oracle = [](double x, double, double t, double* u) {
            euler1d_density_wave(x, t, u);
        };
        if (flux_name.empty()) flux_name = "lf_local";
        s.default_end_time = 2.0;
    } else if (sc.preset == "euler2d_wave") {
        s.law = std::make_shared<EulerLaw>(2);
        rect(0.0, 2.0, 0.0, 2.0, BoundarySpec::all(BoundaryTag::periodic));
        s.all_periodic = true;
        s.initial = [](double x, double y, double* u) { euler2d_density_wave(x, y, 0.0, u); };
        s.oracle = euler2d_density_wave;
        if (flux_name.empty()) flux_name = "lf_local";
        s.default_end_time = 0.5;
    } else if (sc.preset == "advection2d_sine") {
        s.law = std::make_shared<AdvectionLaw>(1.0, 1.0, 2);
        if (boundary == "periodic") {
            rect(-1.0, 1.0, -1.0, 1.0, BoundarySpec::all(BoundaryTag::periodic));
            s.all_periodic = true;
        } else if (boundary == "inflow") {
            BoundarySpec bc;
            bc.left = BoundaryTag::inflow;
            bc.bottom = BoundaryTag::inflow;
            bc.right = BoundaryTag::outflow;
            bc.top = BoundaryTag::outflow;
            rect(-1.0, 1.0, -1.0, 1.0, bc);
            s.policy.prescribed = [](double x, double y, double t, double* u) {
                u[0] = advection2d_sine(x, y, t);
            };
        } else {
            throw ConfigError("advection2d_sine: boundary must be periodic or inflow");
        }
        s.initial = [](double x, double y, double* u) { u[0] = advection2d_sine(x, y, 0.0); };
        s.oracle = [](double x, double y, double t, double* u) {
            u[0] = advection2d_sine(x, y, t);
        };
        if (flux_name.empty()) flux_name = "upwind";
        s.default_end_time = 0.4;
    } else if (sc.preset == "sod") {
        s.law = std::make_shared<EulerLaw>(1);
        interval(0.0, 1.0, BoundarySpec::all(BoundaryTag::outflow));
        s.initial = [](double x, double, double* u) {
            const double prim_l[3] = {1.0, 0.0, 1.0};
            const double prim_r[3] = {0.125, 0.0, 0.1};
            euler_prim_to_cons(1, x <= 0.5 ? prim_l : prim_r, u);
        };
        s.oracle = [](double x, double, double t, double* u) {
            double prim[3];
            sod_exact(x, t, prim);
            euler_prim_to_cons(1, prim, u);
        };
        if (flux_name.empty()) flux_name = "lf_local";
        s.default_end_time = 0.2;
    } else if (sc.preset == "blast") {
        s.law = std::make_shared<EulerLaw>(1);
        interval(0.0, 1.0, BoundarySpec::all(BoundaryTag::reflective));
        s.initial = [](double x, double, double* u) {
            double prim[3] = {1.0, 0.0, 100.0};
            if (x <= 0.1)
                prim[2] = 1000.0;
            else if (x <= 0.9)
                prim[2] = 0.01;
            euler_prim_to_cons(1, prim, u);
        };
        if (flux_name.empty()) flux_name = "lf_local";
        s.default_end_time = 0.038;
    } else if (sc.preset == "shu_osher") {
        s.law = std::make_shared<EulerLaw>(1);
        BoundarySpec bc;
        bc.left = BoundaryTag::inflow;
        bc.right = BoundaryTag::outflow;
        interval(-5.0, 5.0, bc);
        auto state = [](double x, double* u) {
            double prim[3];
            if (x < -4.0) {
                prim[0] = 3.857143; prim[1] = 2.629369; prim[2] = 10.333333;
            } else {
                prim[0] = 1.0 + 0.2 * std::sin(5.0 * x); prim[1] = 0.0; prim[2] = 1.0;
            }
            euler_prim_to_cons(1, prim, u);
        };
        s.initial = [state](double x, double, double* u) { state(x, u); };
        s.policy.prescribed = [state](double x, double, double, double* u) { state(x, u); };
        if (flux_name.empty()) flux_name = "lf_local";
        s.default_end_time = 1.8;
    } else if (sc.preset == "buckley_leverett_1" || sc.preset == "buckley_leverett_2") {
        s.law = std::make_shared<BuckleyLeverettLaw>();
        interval(-2.5, 2.5, BoundarySpec::all(BoundaryTag::outflow));
        const bool first = (sc.preset == "buckley_leverett_1");
        const double ul = first ? 2.0 : -3.0;
        const double ur = first ? -2.0 : 3.0;
        s.initial = [ul, ur](double x, double, double* u) { u[0] = x < 0.0 ? ul : ur; };
        if (flux_name.empty()) flux_name = "godunov";
        s.default_end_time = 1.0;
    } else if (sc.preset == "double_mach") {
        s.law = std::make_shared<EulerLaw>(2);
        BoundarySpec bc;
        bc.left = BoundaryTag::inflow;
        bc.right = BoundaryTag::outflow;
        bc.bottom = BoundaryTag::reflective;
        bc.top = BoundaryTag::post_shock_exact;
        bc.edge_tag = [](double x, double, int side) {
            if (side == 2)
                return x < 1.0 / 6.0 ? BoundaryTag::post_shock_exact
                                     : BoundaryTag::reflective;
            if (side == 0) return BoundaryTag::inflow;
            if (side == 1) return BoundaryTag::outflow;
            return BoundaryTag::post_shock_exact;
        };
        s.mesh = std::make_shared<MeshTopology>(
            build_rect_mesh(0.0, 4.0, 0.0, 1.0, nx, ny, bc));
        s.initial = [](double x, double y, double* u) { double_mach_exact(x, y, 0.0, u); };
        s.policy.prescribed = double_mach_exact;
        if (flux_name.empty()) flux_name = "lf_local";
        s.default_end_time = 0.2;
    } else if (sc.preset == "forward_step") {
        s.law = std::make_shared<EulerLaw>(2);
        s.mesh = std::make_shared<MeshTopology>(build_forward_step_mesh(nx, ny));
        s.initial = [](double, double, double* u) {
            const double prim[4] = {1.4, 3.0, 0.0, 1.0};
            euler_prim_to_cons(2, prim, u);
        };
        s.policy.prescribed = [](double, double, double, double* u) {
            const double prim[4] = {1.4, 3.0, 0.0, 1.0};
            euler_prim_to_cons(2, prim, u);
        };
        if (flux_name.empty()) flux_name = "lf_local";
        s.default_end_time = 4.0;
    } else {
        throw ConfigError("unknown scenario preset: " + sc.preset);
    }

    s.basis = std::make_shared<ReferenceBasis>(build_basis(s.mesh->dimension, sc.degree));
    s.flux = make_flux(flux_name, *s.law);
    return s;
}

const ButcherTableau& pick_tableau(const Scenario& sc) {
    if (sc.custom_tableau) return *sc.custom_tableau;
    const std::string name =
        sc.tableau.empty() ? default_tableau(sc.scheme, sc.degree) : sc.tableau;
    return tableau_by_name(name);
}

struct ErrorPair {
    double l2 = 0.0, linf = 0.0;
};

// 1D errors are plain L2 norms; 2D errors are reported per unit area
// (sqrt(int e^2 / |Omega|)), matching the norm conventions of the printed
// reference tables this harness reproduces.
ErrorPair compute_errors(const FieldCoefficients& field,
                         const std::function<void(double, double, double, double*)>& oracle,
                         double t) {
    const MeshTopology& mesh = *field.mesh;
    const ReferenceBasis& b = *field.basis;
    const QuadratureRule g = gauss_rule(b.degree + 3);
    const int dim = mesh.dimension;

    // Quadrature points and basis table for the error rule.
    std::vector<std::array<double, 2>> pts;
    std::vector<double> wts;
    if (dim == 1) {
        for (int q = 0; q < g.size(); ++q) {
            pts.push_back({g.points[q], 0.0});
            wts.push_back(g.weights[q]);
        }
    } else {
        for (int qy = 0; qy < g.size(); ++qy)
            for (int qx = 0; qx < g.size(); ++qx) {
                pts.push_back({g.points[qx], g.points[qy]});
                wts.push_back(g.weights[qx] * g.weights[qy]);
            }
    }
    std::vector<double> phi(pts.size() * b.n_modes);
    for (size_t q = 0; q < pts.size(); ++q)
        b.eval_modes(pts[q][0], pts[q][1], &phi[q * b.n_modes]);

    ErrorPair e;
    double exact[kMaxVar];
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const double J = mesh.cell_measure(c) / (dim == 1 ? 2.0 : 4.0);
        const double* cc = field.coeffs(c, 0);
        for (size_t q = 0; q < pts.size(); ++q) {
            double uh = 0.0;
            const double* ph = &phi[q * b.n_modes];
            for (int m = 0; m < b.n_modes; ++m) uh += cc[m] * ph[m];
            double x, y;
            ReferenceBasis::to_physical(mesh.cells[c], dim, pts[q][0], pts[q][1], x, y);
            oracle(x, y, t, exact);
            const double d = uh - exact[0];
            e.l2 += wts[q] * J * d * d;
            e.linf = std::max(e.linf, std::abs(d));
        }
    }
    if (dim == 2) {
        double area = 0.0;
        for (int c = 0; c < mesh.n_cells(); ++c) area += mesh.cell_measure(c);
        e.l2 /= area;
    }
    e.l2 = std::sqrt(e.l2);
    return e;
}

} // namespace

std::vector<std::string> scenario_presets() {
    return {"burgers_sine",  "advection_sine", "euler1d_wave",       "euler2d_wave",
            "advection2d_sine", "sod",         "blast",              "shu_osher",
            "buckley_leverett_1", "buckley_leverett_2", "double_mach", "forward_step"};
}

RunResult run_scenario(const Scenario& sc) {
    const auto t_start = std::chrono::steady_clock::now();
    ScenarioSetup setup = build_setup(sc);
    const ConservationLaw& law = *setup.law;
    const bool is_flow = law.has_eigenvectors();
    const double T = sc.end_time >= 0.0 ? sc.end_time : setup.default_end_time;

    DgContext ctx;
    ctx.law = setup.law.get();
    ctx.flux = setup.flux;
    ctx.boundary = &setup.policy;

    const ButcherTableau& tab = pick_tableau(sc);

    FieldCoefficients u =
        project_field(setup.mesh, setup.basis, law.n_var(), setup.initial);

    RunResult res;
    res.troubled_total += apply_limiter(u, sc.limiter, law);

    const std::vector<double> tot0 = u.total_conserved();
    std::vector<double> denom(tot0.size(), 0.0);
    for (int c = 0; c < setup.mesh->n_cells(); ++c)
        for (int v = 0; v < u.n_var; ++v)
            denom[v] += setup.mesh->cell_measure(c) * std::abs(u.mean(c, v));
    const bool assert_conservation =
        setup.all_periodic && (sc.scheme == "rkdg" || sc.scheme == "crkdg");

    res.min_density = std::numeric_limits<double>::max();
    res.min_pressure = std::numeric_limits<double>::max();
    auto track = [&](const FieldCoefficients& f) {
        if (!is_flow) return;
        const auto* euler = dynamic_cast<const EulerLaw*>(&law);
        double mean[kMaxVar];
        for (int c = 0; c < f.mesh->n_cells(); ++c) {
            f.cell_means(c, mean);
            res.min_density = std::min(res.min_density, mean[0]);
            res.min_pressure = std::min(res.min_pressure, euler->pressure(mean));
        }
    };
    track(u);

    const double fixed_dt =
        (sc.dt.kind == DtRule::Kind::fixed_ch) ? sc.dt.value * setup.mesh->h_max : 0.0;

    double t = 0.0;
    while (t < T - 1e-14 * std::max(1.0, T)) {
        if (sc.max_steps > 0 && res.steps >= sc.max_steps) break;
        double dt = (sc.dt.kind == DtRule::Kind::fixed_ch)
                        ? fixed_dt
                        : compute_dt(u, law, sc.dt.value, fixed_dt);
        if (t + dt > T) dt = T - t; // land exactly on the end time

        FieldCoefficients next;
        StepStats stats;
        if (sc.scheme == "rkdg")
            next = step_rkdg(tab, u, dt, ctx, sc.limiter, t, &stats);
        else if (sc.scheme == "crkdg")
            next = step_crkdg(tab, u, dt, ctx, sc.limiter, t, &stats);
        else if (sc.scheme == "shu_osher_hybrid")
            next = step_shu_osher_hybrid(u, dt, ctx, sc.limiter, t, &stats);
        else
            throw ConfigError("unknown scheme: " + sc.scheme);
        u = std::move(next);
        t += dt;
        ++res.steps;
        res.troubled_total += stats.troubled_cells;

        const std::vector<double> tot = u.total_conserved();
        for (size_t v = 0; v < tot.size(); ++v) {
            const double drift = std::abs(tot[v] - tot0[v]) / std::max(denom[v], 1e-300);
            res.max_drift = std::max(res.max_drift, drift);
        }
        if (assert_conservation) {
            const double budget = 1e-12 * std::max(1.0, res.steps / 100.0);
            if (res.max_drift > budget)
                throw NumericError("conservation drift " + std::to_string(res.max_drift) +
                                   " exceeds budget after step " +
                                   std::to_string(res.steps));
        }
        track(u);
    }

    res.end_time = t;
    if (!is_flow) {
        res.min_density = 0.0;
        res.min_pressure = 0.0;
    }
    if (setup.oracle) {
        res.has_oracle = true;
        const ErrorPair e = compute_errors(u, setup.oracle, t);
        res.l2_error = e.l2;
        res.linf_error = e.linf;
    }
    res.field = std::make_shared<FieldCoefficients>(std::move(u));
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

std::vector<ConvergenceRow> convergence_study(const Scenario& base,
                                              const std::vector<int>& sizes) {
    std::vector<ConvergenceRow> rows;
    for (size_t i = 0; i < sizes.size(); ++i) {
        Scenario sc = base;
        sc.nx = sizes[i];
        if (sc.ny > 0) sc.ny = sizes[i];
        const RunResult r = run_scenario(sc);
        if (!r.has_oracle)
            throw ConfigError("convergence_study: preset has no exact solution");
        ConvergenceRow row;
        row.n = sizes[i];
        row.l2 = r.l2_error;
        row.linf = r.linf_error;
        row.wall_seconds = r.wall_seconds;
        if (i > 0 && sizes[i] == 2 * sizes[i - 1]) {
            row.l2_order = std::log2(rows.back().l2 / row.l2);
            row.linf_order = std::log2(rows.back().linf / row.linf);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_error_table(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os << "N,L2_error,L2_order,Linf_error,Linf_order,wall_seconds\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.12e,%.4f,%.12e,%.4f,%.3f\n", r.n, r.l2,
                      r.l2_order, r.linf, r.linf_order, r.wall_seconds);
        os << buf;
    }
    return os.str();
}

void write_error_table(const std::vector<ConvergenceRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << format_error_table(rows);
}

namespace {

void primitive_means(const FieldCoefficients& f, const ConservationLaw& law, int c,
                     double* out, int& nv_out) {
    double mean[kMaxVar];
    f.cell_means(c, mean);
    if (law.has_eigenvectors()) {
        euler_cons_to_prim(law.dim(), mean, out);
        nv_out = law.n_var();
    } else {
        for (int v = 0; v < f.n_var; ++v) out[v] = mean[v];
        nv_out = f.n_var;
    }
}

} // namespace

void emit_outputs(const Scenario& sc, const RunResult& res, const std::string& outdir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create output directory " + outdir);
    const FieldCoefficients& f = *res.field;
    const MeshTopology& mesh = *f.mesh;
    const ScenarioSetup setup = build_setup(sc); // for the law identity
    const ConservationLaw* law = setup.law.get();

    char buf[64];
    auto fmt = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.12e", x);
        return std::string(buf);
    };

    if (sc.emit_profile) {
        std::ofstream out(outdir + "/" + sc.name + "_profile.csv");
        if (!out) throw IoError("cannot write profile output");
        out << (mesh.dimension == 1 ? "x" : "x,y");
        const bool flow = law->has_eigenvectors();
        if (flow) {
            out << ",rho,w";
            if (mesh.dimension == 2) out << ",v";
            out << ",p";
        } else {
            out << ",u";
        }
        out << "\n";
        for (int c = 0; c < mesh.n_cells(); ++c) {
            double vals[kMaxVar];
            int nv = 0;
            primitive_means(f, *law, c, vals, nv);
            out << fmt(mesh.cells[c].xc());
            if (mesh.dimension == 2) out << "," << fmt(mesh.cells[c].yc());
            for (int v = 0; v < nv; ++v) out << "," << fmt(vals[v]);
            out << "\n";
        }
    }

    if (sc.emit_points) {
        std::ofstream out(outdir + "/" + sc.name + "_points.csv");
        if (!out) throw IoError("cannot write points output");
        out << (mesh.dimension == 1 ? "x" : "x,y") << ",values...\n";
        const int ns = std::max(1, sc.samples_per_cell);
        double uh[kMaxVar];
        for (int c = 0; c < mesh.n_cells(); ++c) {
            for (int i = 0; i < ns; ++i) {
                const double xi = -1.0 + 2.0 * (i + 0.5) / ns;
                for (int j = 0; j < (mesh.dimension == 2 ? ns : 1); ++j) {
                    const double eta =
                        mesh.dimension == 2 ? -1.0 + 2.0 * (j + 0.5) / ns : 0.0;
                    f.eval_at(c, xi, eta, uh);
                    double x, y;
                    ReferenceBasis::to_physical(mesh.cells[c], mesh.dimension, xi, eta, x,
                                                y);
                    out << fmt(x);
                    if (mesh.dimension == 2) out << "," << fmt(y);
                    for (int v = 0; v < f.n_var; ++v) out << "," << fmt(uh[v]);
                    out << "\n";
                }
            }
        }
    }

    if (sc.emit_contour) {
        if (mesh.dimension != 2)
            throw ConfigError("contour output needs a 2D scenario");
        std::ofstream out(outdir + "/" + sc.name + "_contour.csv");
        if (!out) throw IoError("cannot write contour output");
        for (int j = 0; j < mesh.ny; ++j) {
            for (int i = 0; i < mesh.nx; ++i) {
                const int c = mesh.grid_cell[j * mesh.nx + i];
                if (i) out << ",";
                out << (c < 0 ? "nan" : fmt(f.mean(c, 0)));
            }
            out << "\n";
        }
    }
}

double l1_density_error(const FieldCoefficients& field,
                        const std::function<double(double, double)>& exact_density) {
    const MeshTopology& mesh = *field.mesh;
    const ReferenceBasis& b = *field.basis;
    const QuadratureRule g = gauss_rule(b.degree + 3);
    double err = 0.0;
    std::vector<double> phi(b.n_modes);
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const double J = mesh.cell_measure(c) / (mesh.dimension == 1 ? 2.0 : 4.0);
        const double* cc = field.coeffs(c, 0);
        for (int q = 0; q < g.size(); ++q) {
            b.eval_modes(g.points[q], 0.0, phi.data());
            double uh = 0.0;
            for (int m = 0; m < b.n_modes; ++m) uh += cc[m] * phi[m];
            double x, y;
            ReferenceBasis::to_physical(mesh.cells[c], mesh.dimension, g.points[q], 0.0,
                                        x, y);
            err += g.weights[q] * J * std::abs(uh - exact_density(x, y));
        }
    }
    return err;
}

EquivalenceReport equivalence_check(int n_fields, unsigned seed) {
    EquivalenceReport rep;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    struct Case {
        const char* tableau;
        int degree;
        double* slot;
    };
    Case cases[2] = {{"midpoint", 1, &rep.max_diff_midpoint},
                     {"rk3", 2, &rep.max_diff_rk3}};

    for (const Case& cs : cases) {
        const ButcherTableau& tab = tableau_by_name(cs.tableau);
        auto mesh = std::make_shared<MeshTopology>(build_interval_mesh(
            0.0, 1.0, 16, Perturbation::none, BoundarySpec::all(BoundaryTag::periodic)));
        auto basis = std::make_shared<ReferenceBasis>(build_basis(1, cs.degree));
        AdvectionLaw law(1.0);
        DgContext ctx;
        ctx.law = &law;
        ctx.flux.kind = FluxKind::upwind_linear;
        const double dt = 0.4 * mesh->h_max;
        LimiterConfig no_limiter;

        for (int trial = 0; trial < n_fields; ++trial) {
            FieldCoefficients u(mesh, basis, 1);
            for (double& x : u.data) x = dist(rng);
            const FieldCoefficients a = step_crkdg(tab, u, dt, ctx, no_limiter, 0.0);
            const FieldCoefficients b = lwdg_form_step(u, dt, ctx, tab.stages, 0.0);
            for (size_t i = 0; i < a.data.size(); ++i)
                *cs.slot = std::max(*cs.slot, std::abs(a.data[i] - b.data[i]));
        }
    }
    rep.pass = rep.max_diff_midpoint <= 1e-12 && rep.max_diff_rk3 <= 1e-12;
    return rep;
}

std::vector<double> godunov_fv_reference(const ConservationLaw& law,
                                         const std::function<double(double)>& u0,
                                         double a, double b, int n, double t_end,
                                         double cfl) {
    if (law.n_var() != 1 || law.dim() != 1)
        throw ParameterError("godunov_fv_reference: 1D scalar laws only");
    const double h = (b - a) / n;
    std::vector<double> u(n);
    const QuadratureRule g2 = gauss_rule(2);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int q = 0; q < 2; ++q)
            s += 0.5 * g2.weights[q] * u0(a + (i + 0.5 * (1.0 + g2.points[q])) * h);
        u[i] = s;
    }

    // Critical points of the flux over the data range, located once; the
    // interface extremum is then min/max over endpoint and interior critical
    // values.
    double lo = *std::min_element(u.begin(), u.end());
    double hi = *std::max_element(u.begin(), u.end());
    const double pad = 1e-9 * (1.0 + hi - lo);
    lo -= pad;
    hi += pad;
    auto fval = [&](double x) {
        double f;
        law.flux(&x, 0, &f);
        return f;
    };
    std::vector<double> crit;
    {
        const int ns = 4096;
        double prev = fval(lo);
        double cur = fval(lo + (hi - lo) / ns);
        for (int i = 1; i + 1 <= ns; ++i) {
            const double next = fval(lo + (hi - lo) * (i + 1) / ns);
            if ((cur - prev) * (next - cur) < 0.0)
                crit.push_back(lo + (hi - lo) * i / ns);
            prev = cur;
            cur = next;
        }
    }
    auto godunov = [&](double ul, double ur) {
        if (ul == ur) return fval(ul);
        const double umin = std::min(ul, ur), umax = std::max(ul, ur);
        double fmin = std::min(fval(ul), fval(ur));
        double fmax = std::max(fval(ul), fval(ur));
        for (double cpt : crit)
            if (cpt > umin && cpt < umax) {
                const double fc = fval(cpt);
                fmin = std::min(fmin, fc);
                fmax = std::max(fmax, fc);
            }
        return ul <= ur ? fmin : fmax;
    };

    // Wave-speed bound over the full data range (invariant-domain bound for
    // scalar laws), not just at cell values: nonconvex fluxes hide their
    // fastest characteristics between the Riemann states.
    double range_speed = 0.0;
    {
        const int ns = 4096;
        double prev = fval(lo);
        for (int i = 1; i <= ns; ++i) {
            const double cur = fval(lo + (hi - lo) * i / ns);
            range_speed = std::max(range_speed,
                                   std::abs(cur - prev) / ((hi - lo) / ns));
            prev = cur;
        }
    }

    double t = 0.0;
    std::vector<double> flux(n + 1), unew(n);
    while (t < t_end - 1e-14) {
        const double smax = range_speed;
        double dt = (smax > 0.0) ? cfl * h / smax : (t_end - t);
        dt = std::min(dt, t_end - t);
        for (int i = 0; i <= n; ++i) {
            const double ul = u[std::max(0, i - 1)];
            const double ur = u[std::min(n - 1, i)];
            flux[i] = godunov(ul, ur);
        }
        for (int i = 0; i < n; ++i) unew[i] = u[i] - dt / h * (flux[i + 1] - flux[i]);
        u.swap(unew);
        t += dt;
    }
    return u;
}

Scenario scenario_from_sections(const std::vector<ConfigSection>& sections) {
    static const std::set<std::string> known_keys = {
        "name",        "preset",     "scheme",          "tableau",
        "degree",      "flux",       "nx",              "ny",
        "perturbation", "boundary",  "end_time",        "max_steps",
        "dt_rule",     "dt_value",   "limiter",         "tvb_m",
        "characteristic", "weno_eps", "weno_power",     "emit",
        "samples_per_cell"};

    const ConfigSection* main = nullptr;
    const ConfigSection* tab = nullptr;
    for (const auto& s : sections) {
        if (s.name == "scenario") main = &s;
        else if (s.name == "tableau") tab = &s;
        else if (s.name == "convergence") continue; // consumed by the CLI
        else throw ConfigError("unknown config section [" + s.name + "]");
    }
    if (!main) throw ConfigError("config needs a [scenario] section");
    for (const auto& [k, v] : main->entries)
        if (!known_keys.count(k))
            throw ConfigError("unknown key '" + k + "' in [scenario]");

    Scenario sc;
    sc.name = main->get_or("name", "run");
    sc.preset = main->get("preset");
    sc.scheme = main->get_or("scheme", "crkdg");
    sc.tableau = main->get_or("tableau", "");
    sc.degree = main->get_int_or("degree", 1);
    sc.flux = main->get_or("flux", "");
    sc.nx = main->get_int("nx");
    sc.ny = main->get_int_or("ny", 0);
    const std::string pert = main->get_or("perturbation", "none");
    if (pert == "none")
        sc.perturbation = Perturbation::none;
    else if (pert == "alternating")
        sc.perturbation = Perturbation::alternating;
    else
        throw ConfigError("unknown perturbation: " + pert);
    sc.boundary = main->get_or("boundary", "");
    sc.end_time = main->get_double_or("end_time", -1.0);
    sc.max_steps = main->get_int_or("max_steps", 0);
    const std::string rule = main->get_or("dt_rule", "cfl");
    if (rule == "cfl")
        sc.dt.kind = DtRule::Kind::cfl;
    else if (rule == "fixed_ch")
        sc.dt.kind = DtRule::Kind::fixed_ch;
    else
        throw ConfigError("unknown dt_rule: " + rule);
    sc.dt.value = main->get_double_or("dt_value", 0.3);
    sc.limiter.kind = limiter_kind_from_name(main->get_or("limiter", "none"));
    sc.limiter.tvb_m = main->get_double_or("tvb_m", 0.0);
    sc.limiter.characteristic = main->get_bool_or("characteristic", false);
    sc.limiter.weno_eps = main->get_double_or("weno_eps", 1e-6);
    sc.limiter.weno_power = main->get_int_or("weno_power", 2);
    sc.samples_per_cell = main->get_int_or("samples_per_cell", 3);
    if (main->has("emit")) {
        std::istringstream is(main->get("emit"));
        std::string word;
        while (is >> word) {
            if (word == "profile") sc.emit_profile = true;
            else if (word == "points") sc.emit_points = true;
            else if (word == "contour") sc.emit_contour = true;
            else if (word == "errors") sc.emit_errors = true;
            else throw ConfigError("unknown emit request: " + word);
        }
    }

    if (sc.tableau == "custom") {
        if (!tab) throw ConfigError("tableau = custom needs a [tableau] section");
        const int s = tab->get_int("stages");
        const int order = tab->get_int("order");
        std::vector<double> A(s * s, 0.0);
        for (int i = 1; i < s; ++i) {
            const auto row = tab->get_doubles("a_row_" + std::to_string(i + 1));
            if (static_cast<int>(row.size()) != i)
                throw ConfigError("a_row_" + std::to_string(i + 1) + " needs " +
                                  std::to_string(i) + " entries");
            for (int j = 0; j < i; ++j) A[i * s + j] = row[j];
        }
        const auto bw = tab->get_doubles("b");
        const auto cw = tab->get_doubles("c");
        if (static_cast<int>(bw.size()) != s || static_cast<int>(cw.size()) != s)
            throw ConfigError("[tableau] b and c need one entry per stage");
        sc.custom_tableau = ButcherTableau("custom", s, A, bw, cw, order, 0);
    } else if (tab) {
        throw ConfigError("[tableau] section present but tableau != custom");
    }
    return sc;
}

Scenario scenario_from_config_file(const std::string& path) {
    return scenario_from_sections(parse_config_file(path));
}

} // namespace crkdg
