#include "crkdg/vonneumann.hpp"
#include "crkdg/errors.hpp"
#include "crkdg/spatial_ops.hpp"
#include "crkdg/time_steppers.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>

namespace crkdg {

SchemeKind scheme_kind_from_name(const std::string& name) {
    if (name == "rkdg") return SchemeKind::rkdg;
    if (name == "crkdg") return SchemeKind::crkdg;
    throw ParameterError("unknown scheme for stability analysis: " + name);
}

AmplificationModel::AmplificationModel(SchemeKind scheme_, const ButcherTableau& tab,
                                       int degree_)
    : scheme(scheme_), tableau(tab), degree(degree_) {
    if (degree < 0 || degree > 4)
        throw ParameterError("AmplificationModel: degree must be in [0,4]");

    // Probe mesh: three unit cells, periodic, advection speed 1, upwind flux.
    auto mesh = std::make_shared<MeshTopology>(
        build_interval_mesh(0.0, 3.0, 3, Perturbation::none,
                            BoundarySpec::all(BoundaryTag::periodic)));
    auto basis = std::make_shared<ReferenceBasis>(build_basis(1, degree));
    const AdvectionLaw law(1.0);
    DgContext ctx;
    ctx.law = &law;
    ctx.flux.kind = FluxKind::upwind_linear;

    const int n = basis->n_modes;
    dg_self.resize(n, n);
    dg_upwind.resize(n, n);
    local_block.resize(n, n);
    for (int m = 0; m < n; ++m) {
        FieldCoefficients probe(mesh, basis, 1);
        probe.coeffs(1, 0)[m] = 1.0;
        const FieldCoefficients dg = dg_divergence(probe, ctx, 0.0);
        const FieldCoefficients loc = local_divergence(probe, law);
        for (int i = 0; i < n; ++i) {
            dg_self(i, m) = dg.coeffs(1, 0)[i];    // response of the probed cell
            dg_upwind(i, m) = dg.coeffs(2, 0)[i];  // response of the downwind cell
            local_block(i, m) = loc.coeffs(1, 0)[i];
        }
    }
}

Eigen::MatrixXcd AmplificationModel::amplification(double theta, double cfl) const {
    const int n = static_cast<int>(dg_self.rows());
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -theta));
    const Eigen::MatrixXcd s_dg =
        dg_self.cast<std::complex<double>>() + phase * dg_upwind.cast<std::complex<double>>();
    const Eigen::MatrixXcd s_loc = local_block.cast<std::complex<double>>();
    const Eigen::MatrixXcd& s_inner = (scheme == SchemeKind::crkdg) ? s_loc : s_dg;

    // dt = cfl * h / |beta| with h = 1, beta = 1.
    const double dt = cfl;
    const int s = tableau.stages;
    std::vector<Eigen::MatrixXcd> stage(s);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < s; ++i) {
        stage[i] = eye;
        for (int j = 0; j < i; ++j)
            if (tableau.a(i, j) != 0.0)
                stage[i] -= dt * tableau.a(i, j) * (s_inner * stage[j]);
    }
    Eigen::MatrixXcd g = eye;
    for (int i = 0; i < s; ++i)
        if (tableau.b(i) != 0.0) g -= dt * tableau.b(i) * (s_dg * stage[i]);
    return g;
}

double AmplificationModel::spectral_radius(double theta, double cfl) const {
    const Eigen::MatrixXcd g = amplification(theta, cfl);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g, false);
    double rho = 0.0;
    for (int i = 0; i < g.rows(); ++i) rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    return rho;
}

Eigen::MatrixXcd build_amplification(SchemeKind scheme, const ButcherTableau& tableau,
                                     int degree, double theta, double cfl) {
    if (theta < 0.0 || theta >= 2.0 * M_PI)
        throw ParameterError("build_amplification: theta must lie in [0, 2*pi)");
    if (cfl < 0.0) throw ParameterError("build_amplification: cfl must be nonnegative");
    return AmplificationModel(scheme, tableau, degree).amplification(theta, cfl);
}

double max_cfl(SchemeKind scheme, const ButcherTableau& tableau, int degree) {
    const AmplificationModel model(scheme, tableau, degree);
    const int n_theta = 2048;
    auto stable = [&](double cfl) {
        for (int i = 0; i < n_theta; ++i) {
            const double theta = 2.0 * M_PI * i / n_theta;
            if (model.spectral_radius(theta, cfl) > 1.0 + 1e-10) return false;
        }
        return true;
    };
    if (!stable(1e-6))
        throw NumericError("max_cfl: scheme is unstable at vanishing CFL");
    double lo = 1e-6, hi = 2.0;
    if (stable(hi)) return hi;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<CflEntry> cfl_table() {
    std::vector<CflEntry> rows;
    rows.push_back({"crkdg", "midpoint", 1,
                    max_cfl(SchemeKind::crkdg, tableau_by_name("midpoint"), 1)});
    rows.push_back({"crkdg", "rk3", 2, max_cfl(SchemeKind::crkdg, tableau_by_name("rk3"), 2)});
    rows.push_back(
        {"rkdg", "heun", 1, max_cfl(SchemeKind::rkdg, tableau_by_name("heun"), 1)});
    rows.push_back(
        {"rkdg", "ssprk3", 2, max_cfl(SchemeKind::rkdg, tableau_by_name("ssprk3"), 2)});
    return rows;
}

} // namespace crkdg
