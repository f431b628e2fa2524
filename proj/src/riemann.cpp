#include "crkdg/riemann.hpp"
#include "crkdg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace crkdg {

FluxKind flux_kind_from_name(const std::string& name) {
    if (name == "lf_local" || name == "lax_friedrichs_local")
        return FluxKind::lax_friedrichs_local;
    if (name == "lf_global" || name == "lax_friedrichs_global")
        return FluxKind::lax_friedrichs_global;
    if (name == "godunov") return FluxKind::godunov_scalar;
    if (name == "upwind") return FluxKind::upwind_linear;
    throw ConfigError("unknown flux scheme: " + name);
}

namespace {

// Scalar extremum of g over [a,b]: dense sampling then golden-section refinement.
double scalar_extremum(const std::function<double(double)>& g, double a, double b,
                       bool want_min) {
    const int n = 512;
    const double sgn = want_min ? 1.0 : -1.0;
    double best = sgn * g(a);
    int best_i = 0;
    for (int i = 1; i <= n; ++i) {
        const double u = a + (b - a) * i / n;
        const double val = sgn * g(u);
        if (val < best) {
            best = val;
            best_i = i;
        }
    }
    double lo = a + (b - a) * std::max(0, best_i - 1) / n;
    double hi = a + (b - a) * std::min(n, best_i + 1) / n;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = sgn * g(x1), f2 = sgn * g(x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = sgn * g(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = sgn * g(x2);
        }
    }
    return sgn * std::min({best, f1, f2});
}

void check_trace(const ConservationLaw& law, const double* u, const char* side) {
    if (!law.admissible(u))
        throw AdmissibilityError(std::string("numerical_flux: inadmissible ") + side +
                                 " trace for law " + law.name());
}

} // namespace

void numerical_flux(const FluxScheme& scheme, const ConservationLaw& law,
                    const double* uL, const double* uR, const double* nu, double* out,
                    double alpha) {
    const int nv = law.n_var();
    check_trace(law, uL, "interior");
    check_trace(law, uR, "exterior");

    switch (scheme.kind) {
        case FluxKind::lax_friedrichs_local:
        case FluxKind::lax_friedrichs_global: {
            double a;
            if (scheme.kind == FluxKind::lax_friedrichs_global)
                a = scheme.global_alpha;
            else
                a = (alpha >= 0.0) ? alpha
                                   : std::max(law.wave_speed(uL, nu), law.wave_speed(uR, nu));
            double fl[kMaxVar], fr[kMaxVar];
            law.flux_dot(uL, nu, fl);
            law.flux_dot(uR, nu, fr);
            for (int v = 0; v < nv; ++v)
                out[v] = 0.5 * (fl[v] + fr[v] - a * (uR[v] - uL[v]));
            return;
        }
        case FluxKind::godunov_scalar: {
            if (nv != 1)
                throw ConfigError("numerical_flux: Godunov flux is scalar-only");
            auto g = [&](double u) {
                double f;
                double state = u;
                law.flux_dot(&state, nu, &f);
                return f;
            };
            if (uL[0] == uR[0]) {
                out[0] = g(uL[0]);
            } else if (uL[0] < uR[0]) {
                out[0] = scalar_extremum(g, uL[0], uR[0], true);
            } else {
                out[0] = scalar_extremum(g, uR[0], uL[0], false);
            }
            return;
        }
        case FluxKind::upwind_linear: {
            const auto* adv = dynamic_cast<const AdvectionLaw*>(&law);
            if (!adv)
                throw ConfigError("numerical_flux: upwind flux needs a linear advection law");
            const double bn = adv->beta()[0] * nu[0] + adv->beta()[1] * nu[1];
            out[0] = bn * (bn >= 0.0 ? uL[0] : uR[0]);
            return;
        }
    }
    throw ConfigError("numerical_flux: unknown scheme");
}

} // namespace crkdg
