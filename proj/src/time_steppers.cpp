#include "crkdg/time_steppers.hpp"
#include "crkdg/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace crkdg {

namespace {

[[noreturn]] void rethrow_with_stage(const AdmissibilityError& e, int stage) {
    throw AdmissibilityError(std::string(e.what()) + " (stage " +
                                 std::to_string(stage + 1) + ")",
                             e.cell, stage + 1);
}

void limit(FieldCoefficients& u, const LimiterConfig& lim, const ConservationLaw& law,
           StepStats* stats) {
    const int flagged = apply_limiter(u, lim, law);
    if (stats) stats->troubled_cells += flagged;
}

} // namespace

FieldCoefficients step_rkdg(const ButcherTableau& tab, const FieldCoefficients& un,
                            double dt, const DgContext& ctx, const LimiterConfig& lim,
                            double tn, StepStats* stats) {
    if (dt < 0.0) throw ParameterError("step_rkdg: negative dt");
    const int s = tab.stages;
    const ConservationLaw& law = *ctx.law;

    std::vector<FieldCoefficients> div(s);
    try {
        div[0] = dg_divergence(un, ctx, tn + tab.c(0) * dt);
    } catch (const AdmissibilityError& e) {
        rethrow_with_stage(e, 0);
    }
    for (int i = 1; i < s; ++i) {
        FieldCoefficients ui = un;
        for (int j = 0; j < i; ++j)
            if (tab.a(i, j) != 0.0) ui.axpy(-dt * tab.a(i, j), div[j]);
        limit(ui, lim, law, stats);
        try {
            div[i] = dg_divergence(ui, ctx, tn + tab.c(i) * dt);
        } catch (const AdmissibilityError& e) {
            rethrow_with_stage(e, i);
        }
    }

    FieldCoefficients out = un;
    for (int i = 0; i < s; ++i)
        if (tab.b(i) != 0.0) out.axpy(-dt * tab.b(i), div[i]);
    limit(out, lim, law, stats);
    return out;
}

FieldCoefficients step_crkdg(const ButcherTableau& tab, const FieldCoefficients& un,
                             double dt, const DgContext& ctx, const LimiterConfig& lim,
                             double tn, StepStats* stats) {
    if (dt < 0.0) throw ParameterError("step_crkdg: negative dt");
    const int s = tab.stages;
    const ConservationLaw& law = *ctx.law;

    // Inner stages from the local operator; stage values are kept because the
    // final combination re-visits every one of them with the DG operator.
    std::vector<FieldCoefficients> stage(s);
    std::vector<FieldCoefficients> loc(s);
    stage[0] = un;
    for (int i = 1; i < s; ++i) {
        stage[i] = un;
        for (int j = 0; j < i; ++j) {
            if (tab.a(i, j) == 0.0) continue;
            if (loc[j].data.empty()) {
                try {
                    loc[j] = local_divergence(stage[j], law);
                } catch (const AdmissibilityError& e) {
                    rethrow_with_stage(e, j);
                }
            }
            stage[i].axpy(-dt * tab.a(i, j), loc[j]);
        }
    }

    FieldCoefficients out = un;
    for (int i = 0; i < s; ++i) {
        if (tab.b(i) == 0.0) continue;
        FieldCoefficients div;
        try {
            div = dg_divergence(stage[i], ctx, tn + tab.c(i) * dt);
        } catch (const AdmissibilityError& e) {
            rethrow_with_stage(e, i);
        }
        out.axpy(-dt * tab.b(i), div);
    }
    limit(out, lim, law, stats);
    return out;
}

FieldCoefficients step_shu_osher_hybrid(const FieldCoefficients& un, double dt,
                                        const DgContext& ctx, const LimiterConfig& lim,
                                        double tn, StepStats* stats) {
    if (dt < 0.0) throw ParameterError("step_shu_osher_hybrid: negative dt");
    const ConservationLaw& law = *ctx.law;

    FieldCoefficients u1 = un;
    u1.axpy(-dt, local_divergence(un, law));

    FieldCoefficients div = dg_divergence(u1, ctx, tn + dt);
    // un+1 = un/2 + (u1 - dt*div)/2
    FieldCoefficients out = un;
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = 0.5 * un.data[i] + 0.5 * (u1.data[i] - dt * div.data[i]);
    limit(out, lim, law, stats);
    return out;
}

FieldCoefficients lwdg_form_step(const FieldCoefficients& un, double dt,
                                 const DgContext& ctx, int p, double tn) {
    const ConservationLaw& law = *ctx.law;
    // v = sum_{i=0}^{p-1} dt^i/(i+1)! L^i un with L = -div_loc.
    FieldCoefficients term = un;
    FieldCoefficients v = un; // i = 0 term, weight 1/1!
    double factorial = 1.0;
    for (int i = 1; i < p; ++i) {
        FieldCoefficients lterm = local_divergence(term, law);
        term = std::move(lterm);
        for (double& x : term.data) x *= -dt;
        factorial *= (i + 1);
        v.axpy(1.0 / factorial, term);
    }
    FieldCoefficients out = un;
    out.axpy(-dt, dg_divergence(v, ctx, tn));
    return out;
}

double compute_dt(const FieldCoefficients& u, const ConservationLaw& law, double cfl,
                  double fallback_dt) {
    const MeshTopology& mesh = *u.mesh;
    static constexpr double ex[2] = {1.0, 0.0};
    static constexpr double ey[2] = {0.0, 1.0};
    double best = std::numeric_limits<double>::max();
    double mean[kMaxVar];
    for (int c = 0; c < mesh.n_cells(); ++c) {
        u.cell_means(c, mean);
        if (!law.admissible(mean))
            throw AdmissibilityError("compute_dt: inadmissible cell mean", c);
        const CellGeometry& g = mesh.cells[c];
        if (mesh.dimension == 1) {
            const double lx = law.wave_speed(mean, ex);
            if (lx > 0.0) best = std::min(best, g.dx() / lx);
        } else {
            const double denom = law.wave_speed(mean, ex) / g.dx() +
                                 law.wave_speed(mean, ey) / g.dy();
            if (denom > 0.0) best = std::min(best, 1.0 / denom);
        }
    }
    if (best == std::numeric_limits<double>::max()) {
        if (fallback_dt > 0.0) return fallback_dt;
        throw ConfigError("compute_dt: zero wave speed everywhere and no fallback dt");
    }
    return cfl * best;
}

} // namespace crkdg
