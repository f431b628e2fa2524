#ifndef CRKDG_TIME_STEPPERS_HPP
#define CRKDG_TIME_STEPPERS_HPP

#include "crkdg/limiters.hpp"
#include "crkdg/spatial_ops.hpp"
#include "crkdg/tableau.hpp"

namespace crkdg {

struct StepStats {
    long troubled_cells = 0;
};

// One step of the fully coupled scheme: every stage uses the DG divergence
// with ghost data at its stage time; the limiter runs after every computed
// stage and after the final combination.
FieldCoefficients step_rkdg(const ButcherTableau& tab, const FieldCoefficients& un,
                            double dt, const DgContext& ctx, const LimiterConfig& lim,
                            double tn, StepStats* stats = nullptr);

// One step of the compact scheme: inner stages use the cell-local divergence
// (no neighbor or ghost access); the final update applies the DG divergence to
// every stage value with ghost data at that stage's time. The limiter runs
// once, after the final update.
FieldCoefficients step_crkdg(const ButcherTableau& tab, const FieldCoefficients& un,
                             double dt, const DgContext& ctx, const LimiterConfig& lim,
                             double tn, StepStats* stats = nullptr);

// Negative control: the two-stage convex-combination update with a local first
// stage,
//   u1    = un - dt * div_loc f(un)
//   un+1  = un/2 + (u1 - dt * div_dg f(u1))/2,
// which is first-order accurate and not conservative.
FieldCoefficients step_shu_osher_hybrid(const FieldCoefficients& un, double dt,
                                        const DgContext& ctx, const LimiterConfig& lim,
                                        double tn, StepStats* stats = nullptr);

// Single-step form of the compact scheme for a linear law with a p-stage,
// p-th-order tableau:
//   un+1 = un - dt * div_dg( sum_{i<p} dt^i/(i+1)! * L^i un ),  L = -div_loc.
// Used as the algebraic cross-check of step_crkdg.
FieldCoefficients lwdg_form_step(const FieldCoefficients& un, double dt,
                                 const DgContext& ctx, int p, double tn);

// dt = CFL * min over cells of dx / wavespeed (1D), or
// CFL / (lx/dx + ly/dy) minimized over cells (2D), wave speeds at cell means.
// Falls back to `fallback_dt` when every wave speed vanishes.
double compute_dt(const FieldCoefficients& u, const ConservationLaw& law, double cfl,
                  double fallback_dt = 0.0);

} // namespace crkdg

#endif
