#ifndef CRKDG_RIEMANN_HPP
#define CRKDG_RIEMANN_HPP

#include "crkdg/physics.hpp"

namespace crkdg {

enum class FluxKind {
    lax_friedrichs_local,  // alpha from the two adjacent states
    lax_friedrichs_global, // fixed alpha
    godunov_scalar,
    upwind_linear
};

struct FluxScheme {
    FluxKind kind = FluxKind::lax_friedrichs_local;
    double global_alpha = 0.0;
};

FluxKind flux_kind_from_name(const std::string& name);

// Single-valued interface flux f_hat(uL, uR) . nu. Consistent and
// anti-symmetric: f_hat(u,u) = f(u).nu and f_hat(uL,uR,nu) = -f_hat(uR,uL,-nu).
//
// For the local Lax-Friedrichs scheme the dissipation coefficient may be fixed
// by the caller (alpha >= 0, e.g. a per-edge value from cell means); by default
// it is taken from the two traces.
void numerical_flux(const FluxScheme& scheme, const ConservationLaw& law,
                    const double* uL, const double* uR, const double* nu, double* out,
                    double alpha = -1.0);

} // namespace crkdg

#endif
