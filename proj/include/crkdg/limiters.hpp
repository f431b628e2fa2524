#ifndef CRKDG_LIMITERS_HPP
#define CRKDG_LIMITERS_HPP

#include "crkdg/field.hpp"
#include "crkdg/physics.hpp"

#include <array>
#include <vector>

namespace crkdg {

enum class LimiterKind { none, tvb_minmod, tvb_weno };

struct LimiterConfig {
    LimiterKind kind = LimiterKind::none;
    double tvb_m = 0.0;        // modified-minmod threshold constant M
    bool characteristic = false;
    double weno_eps = 1e-6;
    int weno_power = 2;
    std::array<double, 3> weno_linear = {0.001, 0.998, 0.001};
};

LimiterKind limiter_kind_from_name(const std::string& name);

// Modified-minmod troubled-cell detection. A cell is flagged when the TVB
// minmod (threshold M h^2, h the cell width in the tested direction) alters an
// interface deviation. With `characteristic`, differences are mapped through
// R^-1 at the cell mean first. Returns one flag per cell; k = 0 flags nothing.
std::vector<char> detect_troubled_cells(const FieldCoefficients& u, double M,
                                        bool characteristic,
                                        const ConservationLaw& law);

// WENO rebuild of flagged cells (1D, k <= 3): convex combination of the cell's
// own polynomial and mean-shifted copies of the neighbors', weighted by
// smoothness indicators. Cell means are preserved exactly; unflagged cells are
// untouched.
void apply_weno_limiter_1d(FieldCoefficients& u, const std::vector<char>& flags,
                           const LimiterConfig& cfg, const ConservationLaw& law);

// TVB minmod slope limiter on flagged cells (1D analogue included): slopes
// replaced by the modified minmod of (own slope, forward/backward mean
// differences), higher modes zeroed, means preserved.
void apply_minmod_limiter(FieldCoefficients& u, const std::vector<char>& flags,
                          const LimiterConfig& cfg, const ConservationLaw& law);

// Flatten any cell whose polynomial leaves the admissible set at the operator
// quadrature points to its cell mean (always admissible, conservation-neutral).
// Returns the number of flattened cells.
int enforce_admissible_cells(FieldCoefficients& u, const ConservationLaw& law);

// Detection + application dispatch, followed by the admissibility fallback;
// no-op for LimiterKind::none or k = 0. Returns the number of flagged cells.
int apply_limiter(FieldCoefficients& u, const LimiterConfig& cfg,
                  const ConservationLaw& law);

} // namespace crkdg

#endif
