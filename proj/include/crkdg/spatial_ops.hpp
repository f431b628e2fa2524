#ifndef CRKDG_SPATIAL_OPS_HPP
#define CRKDG_SPATIAL_OPS_HPP

#include "crkdg/field.hpp"
#include "crkdg/physics.hpp"
#include "crkdg/riemann.hpp"

namespace crkdg {

// Everything the coupled DG operator needs besides the field itself.
struct DgContext {
    const ConservationLaw* law = nullptr;
    FluxScheme flux;
    const BoundaryPolicy* boundary = nullptr;
};

// Coupled discrete divergence: per cell K and mode i,
//   (div u)_i = (1/J) [ -int_K f(u_h).grad(phi_i) + sum_e int_e fhat.nu phi_i ],
// with the numerical flux fhat at interior edges and ghost data (at `time`) at
// boundary edges. The result on a cell depends only on the cell and its edge
// neighbors. Throws AdmissibilityError (with cell id) on inadmissible
// quadrature states.
FieldCoefficients dg_divergence(const FieldCoefficients& u, const DgContext& ctx,
                                double time);

// Cell-local divergence: interior traces only, no neighbor or ghost access.
// Equals the L2 projection of div f(u_h) when integration is exact.
FieldCoefficients local_divergence(const FieldCoefficients& u,
                                   const ConservationLaw& law);

// Physical coordinates of an edge quadrature point (owner-side parameterization).
void edge_point_physical(const MeshTopology& mesh, const ReferenceBasis& basis,
                         const MeshEdge& edge, int q, double& x, double& y);

} // namespace crkdg

#endif
