#ifndef CRKDG_BASIS_HPP
#define CRKDG_BASIS_HPP

#include "crkdg/quadrature.hpp"

#include <array>
#include <functional>
#include <vector>

namespace crkdg {

// Axis-aligned cell geometry. 1D cells use [x0,x1] only.
struct CellGeometry {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;

    double dx() const { return x1 - x0; }
    double dy() const { return y1 - y0; }
    double xc() const { return 0.5 * (x0 + x1); }
    double yc() const { return 0.5 * (y0 + y1); }
};

// Orthonormal modal basis on the reference cell ([-1,1] or [-1,1]^2) together
// with the quadrature rules and evaluation tables used by the discrete operators.
//
// Mode 0 is the constant mode; the mean of a field on a cell equals
// coeff_0 * const_mode_value.
class ReferenceBasis {
public:
    int dimension = 1;
    int degree = 0;
    int n_modes = 1;

    // Each mode is stored as a polynomial in the reference coordinates:
    // mode m = sum_t mode_coeffs[m][t] * xi^mono_px[t] * eta^mono_py[t].
    std::vector<int> mono_px, mono_py;
    std::vector<std::vector<double>> mode_coeffs;

    // Volume rule: (k+2) Gauss points per direction.
    std::vector<std::array<double, 2>> vol_pts;
    std::vector<double> vol_w;
    int n_vol() const { return static_cast<int>(vol_pts.size()); }

    // phi_vol[q*n_modes + m]; dphi_vol[(q*dimension + d)*n_modes + m]
    std::vector<double> phi_vol;
    std::vector<double> dphi_vol;

    // Reference edges. 1D: 0 = left endpoint, 1 = right endpoint (one point each).
    // 2D: 0 = xi=-1, 1 = xi=+1, 2 = eta=-1, 3 = eta=+1, each with (k+2) Gauss
    // points ordered ascending in the varying coordinate, so the point ordering
    // matches across the two cells sharing an edge.
    int n_edges = 2;
    int n_edge_pts = 1;
    std::vector<double> edge_w;
    std::vector<std::array<double, 2>> edge_pts; // [edge*n_edge_pts + q]
    std::vector<double> phi_edge;                // [(edge*n_edge_pts + q)*n_modes + m]

    double const_mode_value = 0.0;

    const double* phi_at_vol(int q) const { return &phi_vol[q * n_modes]; }
    const double* dphi_at_vol(int q, int d) const {
        return &dphi_vol[(q * dimension + d) * n_modes];
    }
    const double* phi_at_edge(int edge, int q) const {
        return &phi_edge[(edge * n_edge_pts + q) * n_modes];
    }

    // Evaluate all modes (or their reference gradients) at an arbitrary point.
    void eval_modes(double xi, double eta, double* out) const;
    void eval_grads(double xi, double eta, double* dxi, double* deta) const;

    // Map a physical point into this cell's reference coordinates and back.
    static void to_reference(const CellGeometry& cell, int dim, double x, double y,
                             double& xi, double& eta);
    static void to_physical(const CellGeometry& cell, int dim, double xi, double eta,
                            double& x, double& y);
};

// Build the orthonormal basis of total degree <= k. 1D uses scaled Legendre
// polynomials; 2D orthonormalizes the total-degree monomials (ordered by degree,
// then descending xi exponent) against the stored volume rule.
ReferenceBasis build_basis(int dimension, int degree);

// L2 projection of a pointwise sampler onto one cell. The sampler receives a
// physical point and writes n_var values; coefficients are written var-major
// (coeffs[v*n_modes + m]). Throws NumericError on non-finite samples.
void l2_project(const std::function<void(double, double, double*)>& sampler,
                const CellGeometry& cell, const ReferenceBasis& basis, int n_var,
                double* coeffs, int cell_id = -1);

} // namespace crkdg

#endif
