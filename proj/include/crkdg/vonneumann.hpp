#ifndef CRKDG_VONNEUMANN_HPP
#define CRKDG_VONNEUMANN_HPP

#include "crkdg/tableau.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace crkdg {

enum class SchemeKind { rkdg, crkdg };

SchemeKind scheme_kind_from_name(const std::string& name);

// Fourier-symbol model of one time step of the 1D linear-advection scheme with
// the upwind flux: G(theta) maps the modal coefficients of a cell to their
// values after one step for the mode u_j = u_hat e^{i j theta}. The operator
// blocks (self coupling, upwind-neighbor coupling, and the cell-local
// derivative) are extracted from the discrete divergence operators by probing
// unit coefficients on a small periodic mesh.
class AmplificationModel {
public:
    AmplificationModel(SchemeKind scheme, const ButcherTableau& tableau, int degree);

    Eigen::MatrixXcd amplification(double theta, double cfl) const;
    double spectral_radius(double theta, double cfl) const;

    SchemeKind scheme;
    ButcherTableau tableau;
    int degree;
    Eigen::MatrixXd dg_self;    // A_0 block of the DG divergence (h = 1)
    Eigen::MatrixXd dg_upwind;  // A_{-1} block (coupling to the upwind cell)
    Eigen::MatrixXd local_block; // cell-local derivative block
};

// G(theta) for one step at the given CFL number (dt = cfl * h with beta = 1).
Eigen::MatrixXcd build_amplification(SchemeKind scheme, const ButcherTableau& tableau,
                                     int degree, double theta, double cfl);

// Largest CFL number for which the spectral radius of G stays within
// 1 + 1e-10 over a 2048-point theta grid; bisection on (0, 2] to 1e-4.
double max_cfl(SchemeKind scheme, const ButcherTableau& tableau, int degree);

// Rows of the summary table emitted by the CLI.
struct CflEntry {
    std::string scheme;
    std::string tableau;
    int degree;
    double cfl_max;
};
std::vector<CflEntry> cfl_table();

} // namespace crkdg

#endif
