#ifndef CRKDG_QUADRATURE_HPP
#define CRKDG_QUADRATURE_HPP

#include <vector>

namespace crkdg {

// Quadrature rule on the reference interval [-1,1].
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
};

// Gauss-Legendre rule with n points, exact for polynomials of degree <= 2n-1.
// Valid for 1 <= n <= 20.
QuadratureRule gauss_rule(int n_points);

} // namespace crkdg

#endif
