#include "crkdg/basis.hpp"
#include "crkdg/errors.hpp"
#include "crkdg/quadrature.hpp"

#include <cmath>
#include <doctest.h>
#include <functional>
#include <random>

using namespace crkdg;

namespace {

// Reference integral of xi^a over [-1,1].
double mono_integral_1d(int a) { return (a % 2) ? 0.0 : 2.0 / (a + 1); }

double integrate_1d(const QuadratureRule& r, const std::function<double(double)>& f) {
    double s = 0.0;
    for (int q = 0; q < r.size(); ++q) s += r.weights[q] * f(r.points[q]);
    return s;
}

} // namespace

TEST_CASE("gauss_rule small cases") {
    const QuadratureRule r1 = gauss_rule(1);
    CHECK(r1.points == std::vector<double>{0.0});
    CHECK(r1.weights == std::vector<double>{2.0});

    const QuadratureRule r2 = gauss_rule(2);
    CHECK(r2.points[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.points[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    // 3-point rule integrates x^4 exactly: analytic value 2/5.
    const QuadratureRule r3 = gauss_rule(3);
    const double quartic = integrate_1d(r3, [](double x) { return x * x * x * x; });
    CHECK(std::abs(quartic - 0.4) < 1e-15);
}

TEST_CASE("gauss_rule exactness, weight positivity, parameter errors") {
    for (int n = 1; n <= 20; ++n) {
        const QuadratureRule r = gauss_rule(n);
        double wsum = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            wsum += w;
        }
        CHECK(std::abs(wsum - 2.0) < 1e-14);
        for (int a = 0; a <= 2 * n - 1; ++a) {
            const double got = integrate_1d(r, [a](double x) { return std::pow(x, a); });
            CHECK(std::abs(got - mono_integral_1d(a)) < 1e-13);
        }
    }
    CHECK_THROWS_AS(gauss_rule(0), ParameterError);
    CHECK_THROWS_AS(gauss_rule(21), ParameterError);
}

TEST_CASE("basis construction and orthonormality") {
    const ReferenceBasis b0 = build_basis(1, 0);
    CHECK(b0.n_modes == 1);
    double v;
    b0.eval_modes(0.3, 0.0, &v);
    CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    // k=2 in 1D: Gram matrix assembled with an independent 5-point rule.
    const ReferenceBasis b2 = build_basis(1, 2);
    CHECK(b2.n_modes == 3);
    const QuadratureRule g5 = gauss_rule(5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int q = 0; q < 5; ++q) {
                double phi[3];
                b2.eval_modes(g5.points[q], 0.0, phi);
                s += g5.weights[q] * phi[i] * phi[j];
            }
            CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-13);
        }

    const ReferenceBasis q1 = build_basis(2, 1);
    CHECK(q1.n_modes == 3);
    double dxi[3], deta[3];
    q1.eval_grads(0.7, -0.2, dxi, deta);
    CHECK(dxi[0] == 0.0);
    CHECK(deta[0] == 0.0);

    for (int dim = 1; dim <= 2; ++dim)
        for (int k = 0; k <= 4; ++k) {
            const ReferenceBasis b = build_basis(dim, k);
            CHECK(b.n_modes == (dim == 1 ? k + 1 : (k + 1) * (k + 2) / 2));
            for (int i = 0; i < b.n_modes; ++i)
                for (int j = 0; j < b.n_modes; ++j) {
                    double s = 0.0;
                    for (int q = 0; q < b.n_vol(); ++q)
                        s += b.vol_w[q] * b.phi_at_vol(q)[i] * b.phi_at_vol(q)[j];
                    CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-13);
                }
        }

    CHECK_THROWS_AS(build_basis(1, 5), ParameterError);
    CHECK_THROWS_AS(build_basis(3, 1), ParameterError);
}

TEST_CASE("volume and edge rules integrate degree 2k+2 exactly") {
    for (int k = 0; k <= 4; ++k) {
        const ReferenceBasis b = build_basis(2, k);
        double wsum = 0.0;
        for (double w : b.vol_w) wsum += w;
        CHECK(std::abs(wsum - 4.0) < 1e-14);
        for (int a = 0; a <= 2 * k + 2; ++a) {
            const int bb = std::min(2 * k + 2 - a, 2);
            double s = 0.0;
            for (int q = 0; q < b.n_vol(); ++q)
                s += b.vol_w[q] * std::pow(b.vol_pts[q][0], a) *
                     std::pow(b.vol_pts[q][1], bb);
            CHECK(std::abs(s - mono_integral_1d(a) * mono_integral_1d(bb)) < 1e-13);
        }
        for (int a = 0; a <= 2 * k + 2; ++a) {
            double s = 0.0;
            for (int q = 0; q < b.n_edge_pts; ++q)
                s += b.edge_w[q] * std::pow(b.edge_pts[1 * b.n_edge_pts + q][1], a);
            CHECK(std::abs(s - mono_integral_1d(a)) < 1e-13);
        }
    }
}

TEST_CASE("l2_project worked examples") {
    // f(x) = x^2 with k=1 keeps only the mean 1/3; the odd-mode coefficient vanishes.
    const ReferenceBasis b1 = build_basis(1, 1);
    const CellGeometry ref{-1.0, 1.0, 0.0, 0.0};
    double c[2];
    l2_project([](double x, double, double* out) { out[0] = x * x; }, ref, b1, 1, c);
    CHECK(std::abs(c[1]) < 1e-15);
    CHECK(c[0] * b1.const_mode_value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // f = third basis mode reproduces the coefficient vector (0,0,1).
    const ReferenceBasis b2 = build_basis(1, 2);
    double c3[3];
    l2_project(
        [&](double x, double, double* out) {
            double phi[3];
            b2.eval_modes(x, 0.0, phi);
            out[0] = phi[2];
        },
        ref, b2, 1, c3);
    CHECK(std::abs(c3[0]) < 1e-13);
    CHECK(std::abs(c3[1]) < 1e-13);
    CHECK(c3[2] == doctest::Approx(1.0).epsilon(1e-13));

    // f = sin on a width-0.1 cell centered at 0.05: match a 7-point Gauss oracle.
    const CellGeometry cell{0.0, 0.1, 0.0, 0.0};
    double got[3];
    l2_project([](double x, double, double* out) { out[0] = std::sin(x); }, cell, b2, 1,
               got);
    const QuadratureRule g7 = gauss_rule(7);
    for (int m = 0; m < 3; ++m) {
        double want = 0.0;
        for (int q = 0; q < 7; ++q) {
            const double x = 0.05 + 0.05 * g7.points[q];
            double phi[3];
            b2.eval_modes(g7.points[q], 0.0, phi);
            want += g7.weights[q] * std::sin(x) * phi[m];
        }
        CHECK(got[m] == doctest::Approx(want).epsilon(1e-12));
    }

    CHECK_THROWS_AS(l2_project([](double, double, double* out) { out[0] = NAN; }, cell,
                               b2, 1, got, 7),
                    NumericError);
}

TEST_CASE("projection idempotence, residual orthogonality, scaling covariance") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    for (int dim = 1; dim <= 2; ++dim)
        for (int k = 0; k <= 3; ++k) {
            const ReferenceBasis b = build_basis(dim, k);
            const CellGeometry cell{0.2, 0.9, -0.4, 0.6};
            std::vector<double> coeff(b.n_modes);
            for (double& x : coeff) x = dist(rng);
            std::vector<double> back(b.n_modes);
            l2_project(
                [&](double x, double y, double* out) {
                    double xi, eta;
                    ReferenceBasis::to_reference(cell, dim, x, y, xi, eta);
                    std::vector<double> phi(b.n_modes);
                    b.eval_modes(xi, eta, phi.data());
                    double s = 0.0;
                    for (int m = 0; m < b.n_modes; ++m) s += coeff[m] * phi[m];
                    out[0] = s;
                },
                cell, b, 1, back.data());
            for (int m = 0; m < b.n_modes; ++m)
                CHECK(std::abs(back[m] - coeff[m]) < 1e-13);
        }

    // Residual orthogonality: f a random polynomial of degree k+2.
    for (int k = 0; k <= 3; ++k) {
        const ReferenceBasis b = build_basis(1, k);
        const CellGeometry cell{-0.3, 0.8, 0.0, 0.0};
        std::vector<double> poly(k + 3);
        for (double& x : poly) x = dist(rng);
        auto f = [&](double x) {
            double s = 0.0, p = 1.0;
            for (double a : poly) {
                s += a * p;
                p *= x;
            }
            return s;
        };
        std::vector<double> coeff(b.n_modes);
        l2_project([&](double x, double, double* out) { out[0] = f(x); }, cell, b, 1,
                   coeff.data());
        const QuadratureRule g = gauss_rule(k + 5);
        for (int i = 0; i < b.n_modes; ++i) {
            double resid = 0.0;
            for (int q = 0; q < g.size(); ++q) {
                const double xi = g.points[q];
                const double x = cell.x0 + 0.5 * (xi + 1.0) * cell.dx();
                std::vector<double> phi(b.n_modes);
                b.eval_modes(xi, 0.0, phi.data());
                double pf = 0.0;
                for (int m = 0; m < b.n_modes; ++m) pf += coeff[m] * phi[m];
                resid += g.weights[q] * (f(x) - pf) * phi[i];
            }
            CHECK(std::abs(resid) < 1e-12);
        }
    }

    // Scaling covariance: project f on [a,b] vs the pulled-back f on the reference cell.
    {
        const ReferenceBasis b = build_basis(1, 3);
        const double a = 0.4, bb = 1.7;
        const CellGeometry cell{a, bb, 0.0, 0.0};
        const CellGeometry ref{-1.0, 1.0, 0.0, 0.0};
        auto f = [](double x) { return std::cos(3.0 * x) + x * x; };
        std::vector<double> c1(b.n_modes), c2(b.n_modes);
        l2_project([&](double x, double, double* out) { out[0] = f(x); }, cell, b, 1,
                   c1.data());
        l2_project(
            [&](double xi, double, double* out) {
                out[0] = f(a + (bb - a) * (xi + 1.0) / 2.0);
            },
            ref, b, 1, c2.data());
        for (int m = 0; m < b.n_modes; ++m) CHECK(std::abs(c1[m] - c2[m]) < 1e-13);
    }
}
