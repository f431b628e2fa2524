#include "crkdg/basis.hpp"
#include "crkdg/errors.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace crkdg {

namespace {

// Coefficients of the Legendre polynomials P_0..P_n in the monomial basis.
std::vector<std::vector<double>> legendre_coeffs(int n) {
    std::vector<std::vector<double>> P(n + 1);
    P[0] = {1.0};
    if (n >= 1) P[1] = {0.0, 1.0};
    for (int j = 2; j <= n; ++j) {
        P[j].assign(j + 1, 0.0);
        for (int t = 0; t <= j - 1; ++t)
            P[j][t + 1] += (2.0 * j - 1.0) / j * P[j - 1][t];
        for (int t = 0; t <= j - 2; ++t)
            P[j][t] -= (j - 1.0) / j * P[j - 2][t];
    }
    return P;
}

double eval_monomial_term(int px, int py, double xi, double eta) {
    double v = 1.0;
    for (int i = 0; i < px; ++i) v *= xi;
    for (int i = 0; i < py; ++i) v *= eta;
    return v;
}

} // namespace

void ReferenceBasis::eval_modes(double xi, double eta, double* out) const {
    const int nt = static_cast<int>(mono_px.size());
    for (int m = 0; m < n_modes; ++m) {
        double v = 0.0;
        for (int t = 0; t < nt; ++t) {
            double c = mode_coeffs[m][t];
            if (c != 0.0) v += c * eval_monomial_term(mono_px[t], mono_py[t], xi, eta);
        }
        out[m] = v;
    }
}

void ReferenceBasis::eval_grads(double xi, double eta, double* dxi, double* deta) const {
    const int nt = static_cast<int>(mono_px.size());
    for (int m = 0; m < n_modes; ++m) {
        double gx = 0.0, gy = 0.0;
        for (int t = 0; t < nt; ++t) {
            double c = mode_coeffs[m][t];
            if (c == 0.0) continue;
            int px = mono_px[t], py = mono_py[t];
            if (px > 0) gx += c * px * eval_monomial_term(px - 1, py, xi, eta);
            if (py > 0) gy += c * py * eval_monomial_term(px, py - 1, xi, eta);
        }
        dxi[m] = gx;
        if (deta) deta[m] = gy;
    }
}

void ReferenceBasis::to_reference(const CellGeometry& cell, int dim, double x, double y,
                                  double& xi, double& eta) {
    xi = 2.0 * (x - cell.x0) / cell.dx() - 1.0;
    eta = (dim == 2) ? 2.0 * (y - cell.y0) / cell.dy() - 1.0 : 0.0;
}

void ReferenceBasis::to_physical(const CellGeometry& cell, int dim, double xi, double eta,
                                 double& x, double& y) {
    x = cell.x0 + 0.5 * (xi + 1.0) * cell.dx();
    y = (dim == 2) ? cell.y0 + 0.5 * (eta + 1.0) * cell.dy() : 0.0;
}

ReferenceBasis build_basis(int dimension, int degree) {
    if (dimension != 1 && dimension != 2)
        throw ParameterError("build_basis: dimension must be 1 or 2");
    if (degree < 0 || degree > 4)
        throw ParameterError("build_basis: degree must be in [0,4]");

    ReferenceBasis b;
    b.dimension = dimension;
    b.degree = degree;
    const int k = degree;

    // Monomial list, ordered by total degree then descending xi exponent.
    if (dimension == 1) {
        for (int d = 0; d <= k; ++d) {
            b.mono_px.push_back(d);
            b.mono_py.push_back(0);
        }
        b.n_modes = k + 1;
    } else {
        for (int d = 0; d <= k; ++d)
            for (int a = d; a >= 0; --a) {
                b.mono_px.push_back(a);
                b.mono_py.push_back(d - a);
            }
        b.n_modes = (k + 1) * (k + 2) / 2;
    }
    const int nt = static_cast<int>(b.mono_px.size());

    // Volume rule: (k+2) Gauss points per direction.
    const QuadratureRule g = gauss_rule(k + 2);
    if (dimension == 1) {
        for (int q = 0; q < g.size(); ++q) {
            b.vol_pts.push_back({g.points[q], 0.0});
            b.vol_w.push_back(g.weights[q]);
        }
    } else {
        for (int qy = 0; qy < g.size(); ++qy)
            for (int qx = 0; qx < g.size(); ++qx) {
                b.vol_pts.push_back({g.points[qx], g.points[qy]});
                b.vol_w.push_back(g.weights[qx] * g.weights[qy]);
            }
    }
    const int nq = b.n_vol();

    // Modal coefficients.
    b.mode_coeffs.assign(b.n_modes, std::vector<double>(nt, 0.0));
    if (dimension == 1) {
        auto P = legendre_coeffs(k);
        for (int m = 0; m <= k; ++m) {
            double scale = std::sqrt((2.0 * m + 1.0) / 2.0);
            for (size_t t = 0; t < P[m].size(); ++t)
                b.mode_coeffs[m][t] = scale * P[m][t];
        }
    } else {
        // Modified Gram-Schmidt against the volume rule, run twice.
        std::vector<std::vector<double>> vals(nt, std::vector<double>(nq));
        for (int t = 0; t < nt; ++t)
            for (int q = 0; q < nq; ++q)
                vals[t][q] = eval_monomial_term(b.mono_px[t], b.mono_py[t],
                                                b.vol_pts[q][0], b.vol_pts[q][1]);
        auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
            double s = 0.0;
            for (int q = 0; q < nq; ++q) s += b.vol_w[q] * u[q] * v[q];
            return s;
        };
        std::vector<std::vector<double>> mode_vals(b.n_modes, std::vector<double>(nq));
        for (int m = 0; m < b.n_modes; ++m) {
            std::vector<double> coeff(nt, 0.0);
            coeff[m] = 1.0;
            std::vector<double> v = vals[m];
            for (int pass = 0; pass < 2; ++pass) {
                for (int j = 0; j < m; ++j) {
                    double proj = dot(mode_vals[j], v);
                    for (int q = 0; q < nq; ++q) v[q] -= proj * mode_vals[j][q];
                    for (int t = 0; t < nt; ++t) coeff[t] -= proj * b.mode_coeffs[j][t];
                }
            }
            double nrm = std::sqrt(dot(v, v));
            if (nrm < 1e-12)
                throw NumericError("build_basis: degenerate monomial set");
            for (int q = 0; q < nq; ++q) mode_vals[m][q] = v[q] / nrm;
            for (int t = 0; t < nt; ++t) b.mode_coeffs[m][t] = coeff[t] / nrm;
        }
    }

    // Evaluation tables at volume points.
    b.phi_vol.resize(nq * b.n_modes);
    b.dphi_vol.resize(nq * dimension * b.n_modes);
    for (int q = 0; q < nq; ++q) {
        b.eval_modes(b.vol_pts[q][0], b.vol_pts[q][1], &b.phi_vol[q * b.n_modes]);
        double* dxi = &b.dphi_vol[(q * dimension + 0) * b.n_modes];
        double* deta = (dimension == 2) ? &b.dphi_vol[(q * dimension + 1) * b.n_modes]
                                        : nullptr;
        b.eval_grads(b.vol_pts[q][0], b.vol_pts[q][1], dxi, deta);
    }

    // Edge tables.
    if (dimension == 1) {
        b.n_edges = 2;
        b.n_edge_pts = 1;
        b.edge_w = {1.0};
        b.edge_pts = {{-1.0, 0.0}, {1.0, 0.0}};
    } else {
        b.n_edges = 4;
        b.n_edge_pts = g.size();
        b.edge_w = g.weights;
        b.edge_pts.resize(4 * b.n_edge_pts);
        for (int q = 0; q < b.n_edge_pts; ++q) {
            double s = g.points[q];
            b.edge_pts[0 * b.n_edge_pts + q] = {-1.0, s};
            b.edge_pts[1 * b.n_edge_pts + q] = {+1.0, s};
            b.edge_pts[2 * b.n_edge_pts + q] = {s, -1.0};
            b.edge_pts[3 * b.n_edge_pts + q] = {s, +1.0};
        }
    }
    b.phi_edge.resize(b.n_edges * b.n_edge_pts * b.n_modes);
    for (int e = 0; e < b.n_edges; ++e)
        for (int q = 0; q < b.n_edge_pts; ++q) {
            const auto& pt = b.edge_pts[e * b.n_edge_pts + q];
            b.eval_modes(pt[0], pt[1], &b.phi_edge[(e * b.n_edge_pts + q) * b.n_modes]);
        }

    b.const_mode_value = b.mode_coeffs[0][0];
    return b;
}

void l2_project(const std::function<void(double, double, double*)>& sampler,
                const CellGeometry& cell, const ReferenceBasis& basis, int n_var,
                double* coeffs, int cell_id) {
    const int nm = basis.n_modes;
    const int nq = basis.n_vol();
    std::memset(coeffs, 0, sizeof(double) * n_var * nm);
    double vals[8];
    for (int q = 0; q < nq; ++q) {
        double x, y;
        ReferenceBasis::to_physical(cell, basis.dimension, basis.vol_pts[q][0],
                                    basis.vol_pts[q][1], x, y);
        sampler(x, y, vals);
        const double* phi = basis.phi_at_vol(q);
        const double w = basis.vol_w[q];
        for (int v = 0; v < n_var; ++v) {
            if (!std::isfinite(vals[v]))
                throw NumericError("l2_project: non-finite sample in cell " +
                                       std::to_string(cell_id),
                                   cell_id);
            for (int m = 0; m < nm; ++m) coeffs[v * nm + m] += w * vals[v] * phi[m];
        }
    }
}

} // namespace crkdg
