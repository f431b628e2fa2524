#include "crkdg/limiters.hpp"
#include "crkdg/errors.hpp"

#include <cmath>
#include <cstring>

namespace crkdg {

LimiterKind limiter_kind_from_name(const std::string& name) {
    if (name == "none") return LimiterKind::none;
    if (name == "tvb_minmod") return LimiterKind::tvb_minmod;
    if (name == "tvb_weno") return LimiterKind::tvb_weno;
    throw ConfigError("unknown limiter: " + name);
}

namespace {

constexpr double kAlterTol = 1e-13;

// Returns the argument with the smallest magnitude verbatim when all three
// share a sign, zero otherwise.
double minmod3(double a, double b, double c) {
    if (a > 0.0 && b > 0.0 && c > 0.0)
        return std::min(std::min(a, b), c);
    if (a < 0.0 && b < 0.0 && c < 0.0)
        return std::max(std::max(a, b), c);
    return 0.0;
}

double tvb_minmod(double a, double b, double c, double mh2) {
    if (std::abs(a) <= mh2) return a;
    return minmod3(a, b, c);
}

bool altered(double result, double arg) {
    return std::abs(result - arg) > kAlterTol * (1.0 + std::abs(arg));
}

struct CharBasis {
    bool active = false;
    double R[kMaxVar * kMaxVar];
    double Rinv[kMaxVar * kMaxVar];
};

CharBasis char_basis_at_mean(const FieldCoefficients& u, const ConservationLaw& law,
                             int c, int dir, bool characteristic) {
    CharBasis cb;
    if (!characteristic || !law.has_eigenvectors()) return cb;
    double mean[kMaxVar];
    u.cell_means(c, mean);
    if (!law.admissible(mean)) return cb; // fall back to componentwise
    law.eigenvectors(mean, dir, cb.R, cb.Rinv);
    cb.active = true;
    return cb;
}

void matvec(const double* M, const double* x, int n, double* y) {
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += M[i * n + j] * x[j];
        y[i] = s;
    }
}

// Mean differences toward both neighbors along one direction. Across a
// non-periodic boundary the available one-sided difference is copied, so the
// missing side never constrains the minmod.
void mean_jumps(const FieldCoefficients& u, int c, int dir, double* dplus,
                double* dminus) {
    const int nv = u.n_var;
    const int side_lo = 2 * dir, side_hi = 2 * dir + 1;
    double own[kMaxVar], nb[kMaxVar];
    u.cell_means(c, own);
    const int chi = u.mesh->neighbor(c, side_hi);
    const int clo = u.mesh->neighbor(c, side_lo);
    if (chi >= 0) {
        u.cell_means(chi, nb);
        for (int v = 0; v < nv; ++v) dplus[v] = nb[v] - own[v];
    }
    if (clo >= 0) {
        u.cell_means(clo, nb);
        for (int v = 0; v < nv; ++v) dminus[v] = own[v] - nb[v];
    }
    if (chi < 0 && clo < 0)
        for (int v = 0; v < nv; ++v) dplus[v] = dminus[v] = 0.0;
    else if (chi < 0)
        for (int v = 0; v < nv; ++v) dplus[v] = dminus[v];
    else if (clo < 0)
        for (int v = 0; v < nv; ++v) dminus[v] = dplus[v];
}

} // namespace

std::vector<char> detect_troubled_cells(const FieldCoefficients& u, double M,
                                        bool characteristic,
                                        const ConservationLaw& law) {
    const MeshTopology& mesh = *u.mesh;
    const ReferenceBasis& b = *u.basis;
    std::vector<char> flags(mesh.n_cells(), 0);
    if (b.degree == 0) return flags;

    const int nv = u.n_var, nm = b.n_modes, dim = mesh.dimension;

    // Mode values at the outflow/inflow face midpoints of each direction.
    std::vector<double> phi_hi(dim * nm), phi_lo(dim * nm);
    b.eval_modes(1.0, 0.0, &phi_hi[0]);
    b.eval_modes(-1.0, 0.0, &phi_lo[0]);
    if (dim == 2) {
        b.eval_modes(0.0, 1.0, &phi_hi[nm]);
        b.eval_modes(0.0, -1.0, &phi_lo[nm]);
    }

    double own[kMaxVar], dev_hi[kMaxVar], dev_lo[kMaxVar];
    double dplus[kMaxVar], dminus[kMaxVar], w[4][kMaxVar];
    for (int c = 0; c < mesh.n_cells(); ++c) {
        u.cell_means(c, own);
        const CellGeometry& g = mesh.cells[c];
        for (int dir = 0; dir < dim && !flags[c]; ++dir) {
            const double h = (dir == 0) ? g.dx() : g.dy();
            const double mh2 = M * h * h;
            // Interface deviations measured against the trace seen from across
            // each interface (the cell's own trace when the neighbor is
            // missing), so a clean jump between cells registers on both sides.
            const int chi = mesh.neighbor(c, 2 * dir + 1);
            const int clo = mesh.neighbor(c, 2 * dir);
            const double* cc_hi = (chi >= 0) ? u.cell(chi) : u.cell(c);
            const double* cc_lo = (clo >= 0) ? u.cell(clo) : u.cell(c);
            // the neighbor across the high interface is evaluated on its own
            // low face, and vice versa
            const double* phi_for_hi = (chi >= 0) ? &phi_lo[dir * nm] : &phi_hi[dir * nm];
            const double* phi_for_lo = (clo >= 0) ? &phi_hi[dir * nm] : &phi_lo[dir * nm];
            for (int v = 0; v < nv; ++v) {
                double vhi = 0.0, vlo = 0.0;
                for (int m = 0; m < nm; ++m) {
                    vhi += cc_hi[v * nm + m] * phi_for_hi[m];
                    vlo += cc_lo[v * nm + m] * phi_for_lo[m];
                }
                dev_hi[v] = vhi - own[v];
                dev_lo[v] = own[v] - vlo;
            }
            mean_jumps(u, c, dir, dplus, dminus);

            const CharBasis cb = char_basis_at_mean(u, law, c, dir, characteristic);
            const double* args[4] = {dev_hi, dev_lo, dplus, dminus};
            if (cb.active) {
                for (int k = 0; k < 4; ++k) {
                    matvec(cb.Rinv, args[k], nv, w[k]);
                    args[k] = w[k];
                }
            }
            for (int v = 0; v < nv && !flags[c]; ++v) {
                const double m1 = tvb_minmod(args[0][v], args[2][v], args[3][v], mh2);
                const double m2 = tvb_minmod(args[1][v], args[2][v], args[3][v], mh2);
                if (altered(m1, args[0][v]) || altered(m2, args[1][v])) flags[c] = 1;
            }
        }
    }
    return flags;
}

void apply_minmod_limiter(FieldCoefficients& u, const std::vector<char>& flags,
                          const LimiterConfig& cfg, const ConservationLaw& law) {
    const MeshTopology& mesh = *u.mesh;
    const ReferenceBasis& b = *u.basis;
    if (b.degree == 0) return;
    const int nv = u.n_var, nm = b.n_modes, dim = mesh.dimension;

    // Value of the linear mode at its face midpoint: phi_1(1) in 1D,
    // phi_1(1,0) = phi_2(0,1) in 2D.
    const int slope_mode[2] = {1, 2};
    double phi_face[2] = {0.0, 0.0};
    {
        std::vector<double> tmp(nm);
        b.eval_modes(1.0, 0.0, tmp.data());
        phi_face[0] = tmp[slope_mode[0]];
        if (dim == 2) {
            b.eval_modes(0.0, 1.0, tmp.data());
            phi_face[1] = tmp[slope_mode[1]];
        }
    }

    double dplus[kMaxVar], dminus[kMaxVar], a[kMaxVar], lim[kMaxVar];
    double wa[kMaxVar], wb[kMaxVar], wc[kMaxVar], wm[kMaxVar];
    for (int c = 0; c < mesh.n_cells(); ++c) {
        if (!flags[c]) continue;
        const CellGeometry& g = mesh.cells[c];
        bool rebuild = false;
        double new_slope[2][kMaxVar];

        for (int dir = 0; dir < dim; ++dir) {
            const double h = (dir == 0) ? g.dx() : g.dy();
            const double mh2 = cfg.tvb_m * h * h;
            for (int v = 0; v < nv; ++v)
                a[v] = u.coeffs(c, v)[slope_mode[dir]] * phi_face[dir];
            mean_jumps(u, c, dir, dplus, dminus);

            const CharBasis cb =
                char_basis_at_mean(u, law, c, dir, cfg.characteristic);
            const double *pa = a, *pb = dplus, *pc = dminus;
            if (cb.active) {
                matvec(cb.Rinv, a, nv, wa);
                matvec(cb.Rinv, dplus, nv, wb);
                matvec(cb.Rinv, dminus, nv, wc);
                pa = wa; pb = wb; pc = wc;
            }
            bool dir_altered = false;
            for (int v = 0; v < nv; ++v) {
                wm[v] = tvb_minmod(pa[v], pb[v], pc[v], mh2);
                if (altered(wm[v], pa[v])) dir_altered = true;
            }
            if (cb.active)
                matvec(cb.R, wm, nv, lim);
            else
                std::memcpy(lim, wm, sizeof(double) * nv);
            for (int v = 0; v < nv; ++v) new_slope[dir][v] = lim[v] / phi_face[dir];
            if (dir_altered) rebuild = true;
        }

        if (!rebuild) continue; // nothing was limited; keep the cell bitwise
        for (int v = 0; v < nv; ++v) {
            double* cv = u.coeffs(c, v);
            for (int m = 1; m < nm; ++m) cv[m] = 0.0;
            cv[slope_mode[0]] = new_slope[0][v];
            if (dim == 2) cv[slope_mode[1]] = new_slope[1][v];
        }
    }
}

namespace {

// Smoothness indicator on the reference cell: sum over derivative orders
// l = 1..k of h^(2l-1) * int_K (d^l q/dx^l)^2 dx, which reduces to
// sum_l 2^(2l-1) * int_ref (d^l q/dxi^l)^2 dxi. `mono` holds the monomial
// coefficients of q.
double smoothness_indicator(const std::vector<double>& mono, int k) {
    double beta = 0.0;
    std::vector<double> d(mono);
    double scale = 2.0; // 2^(2l-1) builds up by 4 per order
    for (int l = 1; l <= k; ++l) {
        // differentiate
        for (size_t t = 0; t + 1 < d.size(); ++t) d[t] = (t + 1) * d[t + 1];
        d.pop_back();
        double integral = 0.0;
        for (size_t i = 0; i < d.size(); ++i)
            for (size_t j = 0; j < d.size(); ++j) {
                if ((i + j) % 2 == 0) integral += d[i] * d[j] * 2.0 / (i + j + 1.0);
            }
        beta += 0.5 * scale * integral;
        scale *= 4.0;
    }
    return beta;
}

} // namespace

void apply_weno_limiter_1d(FieldCoefficients& u, const std::vector<char>& flags,
                           const LimiterConfig& cfg, const ConservationLaw& law) {
    const MeshTopology& mesh = *u.mesh;
    const ReferenceBasis& b = *u.basis;
    if (mesh.dimension != 1)
        throw ParameterError("apply_weno_limiter_1d: 1D fields only");
    if (b.degree > 3)
        throw ParameterError("apply_weno_limiter_1d: supported for k <= 3");
    if (b.degree == 0) return;

    const int nv = u.n_var, nm = b.n_modes, nq = b.n_vol();
    const FieldCoefficients pre = u; // read pre-limiter data for all candidates

    double phi_q[8];
    for (int c = 0; c < mesh.n_cells(); ++c) {
        if (!flags[c]) continue;
        const int nbs[2] = {mesh.neighbor(c, 0), mesh.neighbor(c, 1)};

        const CharBasis cb = char_basis_at_mean(pre, law, c, 0, cfg.characteristic);

        // Candidate modal coefficients on cell c (variable- or characteristic-wise).
        // Order: left copy, own, right copy.
        double cand[3][kMaxVar][8];
        double gamma[3] = {cfg.weno_linear[0], cfg.weno_linear[1], cfg.weno_linear[2]};
        bool have[3] = {nbs[0] >= 0, true, nbs[1] >= 0};

        auto to_char = [&](const double* cell_coeffs, double out[][8]) {
            for (int m = 0; m < nm; ++m)
                for (int v = 0; v < nv; ++v) {
                    if (cb.active) {
                        double s = 0.0;
                        for (int j = 0; j < nv; ++j)
                            s += cb.Rinv[v * nv + j] * cell_coeffs[j * nm + m];
                        out[v][m] = s;
                    } else {
                        out[v][m] = cell_coeffs[v * nm + m];
                    }
                }
        };

        to_char(pre.cell(c), cand[1]);

        for (int side = 0; side < 2; ++side) {
            const int nb = nbs[side];
            const int slot = (side == 0) ? 0 : 2;
            if (nb < 0) continue;
            double nb_coeffs[kMaxVar][8];
            to_char(pre.cell(nb), nb_coeffs);
            // Project the neighbor polynomial onto cell c's basis.
            const CellGeometry& gc = mesh.cells[c];
            const CellGeometry& gn = mesh.cells[nb];
            for (int v = 0; v < nv; ++v)
                for (int m = 0; m < nm; ++m) cand[slot][v][m] = 0.0;
            for (int q = 0; q < nq; ++q) {
                double x, yy;
                ReferenceBasis::to_physical(gc, 1, b.vol_pts[q][0], 0.0, x, yy);
                double xi_nb, eta_nb;
                ReferenceBasis::to_reference(gn, 1, x, 0.0, xi_nb, eta_nb);
                b.eval_modes(xi_nb, eta_nb, phi_q);
                const double* phi_c = b.phi_at_vol(q);
                const double w = b.vol_w[q];
                for (int v = 0; v < nv; ++v) {
                    double val = 0.0;
                    for (int m = 0; m < nm; ++m) val += nb_coeffs[v][m] * phi_q[m];
                    for (int m = 0; m < nm; ++m) cand[slot][v][m] += w * val * phi_c[m];
                }
            }
            // Shift to the troubled cell's mean.
            for (int v = 0; v < nv; ++v) cand[slot][v][0] = cand[1][v][0];
        }

        double wsum_gamma = 0.0;
        for (int s = 0; s < 3; ++s)
            if (have[s]) wsum_gamma += gamma[s];

        double out_coeffs[kMaxVar][8];
        std::vector<double> mono(nm);
        for (int v = 0; v < nv; ++v) {
            double omega[3] = {0, 0, 0}, osum = 0.0;
            for (int s = 0; s < 3; ++s) {
                if (!have[s]) continue;
                for (int t = 0; t < nm; ++t) {
                    double acc = 0.0;
                    for (int m = 0; m < nm; ++m)
                        acc += cand[s][v][m] * b.mode_coeffs[m][t];
                    mono[t] = acc;
                }
                const double beta = smoothness_indicator(mono, b.degree);
                omega[s] = (gamma[s] / wsum_gamma) /
                           std::pow(cfg.weno_eps + beta, cfg.weno_power);
                osum += omega[s];
            }
            for (int m = 0; m < nm; ++m) {
                double s = 0.0;
                for (int t = 0; t < 3; ++t)
                    if (have[t]) s += omega[t] / osum * cand[t][v][m];
                out_coeffs[v][m] = s;
            }
        }

        double* cc = u.cell(c);
        if (cb.active) {
            for (int m = 0; m < nm; ++m)
                for (int v = 0; v < nv; ++v) {
                    double s = 0.0;
                    for (int j = 0; j < nv; ++j) s += cb.R[v * nv + j] * out_coeffs[j][m];
                    cc[v * nm + m] = s;
                }
        } else {
            for (int v = 0; v < nv; ++v)
                for (int m = 0; m < nm; ++m) cc[v * nm + m] = out_coeffs[v][m];
        }
        // The rebuild preserves means by construction; pin them exactly.
        for (int v = 0; v < nv; ++v) cc[v * nm + 0] = pre.coeffs(c, v)[0];
    }
}

int enforce_admissible_cells(FieldCoefficients& u, const ConservationLaw& law) {
    const ReferenceBasis& b = *u.basis;
    const int nv = u.n_var, nm = b.n_modes;
    int flattened = 0;
    double uq[kMaxVar];
    for (int c = 0; c < u.mesh->n_cells(); ++c) {
        const double* cc = u.cell(c);
        bool ok = true;
        for (int q = 0; q < b.n_vol() && ok; ++q) {
            const double* phi = b.phi_at_vol(q);
            for (int v = 0; v < nv; ++v) {
                double s = 0.0;
                for (int m = 0; m < nm; ++m) s += cc[v * nm + m] * phi[m];
                uq[v] = s;
            }
            ok = law.admissible(uq);
        }
        for (int e = 0; e < b.n_edges && ok; ++e)
            for (int q = 0; q < b.n_edge_pts && ok; ++q) {
                const double* phi = b.phi_at_edge(e, q);
                for (int v = 0; v < nv; ++v) {
                    double s = 0.0;
                    for (int m = 0; m < nm; ++m) s += cc[v * nm + m] * phi[m];
                    uq[v] = s;
                }
                ok = law.admissible(uq);
            }
        if (!ok) {
            for (int v = 0; v < nv; ++v)
                for (int m = 1; m < nm; ++m) u.coeffs(c, v)[m] = 0.0;
            ++flattened;
        }
    }
    return flattened;
}

int apply_limiter(FieldCoefficients& u, const LimiterConfig& cfg,
                  const ConservationLaw& law) {
    if (cfg.kind == LimiterKind::none || u.basis->degree == 0) return 0;
    const std::vector<char> flags =
        detect_troubled_cells(u, cfg.tvb_m, cfg.characteristic, law);
    int count = 0;
    for (char f : flags) count += f;
    if (count > 0) {
        if (cfg.kind == LimiterKind::tvb_weno) {
            if (u.mesh->dimension != 1)
                throw ConfigError("apply_limiter: WENO limiter is 1D-only");
            apply_weno_limiter_1d(u, flags, cfg, law);
        } else {
            apply_minmod_limiter(u, flags, cfg, law);
        }
    }
    // A limited cell can still leave the admissible set at quadrature points
    // when a strong front crosses it diagonally; fall back to the cell mean
    // there (means of admissible data are admissible, and means are what the
    // conservation accounting sees).
    enforce_admissible_cells(u, law);
    return count;
}

} // namespace crkdg
