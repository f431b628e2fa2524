#include "crkdg/spatial_ops.hpp"
#include "crkdg/errors.hpp"

#include <cmath>
#include <string>

namespace crkdg {

namespace {

// Outward normals of the reference sides: left, right, bottom, top.
constexpr double kSideNormal[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};

inline void eval_with_table(const double* cc, const double* phi, int n_var, int n_modes,
                            double* out) {
    for (int v = 0; v < n_var; ++v) {
        double s = 0.0;
        const double* c = cc + v * n_modes;
        for (int m = 0; m < n_modes; ++m) s += c[m] * phi[m];
        out[v] = s;
    }
}

inline void require_admissible(const ConservationLaw& law, const double* u, int cell,
                               const char* where) {
    if (!law.admissible(u))
        throw AdmissibilityError(std::string("inadmissible state at ") + where +
                                     " of cell " + std::to_string(cell),
                                 cell);
}

// -int_K f(u).grad(phi) accumulated into out (not yet divided by J).
void accumulate_volume(const FieldCoefficients& u, const ConservationLaw& law, int c,
                       double* out) {
    const ReferenceBasis& b = *u.basis;
    const int nm = b.n_modes, nv = u.n_var, dim = b.dimension;
    const CellGeometry& g = u.mesh->cells[c];
    // Chain-rule scale per direction: d(phi)/dx = (2/dx) d(phi)/dxi, and the
    // volume element contributes J; together the xi-term carries dy/2 in 2D
    // and 1 in 1D.
    const double scale[2] = {dim == 2 ? 0.5 * g.dy() : 1.0,
                             dim == 2 ? 0.5 * g.dx() : 0.0};
    const double* cc = u.cell(c);
    double uq[kMaxVar], fq[kMaxVar];
    for (int q = 0; q < b.n_vol(); ++q) {
        eval_with_table(cc, b.phi_at_vol(q), nv, nm, uq);
        require_admissible(law, uq, c, "volume quadrature point");
        const double w = b.vol_w[q];
        for (int d = 0; d < dim; ++d) {
            law.flux(uq, d, fq);
            const double* dphi = b.dphi_at_vol(q, d);
            const double ws = w * scale[d];
            for (int v = 0; v < nv; ++v) {
                const double a = ws * fq[v];
                double* o = out + v * nm;
                for (int m = 0; m < nm; ++m) o[m] -= a * dphi[m];
            }
        }
    }
}

} // namespace

void edge_point_physical(const MeshTopology& mesh, const ReferenceBasis& basis,
                         const MeshEdge& edge, int q, double& x, double& y) {
    const auto& pt = basis.edge_pts[edge.side[0] * basis.n_edge_pts + q];
    ReferenceBasis::to_physical(mesh.cells[edge.cell[0]], mesh.dimension, pt[0], pt[1],
                                x, y);
}

FieldCoefficients dg_divergence(const FieldCoefficients& u, const DgContext& ctx,
                                double time) {
    const ConservationLaw& law = *ctx.law;
    const MeshTopology& mesh = *u.mesh;
    const ReferenceBasis& b = *u.basis;
    const int nm = b.n_modes, nv = u.n_var, neq = b.n_edge_pts;

    // Pass 1: one numerical flux per edge quadrature point, shared by both
    // sides so the edge contributions cancel exactly in the conservation sum.
    std::vector<double> edge_flux(static_cast<size_t>(mesh.n_edges()) * neq * nv);
    double uin[kMaxVar], uex[kMaxVar], meanin[kMaxVar], meanex[kMaxVar];
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const MeshEdge& edge = mesh.edges[e];
        const int c0 = edge.cell[0], c1 = edge.cell[1];
        const double* nu = edge.normal.data();

        double alpha = -1.0;
        if (ctx.flux.kind == FluxKind::lax_friedrichs_local) {
            u.cell_means(c0, meanin);
            alpha = law.wave_speed(meanin, nu);
            if (c1 >= 0) {
                u.cell_means(c1, meanex);
                alpha = std::max(alpha, law.wave_speed(meanex, nu));
            }
        }

        for (int q = 0; q < neq; ++q) {
            eval_with_table(u.cell(c0), b.phi_at_edge(edge.side[0], q), nv, nm, uin);
            require_admissible(law, uin, c0, "edge trace");
            if (c1 >= 0) {
                eval_with_table(u.cell(c1), b.phi_at_edge(edge.side[1], q), nv, nm, uex);
                require_admissible(law, uex, c1, "edge trace");
            } else {
                if (!ctx.boundary)
                    throw ConfigError("dg_divergence: boundary edge without policy");
                double x, y;
                edge_point_physical(mesh, b, edge, q, x, y);
                ghost_state(law, *ctx.boundary, edge.tag, uin, nu, x, y, time, uex);
                if (ctx.flux.kind == FluxKind::lax_friedrichs_local)
                    alpha = std::max(alpha, law.wave_speed(uex, nu));
            }
            numerical_flux(ctx.flux, law, uin, uex, nu,
                           &edge_flux[(static_cast<size_t>(e) * neq + q) * nv], alpha);
        }
    }

    // Pass 2: per-cell accumulation (volume term + signed edge integrals).
    FieldCoefficients out = u.clone_shape();
    for (int c = 0; c < mesh.n_cells(); ++c) {
        double* oc = out.cell(c);
        accumulate_volume(u, law, c, oc);

        for (int side = 0; side < 2 * mesh.dimension; ++side) {
            const int e = mesh.cell_edges[c][side];
            const MeshEdge& edge = mesh.edges[e];
            const double sign = (edge.cell[0] == c) ? 1.0 : -1.0;
            const double escale = (mesh.dimension == 1) ? 1.0 : 0.5 * edge.measure;
            for (int q = 0; q < neq; ++q) {
                const double* fhat = &edge_flux[(static_cast<size_t>(e) * neq + q) * nv];
                const double* phi = b.phi_at_edge(side, q);
                const double ws = sign * escale * b.edge_w[q];
                for (int v = 0; v < nv; ++v) {
                    const double a = ws * fhat[v];
                    double* o = oc + v * nm;
                    for (int m = 0; m < nm; ++m) o[m] += a * phi[m];
                }
            }
        }

        const double Jinv = (mesh.dimension == 1 ? 2.0 : 4.0) / mesh.cell_measure(c);
        for (int i = 0; i < nv * nm; ++i) oc[i] *= Jinv;
    }
    return out;
}

FieldCoefficients local_divergence(const FieldCoefficients& u,
                                   const ConservationLaw& law) {
    const MeshTopology& mesh = *u.mesh;
    const ReferenceBasis& b = *u.basis;
    const int nm = b.n_modes, nv = u.n_var, neq = b.n_edge_pts;

    FieldCoefficients out = u.clone_shape();
    double uq[kMaxVar], fq[kMaxVar];
    for (int c = 0; c < mesh.n_cells(); ++c) {
        double* oc = out.cell(c);
        accumulate_volume(u, law, c, oc);

        const CellGeometry& g = mesh.cells[c];
        for (int side = 0; side < 2 * mesh.dimension; ++side) {
            const double* nu = kSideNormal[side];
            double escale = 1.0;
            if (mesh.dimension == 2) escale = 0.5 * (side < 2 ? g.dy() : g.dx());
            for (int q = 0; q < neq; ++q) {
                const double* phi = b.phi_at_edge(side, q);
                eval_with_table(u.cell(c), phi, nv, nm, uq);
                require_admissible(law, uq, c, "edge trace");
                law.flux_dot(uq, nu, fq);
                const double ws = escale * b.edge_w[q];
                for (int v = 0; v < nv; ++v) {
                    const double a = ws * fq[v];
                    double* o = oc + v * nm;
                    for (int m = 0; m < nm; ++m) o[m] += a * phi[m];
                }
            }
        }

        const double Jinv = (mesh.dimension == 1 ? 2.0 : 4.0) / mesh.cell_measure(c);
        for (int i = 0; i < nv * nm; ++i) oc[i] *= Jinv;
    }
    return out;
}

} // namespace crkdg
