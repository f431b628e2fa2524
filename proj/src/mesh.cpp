#include "crkdg/mesh.hpp"
#include "crkdg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crkdg {

int MeshTopology::neighbor(int cell, int side) const {
    int e = cell_edges[cell][side];
    if (e < 0) return -1;
    const MeshEdge& edge = edges[e];
    if (edge.is_boundary()) return -1;
    return edge.cell[0] == cell ? edge.cell[1] : edge.cell[0];
}

double MeshTopology::quasi_uniformity() const {
    double lo = cell_diameter[0], hi = cell_diameter[0];
    for (double d : cell_diameter) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi / lo;
}

namespace {

void finalize_metrics(MeshTopology& m) {
    m.cell_diameter.resize(m.cells.size());
    m.h_max = 0.0;
    m.min_axis_spacing = std::numeric_limits<double>::max();
    for (size_t c = 0; c < m.cells.size(); ++c) {
        const CellGeometry& g = m.cells[c];
        double d = (m.dimension == 1) ? g.dx() : std::hypot(g.dx(), g.dy());
        m.cell_diameter[c] = d;
        m.h_max = std::max(m.h_max, d);
        m.min_axis_spacing = std::min(m.min_axis_spacing, g.dx());
        if (m.dimension == 2) m.min_axis_spacing = std::min(m.min_axis_spacing, g.dy());
    }
}

BoundaryTag side_tag(const BoundarySpec& bc, int side) {
    switch (side) {
        case 0: return bc.left;
        case 1: return bc.right;
        case 2: return bc.bottom;
        default: return bc.top;
    }
}

BoundaryTag resolve_tag(const BoundarySpec& bc, int side, double x, double y) {
    if (bc.edge_tag) return bc.edge_tag(x, y, side);
    return side_tag(bc, side);
}

} // namespace

MeshTopology build_interval_mesh(double a, double b, int n, Perturbation pert,
                                 const BoundarySpec& bc) {
    if (n < 2) throw ParameterError("build_interval_mesh: need at least 2 cells");
    if (!(a < b)) throw ParameterError("build_interval_mesh: empty interval");

    std::vector<double> nodes(n + 1);
    const double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) nodes[i] = a + i * h;
    if (pert == Perturbation::alternating)
        for (int i = 1; i < n; i += 2) nodes[i] += h / 3.0;

    MeshTopology m;
    m.dimension = 1;
    m.nx = n;
    m.x_min = a;
    m.x_max = b;
    m.cells.resize(n);
    m.cell_edges.assign(n, {-1, -1, -1, -1});
    for (int i = 0; i < n; ++i) m.cells[i] = {nodes[i], nodes[i + 1], 0.0, 0.0};

    const bool periodic = (bc.left == BoundaryTag::periodic);
    if (periodic != (bc.right == BoundaryTag::periodic))
        throw ConfigError("build_interval_mesh: periodic requires both ends periodic");

    // Interior edges between consecutive cells, normal +x from the left cell.
    for (int i = 0; i + 1 < n; ++i) {
        MeshEdge e;
        e.cell = {i, i + 1};
        e.side = {1, 0};
        e.normal = {1.0, 0.0};
        e.tag = BoundaryTag::interior;
        m.cell_edges[i][1] = m.n_edges();
        m.cell_edges[i + 1][0] = m.n_edges();
        m.edges.push_back(e);
    }
    if (periodic) {
        MeshEdge e;
        e.cell = {n - 1, 0};
        e.side = {1, 0};
        e.normal = {1.0, 0.0};
        e.tag = BoundaryTag::periodic;
        m.cell_edges[n - 1][1] = m.n_edges();
        m.cell_edges[0][0] = m.n_edges();
        m.edges.push_back(e);
    } else {
        MeshEdge left;
        left.cell = {0, -1};
        left.side = {0, -1};
        left.normal = {-1.0, 0.0};
        left.tag = resolve_tag(bc, 0, a, 0.0);
        m.cell_edges[0][0] = m.n_edges();
        m.edges.push_back(left);

        MeshEdge right;
        right.cell = {n - 1, -1};
        right.side = {1, -1};
        right.normal = {1.0, 0.0};
        right.tag = resolve_tag(bc, 1, b, 0.0);
        m.cell_edges[n - 1][1] = m.n_edges();
        m.edges.push_back(right);
    }

    finalize_metrics(m);
    return m;
}

namespace {

// Shared 2D builder: active(i,j) masks cells out (forward-facing step).
MeshTopology build_structured_2d(double x0, double x1, double y0, double y1, int nx,
                                 int ny, const BoundarySpec& bc,
                                 const std::function<bool(int, int)>& active,
                                 const std::function<BoundaryTag(double, double, int)>&
                                     internal_wall_tag) {
    if (nx < 2 || ny < 2) throw ParameterError("build_rect_mesh: need at least 2x2 cells");
    if (!(x0 < x1) || !(y0 < y1))
        throw ParameterError("build_rect_mesh: degenerate range");

    const double dx = (x1 - x0) / nx;
    const double dy = (y1 - y0) / ny;

    MeshTopology m;
    m.dimension = 2;
    m.nx = nx;
    m.ny = ny;
    m.x_min = x0;
    m.x_max = x1;
    m.y_min = y0;
    m.y_max = y1;
    m.grid_cell.assign(nx * ny, -1);

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (active && !active(i, j)) continue;
            m.grid_cell[j * nx + i] = m.n_cells();
            m.cells.push_back({x0 + i * dx, x0 + (i + 1) * dx, y0 + j * dy,
                               y0 + (j + 1) * dy});
        }
    m.cell_edges.assign(m.cells.size(), {-1, -1, -1, -1});

    const bool per_x = (bc.left == BoundaryTag::periodic);
    const bool per_y = (bc.bottom == BoundaryTag::periodic);
    if (per_x != (bc.right == BoundaryTag::periodic) ||
        per_y != (bc.top == BoundaryTag::periodic))
        throw ConfigError("build_rect_mesh: periodic requires matching opposite sides");

    auto cell_at = [&](int i, int j) {
        if (i < 0 || i >= nx || j < 0 || j >= ny) return -1;
        return m.grid_cell[j * nx + i];
    };

    auto add_edge = [&](int c0, int c1, int s0, int s1, double nrm_x, double nrm_y,
                        double measure, BoundaryTag tag) {
        MeshEdge e;
        e.cell = {c0, c1};
        e.side = {s0, s1};
        e.normal = {nrm_x, nrm_y};
        e.measure = measure;
        e.tag = tag;
        m.cell_edges[c0][s0] = m.n_edges();
        if (c1 >= 0) m.cell_edges[c1][s1] = m.n_edges();
        m.edges.push_back(e);
    };

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int c = cell_at(i, j);
            if (c < 0) continue;
            const CellGeometry& g = m.cells[c];

            // Right neighbor (owns the vertical edge to its right).
            int cr = cell_at(i + 1, j);
            if (cr >= 0) {
                add_edge(c, cr, 1, 0, 1.0, 0.0, dy, BoundaryTag::interior);
            } else if (i == nx - 1 && per_x) {
                add_edge(c, cell_at(0, j), 1, 0, 1.0, 0.0, dy, BoundaryTag::periodic);
            } else {
                double mx = g.x1, my = g.yc();
                BoundaryTag t = (i == nx - 1) ? resolve_tag(bc, 1, mx, my)
                                              : internal_wall_tag(mx, my, 1);
                add_edge(c, -1, 1, -1, 1.0, 0.0, dy, t);
            }

            // Left boundary edges (interior left edges are created by the left cell).
            if (cell_at(i - 1, j) < 0 && !(i == 0 && per_x)) {
                double mx = g.x0, my = g.yc();
                BoundaryTag t = (i == 0) ? resolve_tag(bc, 0, mx, my)
                                         : internal_wall_tag(mx, my, 0);
                add_edge(c, -1, 0, -1, -1.0, 0.0, dy, t);
            }

            // Top neighbor.
            int ct = cell_at(i, j + 1);
            if (ct >= 0) {
                add_edge(c, ct, 3, 2, 0.0, 1.0, dx, BoundaryTag::interior);
            } else if (j == ny - 1 && per_y) {
                add_edge(c, cell_at(i, 0), 3, 2, 0.0, 1.0, dx, BoundaryTag::periodic);
            } else {
                double mx = g.xc(), my = g.y1;
                BoundaryTag t = (j == ny - 1) ? resolve_tag(bc, 3, mx, my)
                                              : internal_wall_tag(mx, my, 3);
                add_edge(c, -1, 3, -1, 0.0, 1.0, dx, t);
            }

            // Bottom boundary edges.
            if (cell_at(i, j - 1) < 0 && !(j == 0 && per_y)) {
                double mx = g.xc(), my = g.y0;
                BoundaryTag t = (j == 0) ? resolve_tag(bc, 2, mx, my)
                                         : internal_wall_tag(mx, my, 2);
                add_edge(c, -1, 2, -1, 0.0, -1.0, dx, t);
            }
        }

    finalize_metrics(m);
    return m;
}

} // namespace

MeshTopology build_rect_mesh(double x0, double x1, double y0, double y1, int nx, int ny,
                             const BoundarySpec& bc) {
    return build_structured_2d(x0, x1, y0, y1, nx, ny, bc, nullptr,
                               [](double, double, int) { return BoundaryTag::reflective; });
}

MeshTopology build_forward_step_mesh(int nx, int ny) {
    if (nx % 5 != 0 || ny % 5 != 0)
        throw ParameterError(
            "build_forward_step_mesh: nx, ny must be multiples of 5 so the step corner "
            "(0.6, 0.2) lands on a mesh node");
    const int step_i = nx / 5;  // cells with i >= step_i, j < step_j are inside the step
    const int step_j = ny / 5;

    BoundarySpec bc;
    bc.left = BoundaryTag::inflow;
    bc.right = BoundaryTag::outflow;
    bc.bottom = BoundaryTag::reflective;
    bc.top = BoundaryTag::reflective;

    auto active = [=](int i, int j) { return !(i >= step_i && j < step_j); };
    return build_structured_2d(0.0, 3.0, 0.0, 1.0, nx, ny, bc, active,
                               [](double, double, int) { return BoundaryTag::reflective; });
}

} // namespace crkdg
