#ifndef CRKDG_MESH_HPP
#define CRKDG_MESH_HPP

#include "crkdg/basis.hpp"

#include <array>
#include <functional>
#include <vector>

namespace crkdg {

enum class BoundaryTag {
    interior,
    periodic, // wrapped interior edge
    inflow,   // prescribed state, function of position and time
    outflow,
    reflective,
    post_shock_exact // prescribed exact shock motion (double Mach style)
};

// Domain sides used when assigning boundary tags: 0=left, 1=right, 2=bottom, 3=top.
struct BoundarySpec {
    BoundaryTag left = BoundaryTag::periodic;
    BoundaryTag right = BoundaryTag::periodic;
    BoundaryTag bottom = BoundaryTag::periodic;
    BoundaryTag top = BoundaryTag::periodic;

    // Optional per-edge override; receives the edge midpoint and the domain side.
    std::function<BoundaryTag(double x, double y, int side)> edge_tag;

    static BoundarySpec all(BoundaryTag t) { return {t, t, t, t, nullptr}; }
};

struct MeshEdge {
    std::array<int, 2> cell = {-1, -1};  // owner, neighbor (-1 on boundary)
    std::array<int, 2> side = {-1, -1};  // reference edge index within each cell
    std::array<double, 2> normal = {0, 0}; // unit outward normal wrt cell[0]
    double measure = 1.0;                // 1 in 1D, edge length in 2D
    BoundaryTag tag = BoundaryTag::interior;

    bool is_boundary() const { return cell[1] < 0; }
};

// Cells, edges, connectivity and boundary tags for 1D interval meshes and 2D
// axis-aligned rectangular meshes. Immutable after construction.
class MeshTopology {
public:
    int dimension = 1;
    int nx = 0, ny = 0; // structured extents (cells per direction)
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

    std::vector<CellGeometry> cells;
    std::vector<double> cell_diameter;
    std::vector<MeshEdge> edges;
    std::vector<std::array<int, 4>> cell_edges; // edge id per side (-1 if unused)

    // Structured index -> cell id (-1 for deleted cells); used by 2D output.
    std::vector<int> grid_cell;

    double h_max = 0.0;
    double min_axis_spacing = 0.0; // min cell extent along any axis

    int n_cells() const { return static_cast<int>(cells.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }

    // Neighbor across a reference side; -1 at a non-periodic boundary.
    int neighbor(int cell, int side) const;

    double quasi_uniformity() const;
    double cell_measure(int c) const {
        return dimension == 1 ? cells[c].dx() : cells[c].dx() * cells[c].dy();
    }
};

enum class Perturbation { none, alternating };

// 1D mesh of n cells on [a,b]. The alternating perturbation shifts every
// odd-index interior node by +h/3; endpoints stay fixed.
MeshTopology build_interval_mesh(double a, double b, int n, Perturbation pert,
                                 const BoundarySpec& bc);

// Uniform rectangular mesh of nx*ny axis-aligned cells.
MeshTopology build_rect_mesh(double x0, double x1, double y0, double y1, int nx, int ny,
                             const BoundarySpec& bc);

// Wind tunnel with a step: [0,3]x[0,1] minus the region x>=0.6, y<=0.2, meshed so
// the step corner (0.6, 0.2) is a mesh node. Inflow left, outflow right,
// reflective walls (including the step surfaces).
MeshTopology build_forward_step_mesh(int nx, int ny);

} // namespace crkdg

#endif
