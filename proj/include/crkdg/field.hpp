#ifndef CRKDG_FIELD_HPP
#define CRKDG_FIELD_HPP

#include "crkdg/basis.hpp"
#include "crkdg/mesh.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace crkdg {

// The DG solution: per-cell, per-variable modal coefficients, cell-major
// (data[cell][var][mode]).
class FieldCoefficients {
public:
    FieldCoefficients() = default;
    FieldCoefficients(std::shared_ptr<const MeshTopology> mesh,
                      std::shared_ptr<const ReferenceBasis> basis, int n_var);

    std::shared_ptr<const MeshTopology> mesh;
    std::shared_ptr<const ReferenceBasis> basis;
    int n_var = 0;
    int n_modes = 0;
    std::vector<double> data;

    double* cell(int c) { return &data[static_cast<size_t>(c) * n_var * n_modes]; }
    const double* cell(int c) const {
        return &data[static_cast<size_t>(c) * n_var * n_modes];
    }
    double* coeffs(int c, int v) { return cell(c) + v * n_modes; }
    const double* coeffs(int c, int v) const { return cell(c) + v * n_modes; }

    double mean(int c, int v) const {
        return coeffs(c, v)[0] * basis->const_mode_value;
    }
    void cell_means(int c, double* out) const {
        for (int v = 0; v < n_var; ++v) out[v] = mean(c, v);
    }

    // u_h at a reference point of one cell (slow path; table-free).
    void eval_at(int c, double xi, double eta, double* out) const;

    FieldCoefficients clone_shape() const; // same layout, zero data

    void fill(double v) { std::fill(data.begin(), data.end(), v); }
    void axpy(double a, const FieldCoefficients& x); // this += a * x

    // Total of cell averages weighted by cell measures, per variable.
    std::vector<double> total_conserved() const;
};

// L2 projection of a pointwise sampler onto every cell.
FieldCoefficients project_field(std::shared_ptr<const MeshTopology> mesh,
                                std::shared_ptr<const ReferenceBasis> basis, int n_var,
                                const std::function<void(double, double, double*)>& f);

} // namespace crkdg

#endif
