#include "crkdg/field.hpp"
#include "crkdg/errors.hpp"

#include <cstring>

namespace crkdg {

FieldCoefficients::FieldCoefficients(std::shared_ptr<const MeshTopology> mesh_,
                                     std::shared_ptr<const ReferenceBasis> basis_,
                                     int n_var_)
    : mesh(std::move(mesh_)), basis(std::move(basis_)), n_var(n_var_) {
    if (mesh->dimension != basis->dimension)
        throw ParameterError("FieldCoefficients: mesh/basis dimension mismatch");
    n_modes = basis->n_modes;
    data.assign(static_cast<size_t>(mesh->n_cells()) * n_var * n_modes, 0.0);
}

void FieldCoefficients::eval_at(int c, double xi, double eta, double* out) const {
    double phi[16];
    basis->eval_modes(xi, eta, phi);
    const double* cc = cell(c);
    for (int v = 0; v < n_var; ++v) {
        double s = 0.0;
        for (int m = 0; m < n_modes; ++m) s += cc[v * n_modes + m] * phi[m];
        out[v] = s;
    }
}

FieldCoefficients FieldCoefficients::clone_shape() const {
    FieldCoefficients f;
    f.mesh = mesh;
    f.basis = basis;
    f.n_var = n_var;
    f.n_modes = n_modes;
    f.data.assign(data.size(), 0.0);
    return f;
}

void FieldCoefficients::axpy(double a, const FieldCoefficients& x) {
    const size_t n = data.size();
    for (size_t i = 0; i < n; ++i) data[i] += a * x.data[i];
}

std::vector<double> FieldCoefficients::total_conserved() const {
    std::vector<double> tot(n_var, 0.0);
    for (int c = 0; c < mesh->n_cells(); ++c) {
        const double meas = mesh->cell_measure(c);
        for (int v = 0; v < n_var; ++v) tot[v] += meas * mean(c, v);
    }
    return tot;
}

FieldCoefficients project_field(std::shared_ptr<const MeshTopology> mesh,
                                std::shared_ptr<const ReferenceBasis> basis, int n_var,
                                const std::function<void(double, double, double*)>& f) {
    FieldCoefficients field(mesh, basis, n_var);
    for (int c = 0; c < mesh->n_cells(); ++c)
        l2_project(f, mesh->cells[c], *basis, n_var, field.cell(c), c);
    return field;
}

} // namespace crkdg
