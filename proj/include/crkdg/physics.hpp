#ifndef CRKDG_PHYSICS_HPP
#define CRKDG_PHYSICS_HPP

#include "crkdg/mesh.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace crkdg {

inline constexpr double kGamma = 1.4;
inline constexpr int kMaxVar = 4;

// A hyperbolic conservation law u_t + div f(u) = 0: per-direction fluxes,
// wave-speed bounds, admissibility, and (for systems) the characteristic
// decomposition used by the limiters.
class ConservationLaw {
public:
    virtual ~ConservationLaw() = default;

    virtual int n_var() const = 0;
    virtual int dim() const = 0;
    virtual std::string name() const = 0;

    // Flux component along coordinate direction d.
    virtual void flux(const double* u, int d, double* f) const = 0;

    // Upper bound on the spectral radius of d(f.nu)/du at state u.
    virtual double wave_speed(const double* u, const double* nu) const = 0;

    virtual bool admissible(const double* u) const;

    virtual bool has_eigenvectors() const { return false; }
    // Right eigenvectors R and inverse R^-1 (row-major n_var x n_var) of the
    // flux Jacobian along direction d.
    virtual void eigenvectors(const double* u, int d, double* R, double* Rinv) const;

    // f(u).nu combining directions.
    void flux_dot(const double* u, const double* nu, double* out) const;
};

class AdvectionLaw : public ConservationLaw {
public:
    AdvectionLaw(double bx, double by = 0.0, int dimension = 1)
        : beta_{bx, by}, dim_(dimension) {}
    int n_var() const override { return 1; }
    int dim() const override { return dim_; }
    std::string name() const override { return "advection"; }
    void flux(const double* u, int d, double* f) const override { f[0] = beta_[d] * u[0]; }
    double wave_speed(const double*, const double* nu) const override {
        return std::abs(beta_[0] * nu[0] + beta_[1] * nu[1]);
    }
    const std::array<double, 2>& beta() const { return beta_; }

private:
    std::array<double, 2> beta_;
    int dim_;
};

class BurgersLaw : public ConservationLaw {
public:
    int n_var() const override { return 1; }
    int dim() const override { return 1; }
    std::string name() const override { return "burgers"; }
    void flux(const double* u, int, double* f) const override { f[0] = 0.5 * u[0] * u[0]; }
    double wave_speed(const double* u, const double* nu) const override {
        return std::abs(u[0] * nu[0]);
    }
};

class BuckleyLeverettLaw : public ConservationLaw {
public:
    int n_var() const override { return 1; }
    int dim() const override { return 1; }
    std::string name() const override { return "buckley_leverett"; }
    void flux(const double* u, int, double* f) const override;
    double wave_speed(const double* u, const double* nu) const override;
};

class EulerLaw : public ConservationLaw {
public:
    explicit EulerLaw(int dimension) : dim_(dimension) {}
    int n_var() const override { return dim_ + 2; }
    int dim() const override { return dim_; }
    std::string name() const override { return dim_ == 1 ? "euler1d" : "euler2d"; }
    void flux(const double* u, int d, double* f) const override;
    double wave_speed(const double* u, const double* nu) const override;
    bool admissible(const double* u) const override;
    bool has_eigenvectors() const override { return true; }
    void eigenvectors(const double* u, int d, double* R, double* Rinv) const override;

    double pressure(const double* u) const;
    double sound_speed(const double* u) const;

private:
    int dim_;
};

// Conversions between conserved (rho, rho*w[, rho*v], E) and primitive
// (rho, w[, v], p) Euler variables.
void euler_prim_to_cons(int dim, const double* prim, double* cons);
void euler_cons_to_prim(int dim, const double* cons, double* prim);

// Algebraic flux f(u).nu with an admissibility gate; throws AdmissibilityError.
std::array<double, kMaxVar> flux_eval(const ConservationLaw& law, const double* u,
                                      const double* nu);

// --- Closed-form and oracle solutions -------------------------------------

// rho = 1 + 0.2 sin(pi (x - t)), w = 1, p = 1 (conserved variables out).
void euler1d_density_wave(double x, double t, double* cons);
// rho = 1 + 0.2 sin(pi (x + y - t)), w = 0.7, v = 0.3, p = 1.
void euler2d_density_wave(double x, double y, double t, double* cons);

double advection1d_sine(double x, double t);        // sin(x - t)
double advection2d_sine(double x, double y, double t); // sin(pi(x-t)) sin(pi(y-t))

// Smooth Burgers solution of u = sin(x - u t) by Newton iteration; valid t < 1.
double burgers_smooth_exact(double x, double t);

// Exact solution of the Riemann problem for 1D Euler, sampled at xi = x/t.
// States are primitive (rho, w, p). Throws NumericError on Newton failure.
void riemann_exact_euler(const double* prim_l, const double* prim_r, double xi,
                         double* prim_out);

// Sod tube: data (1,0,1) | (0.125,0,0.1) split at x = 0.5, sampled at (x, t).
void sod_exact(double x, double t, double* prim_out);

// Mach-10 oblique-shock field of the double Mach reflection problem:
// post-shock state behind x_s(y,t) = 1/6 + (y + 20 t)/sqrt(3), quiescent ahead.
void double_mach_exact(double x, double y, double t, double* cons);
extern const std::array<double, 4> kDoubleMachPostPrim; // (rho, w, v, p)
extern const std::array<double, 4> kDoubleMachPrePrim;

// Boundary data provider: prescribed states for inflow-like tags.
struct BoundaryPolicy {
    std::function<void(double x, double y, double t, double* cons)> prescribed;
};

// Exterior trace for a boundary edge. Periodic edges are resolved by the mesh
// topology and never reach this function.
void ghost_state(const ConservationLaw& law, const BoundaryPolicy& policy,
                 BoundaryTag tag, const double* interior, const double* normal,
                 double x, double y, double t, double* exterior);

} // namespace crkdg

#endif
