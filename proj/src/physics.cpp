#include "crkdg/physics.hpp"
#include "crkdg/errors.hpp"

#include <cmath>
#include <sstream>

namespace crkdg {

bool ConservationLaw::admissible(const double* u) const {
    for (int v = 0; v < n_var(); ++v)
        if (!std::isfinite(u[v])) return false;
    return true;
}

void ConservationLaw::eigenvectors(const double*, int, double*, double*) const {
    throw ConfigError("eigenvectors: not available for law " + name());
}

void ConservationLaw::flux_dot(const double* u, const double* nu, double* out) const {
    double fd[kMaxVar];
    const int nv = n_var();
    for (int v = 0; v < nv; ++v) out[v] = 0.0;
    for (int d = 0; d < dim(); ++d) {
        if (nu[d] == 0.0) continue;
        flux(u, d, fd);
        for (int v = 0; v < nv; ++v) out[v] += nu[d] * fd[v];
    }
}

void BuckleyLeverettLaw::flux(const double* u, int, double* f) const {
    const double x = u[0];
    const double num = 4.0 * x * x;
    const double den = num + (1.0 - x) * (1.0 - x);
    f[0] = num / den;
}

namespace {

double bl_dflux(double x) {
    const double d = 4.0 * x * x + (1.0 - x) * (1.0 - x);
    const double dd = 8.0 * x - 2.0 * (1.0 - x);
    return (8.0 * x * d - 4.0 * x * x * dd) / (d * d);
}

} // namespace

// |f'| is not monotone in u (sonic points at u = 0 and u = 1 with steep
// characteristics between), so a pointwise |f'(u)| badly underestimates the
// speeds of the waves a cell with this mean can emit. Bound |f'| over the
// interval between the state and the rest state u = 0 instead; time steps
// chosen from cell means then respect the fastest wave in the fan.
double BuckleyLeverettLaw::wave_speed(const double* u, const double* nu) const {
    const double x = u[0];
    const double lo = std::min(x, 0.0), hi = std::max(x, 0.0);
    double bound = std::abs(bl_dflux(x));
    const int n = 64;
    for (int i = 0; i <= n; ++i)
        bound = std::max(bound, std::abs(bl_dflux(lo + (hi - lo) * i / n)));
    return bound * std::abs(nu[0]);
}

double EulerLaw::pressure(const double* u) const {
    double ke = u[1] * u[1];
    if (dim_ == 2) ke += u[2] * u[2];
    ke *= 0.5 / u[0];
    return (kGamma - 1.0) * (u[dim_ + 1] - ke);
}

double EulerLaw::sound_speed(const double* u) const {
    return std::sqrt(kGamma * pressure(u) / u[0]);
}

void EulerLaw::flux(const double* u, int d, double* f) const {
    const double p = pressure(u);
    const double rho = u[0];
    const double E = u[dim_ + 1];
    if (dim_ == 1) {
        const double w = u[1] / rho;
        f[0] = u[1];
        f[1] = u[1] * w + p;
        f[2] = w * (E + p);
    } else {
        const double vel = u[1 + d] / rho;
        f[0] = u[1 + d];
        f[1] = u[1] * vel + (d == 0 ? p : 0.0);
        f[2] = u[2] * vel + (d == 1 ? p : 0.0);
        f[3] = vel * (E + p);
    }
}

double EulerLaw::wave_speed(const double* u, const double* nu) const {
    double vn = u[1] / u[0] * nu[0];
    if (dim_ == 2) vn += u[2] / u[0] * nu[1];
    return std::abs(vn) + sound_speed(u);
}

bool EulerLaw::admissible(const double* u) const {
    if (!ConservationLaw::admissible(u)) return false;
    return u[0] > 0.0 && pressure(u) > 0.0;
}

void EulerLaw::eigenvectors(const double* u, int d, double* R, double* Rinv) const {
    const double rho = u[0];
    const double p = pressure(u);
    const double c = std::sqrt(kGamma * p / rho);
    if (dim_ == 1) {
        const double w = u[1] / rho;
        const double H = (u[2] + p) / rho;
        const double b2 = (kGamma - 1.0) / (c * c);
        const double b1 = 0.5 * b2 * w * w;
        const double r[9] = {1.0,         1.0,           1.0,
                             w - c,       w,             w + c,
                             H - w * c,   0.5 * w * w,   H + w * c};
        const double l[9] = {0.5 * (b1 + w / c), -0.5 * (b2 * w + 1.0 / c), 0.5 * b2,
                             1.0 - b1,           b2 * w,                    -b2,
                             0.5 * (b1 - w / c), -0.5 * (b2 * w - 1.0 / c), 0.5 * b2};
        std::copy(r, r + 9, R);
        std::copy(l, l + 9, Rinv);
        return;
    }
    const double w = u[1] / rho;
    const double v = u[2] / rho;
    const double H = (u[3] + p) / rho;
    const double q2 = w * w + v * v;
    const double b2 = (kGamma - 1.0) / (c * c);
    const double b1 = 0.5 * b2 * q2;
    // un = velocity normal to the sweep direction d, ut = tangential.
    const double un = (d == 0) ? w : v;
    const double ut = (d == 0) ? v : w;
    // Columns: acoustic-, entropy, shear, acoustic+. Rows are ordered
    // (rho, rho*w, rho*v, E); for d=1 the momentum rows swap roles.
    auto set = [&](double* M, int r_, int c_, double val) { M[r_ * 4 + c_] = val; };
    const int mn = (d == 0) ? 1 : 2; // normal-momentum row
    const int mt = (d == 0) ? 2 : 1; // tangential-momentum row
    set(R, 0, 0, 1.0);      set(R, 0, 1, 1.0);      set(R, 0, 2, 0.0); set(R, 0, 3, 1.0);
    set(R, mn, 0, un - c);  set(R, mn, 1, un);      set(R, mn, 2, 0.0); set(R, mn, 3, un + c);
    set(R, mt, 0, ut);      set(R, mt, 1, ut);      set(R, mt, 2, 1.0); set(R, mt, 3, ut);
    set(R, 3, 0, H - un * c); set(R, 3, 1, 0.5 * q2); set(R, 3, 2, ut); set(R, 3, 3, H + un * c);

    set(Rinv, 0, 0, 0.5 * (b1 + un / c));
    set(Rinv, 0, mn, -0.5 * (b2 * un + 1.0 / c));
    set(Rinv, 0, mt, -0.5 * b2 * ut);
    set(Rinv, 0, 3, 0.5 * b2);
    set(Rinv, 1, 0, 1.0 - b1);
    set(Rinv, 1, mn, b2 * un);
    set(Rinv, 1, mt, b2 * ut);
    set(Rinv, 1, 3, -b2);
    set(Rinv, 2, 0, -ut);
    set(Rinv, 2, mn, 0.0);
    set(Rinv, 2, mt, 1.0);
    set(Rinv, 2, 3, 0.0);
    set(Rinv, 3, 0, 0.5 * (b1 - un / c));
    set(Rinv, 3, mn, -0.5 * (b2 * un - 1.0 / c));
    set(Rinv, 3, mt, -0.5 * b2 * ut);
    set(Rinv, 3, 3, 0.5 * b2);
}

void euler_prim_to_cons(int dim, const double* prim, double* cons) {
    const double rho = prim[0];
    cons[0] = rho;
    double ke = 0.0;
    for (int d = 0; d < dim; ++d) {
        cons[1 + d] = rho * prim[1 + d];
        ke += prim[1 + d] * prim[1 + d];
    }
    cons[dim + 1] = prim[dim + 1] / (kGamma - 1.0) + 0.5 * rho * ke;
}

void euler_cons_to_prim(int dim, const double* cons, double* prim) {
    const double rho = cons[0];
    prim[0] = rho;
    double ke = 0.0;
    for (int d = 0; d < dim; ++d) {
        prim[1 + d] = cons[1 + d] / rho;
        ke += prim[1 + d] * prim[1 + d];
    }
    prim[dim + 1] = (kGamma - 1.0) * (cons[dim + 1] - 0.5 * rho * ke);
}

std::array<double, kMaxVar> flux_eval(const ConservationLaw& law, const double* u,
                                      const double* nu) {
    if (!law.admissible(u)) {
        std::ostringstream os;
        os << "flux_eval: inadmissible state (";
        for (int v = 0; v < law.n_var(); ++v) os << (v ? ", " : "") << u[v];
        os << ") for law " << law.name();
        throw AdmissibilityError(os.str());
    }
    std::array<double, kMaxVar> out{};
    law.flux_dot(u, nu, out.data());
    return out;
}

void euler1d_density_wave(double x, double t, double* cons) {
    const double prim[3] = {1.0 + 0.2 * std::sin(M_PI * (x - t)), 1.0, 1.0};
    euler_prim_to_cons(1, prim, cons);
}

void euler2d_density_wave(double x, double y, double t, double* cons) {
    const double prim[4] = {1.0 + 0.2 * std::sin(M_PI * (x + y - t)), 0.7, 0.3, 1.0};
    euler_prim_to_cons(2, prim, cons);
}

double advection1d_sine(double x, double t) { return std::sin(x - t); }

double advection2d_sine(double x, double y, double t) {
    return std::sin(M_PI * (x - t)) * std::sin(M_PI * (y - t));
}

double burgers_smooth_exact(double x, double t) {
    if (t >= 1.0)
        throw DomainError("burgers_smooth_exact: characteristics cross at t = 1");
    double u = std::sin(x);
    for (int it = 0; it < 100; ++it) {
        const double g = u - std::sin(x - u * t);
        const double dg = 1.0 + t * std::cos(x - u * t);
        const double du = g / dg;
        u -= du;
        if (std::abs(du) < 1e-14) return u;
    }
    throw NumericError("burgers_smooth_exact: Newton did not converge");
}

namespace {

// Pressure function of the exact Riemann solver (Toro) and its derivative.
void pressure_fn(double p, double rho, double pk, double c, double& f, double& df) {
    if (p > pk) { // shock
        const double A = 2.0 / ((kGamma + 1.0) * rho);
        const double B = (kGamma - 1.0) / (kGamma + 1.0) * pk;
        const double sq = std::sqrt(A / (p + B));
        f = (p - pk) * sq;
        df = sq * (1.0 - 0.5 * (p - pk) / (B + p));
    } else { // rarefaction
        const double pr = p / pk;
        f = 2.0 * c / (kGamma - 1.0) * (std::pow(pr, (kGamma - 1.0) / (2.0 * kGamma)) - 1.0);
        df = 1.0 / (rho * c) * std::pow(pr, -(kGamma + 1.0) / (2.0 * kGamma));
    }
}

} // namespace

void riemann_exact_euler(const double* priml, const double* primr, double xi,
                         double* prim_out) {
    const double rl = priml[0], wl = priml[1], pl = priml[2];
    const double rr = primr[0], wr = primr[1], pr = primr[2];
    const double cl = std::sqrt(kGamma * pl / rl);
    const double cr = std::sqrt(kGamma * pr / rr);
    const double gm = (kGamma - 1.0) / (kGamma + 1.0);

    // Star pressure by Newton iteration, primitive-variable initial guess.
    double p = std::max(1e-8, 0.5 * (pl + pr) - 0.125 * (wr - wl) * (rl + rr) * (cl + cr));
    double fl, dfl, fr, dfr;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        pressure_fn(p, rl, pl, cl, fl, dfl);
        pressure_fn(p, rr, pr, cr, fr, dfr);
        const double g = fl + fr + (wr - wl);
        const double dp = g / (dfl + dfr);
        p = std::max(1e-12, p - dp);
        if (std::abs(dp) < 1e-12 * std::max(1.0, p)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericError("riemann_exact_euler: pressure iteration did not converge");
    pressure_fn(p, rl, pl, cl, fl, dfl);
    pressure_fn(p, rr, pr, cr, fr, dfr);
    const double ws = 0.5 * (wl + wr) + 0.5 * (fr - fl);

    if (xi <= ws) { // left of the contact
        if (p > pl) { // left shock
            const double sl = wl - cl * std::sqrt((kGamma + 1.0) / (2.0 * kGamma) * p / pl +
                                                  (kGamma - 1.0) / (2.0 * kGamma));
            if (xi <= sl) {
                prim_out[0] = rl; prim_out[1] = wl; prim_out[2] = pl;
            } else {
                prim_out[0] = rl * (p / pl + gm) / (gm * p / pl + 1.0);
                prim_out[1] = ws; prim_out[2] = p;
            }
        } else { // left rarefaction
            const double shl = wl - cl;
            const double cml = cl * std::pow(p / pl, (kGamma - 1.0) / (2.0 * kGamma));
            const double stl = ws - cml;
            if (xi <= shl) {
                prim_out[0] = rl; prim_out[1] = wl; prim_out[2] = pl;
            } else if (xi >= stl) {
                prim_out[0] = rl * std::pow(p / pl, 1.0 / kGamma);
                prim_out[1] = ws; prim_out[2] = p;
            } else {
                const double w = 2.0 / (kGamma + 1.0) * (cl + 0.5 * (kGamma - 1.0) * wl + xi);
                const double c = 2.0 / (kGamma + 1.0) * (cl + 0.5 * (kGamma - 1.0) * (wl - xi));
                prim_out[0] = rl * std::pow(c / cl, 2.0 / (kGamma - 1.0));
                prim_out[1] = w;
                prim_out[2] = pl * std::pow(c / cl, 2.0 * kGamma / (kGamma - 1.0));
            }
        }
    } else { // right of the contact
        if (p > pr) { // right shock
            const double sr = wr + cr * std::sqrt((kGamma + 1.0) / (2.0 * kGamma) * p / pr +
                                                  (kGamma - 1.0) / (2.0 * kGamma));
            if (xi >= sr) {
                prim_out[0] = rr; prim_out[1] = wr; prim_out[2] = pr;
            } else {
                prim_out[0] = rr * (p / pr + gm) / (gm * p / pr + 1.0);
                prim_out[1] = ws; prim_out[2] = p;
            }
        } else { // right rarefaction
            const double shr = wr + cr;
            const double cmr = cr * std::pow(p / pr, (kGamma - 1.0) / (2.0 * kGamma));
            const double str = ws + cmr;
            if (xi >= shr) {
                prim_out[0] = rr; prim_out[1] = wr; prim_out[2] = pr;
            } else if (xi <= str) {
                prim_out[0] = rr * std::pow(p / pr, 1.0 / kGamma);
                prim_out[1] = ws; prim_out[2] = p;
            } else {
                const double w = 2.0 / (kGamma + 1.0) * (-cr + 0.5 * (kGamma - 1.0) * wr + xi);
                const double c = 2.0 / (kGamma + 1.0) * (cr - 0.5 * (kGamma - 1.0) * (wr - xi));
                prim_out[0] = rr * std::pow(c / cr, 2.0 / (kGamma - 1.0));
                prim_out[1] = w;
                prim_out[2] = pr * std::pow(c / cr, 2.0 * kGamma / (kGamma - 1.0));
            }
        }
    }
}

void sod_exact(double x, double t, double* prim_out) {
    static const double left[3] = {1.0, 0.0, 1.0};
    static const double right[3] = {0.125, 0.0, 0.1};
    if (t < 0.0) throw DomainError("sod_exact: t must be nonnegative");
    if (t == 0.0) {
        const double* s = (x <= 0.5) ? left : right;
        prim_out[0] = s[0]; prim_out[1] = s[1]; prim_out[2] = s[2];
        return;
    }
    riemann_exact_euler(left, right, (x - 0.5) / t, prim_out);
}

// Mach-10 shock into (rho, p) = (1.4, 1) still air, inclined 60 degrees to the
// x axis. Rankine-Hugoniot with M = 10, gamma = 1.4 gives the post-shock state
// rho = 1.4*(2.4*M^2)/(0.4*M^2+2) = 8, p = (2.8*M^2-0.4)/2.4 = 116.5 and a
// normal speed 2*(M^2-1)/(2.4*M) = 8.25 behind the front; the velocity vector
// is that speed along the (downward-tilted) shock normal.
const std::array<double, 4> kDoubleMachPostPrim = {
    8.0, 8.25 * std::sqrt(3.0) / 2.0, -8.25 * 0.5, 116.5};
const std::array<double, 4> kDoubleMachPrePrim = {1.4, 0.0, 0.0, 1.0};

void double_mach_exact(double x, double y, double t, double* cons) {
    const double xs = 1.0 / 6.0 + (y + 20.0 * t) / std::sqrt(3.0);
    const auto& prim = (x < xs) ? kDoubleMachPostPrim : kDoubleMachPrePrim;
    euler_prim_to_cons(2, prim.data(), cons);
}

void ghost_state(const ConservationLaw& law, const BoundaryPolicy& policy,
                 BoundaryTag tag, const double* interior, const double* normal,
                 double x, double y, double t, double* exterior) {
    const int nv = law.n_var();
    switch (tag) {
        case BoundaryTag::outflow:
            for (int v = 0; v < nv; ++v) exterior[v] = interior[v];
            return;
        case BoundaryTag::inflow:
        case BoundaryTag::post_shock_exact:
            if (!policy.prescribed)
                throw ConfigError("ghost_state: inflow tag without prescribed data");
            policy.prescribed(x, y, t, exterior);
            return;
        case BoundaryTag::reflective: {
            if (law.name().substr(0, 5) != "euler")
                throw ConfigError("ghost_state: reflective boundary needs a flow law");
            for (int v = 0; v < nv; ++v) exterior[v] = interior[v];
            double mn = interior[1] * normal[0];
            if (law.dim() == 2) mn += interior[2] * normal[1];
            exterior[1] = interior[1] - 2.0 * mn * normal[0];
            if (law.dim() == 2) exterior[2] = interior[2] - 2.0 * mn * normal[1];
            return;
        }
        default:
            throw ConfigError("ghost_state: unexpected tag for a boundary edge");
    }
}

} // namespace crkdg
