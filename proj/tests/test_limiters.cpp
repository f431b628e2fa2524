#include "crkdg/errors.hpp"
#include "crkdg/limiters.hpp"

#include <cmath>
#include <doctest.h>
#include <memory>
#include <random>

using namespace crkdg;

namespace {

struct Mesh1D {
    std::shared_ptr<MeshTopology> mesh;
    std::shared_ptr<ReferenceBasis> basis;
    Mesh1D(int n, int k, BoundaryTag tag = BoundaryTag::periodic) {
        mesh = std::make_shared<MeshTopology>(build_interval_mesh(
            0.0, 1.0, n, Perturbation::none, BoundarySpec::all(tag)));
        basis = std::make_shared<ReferenceBasis>(build_basis(1, k));
    }
};

} // namespace

TEST_CASE("troubled-cell detection") {
    BurgersLaw law;
    // globally linear data: nothing flagged
    {
        Mesh1D s(8, 1, BoundaryTag::outflow);
        const FieldCoefficients u = project_field(
            s.mesh, s.basis, 1, [](double x, double, double* o) { o[0] = x; });
        const auto flags = detect_troubled_cells(u, 0.0, false, law);
        for (char f : flags) CHECK(f == 0);
    }
    // step data with M=0: exactly the two cells adjacent to the jump
    {
        Mesh1D s(4, 1, BoundaryTag::outflow);
        FieldCoefficients u(s.mesh, s.basis, 1);
        for (int c = 0; c < 4; ++c)
            u.coeffs(c, 0)[0] = (c < 2 ? 0.0 : 1.0) / s.basis->const_mode_value;
        const auto flags = detect_troubled_cells(u, 0.0, false, law);
        CHECK(flags[0] == 0);
        CHECK(flags[1] == 1);
        CHECK(flags[2] == 1);
        CHECK(flags[3] == 0);
    }
    // smooth sine on (-pi, pi) at N=80, M=1: extremum deviations sit inside
    // the M h^2 exemption, so flags are rare and refinement does not add any
    {
        int counts[2];
        int idx = 0;
        for (int n : {80, 160}) {
            auto mesh = std::make_shared<MeshTopology>(build_interval_mesh(
                -M_PI, M_PI, n, Perturbation::none,
                BoundarySpec::all(BoundaryTag::periodic)));
            auto basis = std::make_shared<ReferenceBasis>(build_basis(1, 2));
            const FieldCoefficients u = project_field(
                mesh, basis, 1,
                [](double x, double, double* o) { o[0] = std::sin(x); });
            const auto flags = detect_troubled_cells(u, 1.0, false, law);
            int count = 0;
            for (char f : flags) count += f;
            counts[idx++] = count;
        }
        CHECK(counts[0] <= 4);
        CHECK(counts[1] <= counts[0]);
    }
    // k=0: never flagged
    {
        Mesh1D s(8, 0);
        FieldCoefficients u(s.mesh, s.basis, 1);
        u.coeffs(3, 0)[0] = 100.0;
        const auto flags = detect_troubled_cells(u, 0.0, false, law);
        for (char f : flags) CHECK(f == 0);
    }
}

TEST_CASE("WENO rebuild preserves means and polynomial data") {
    BurgersLaw law;
    LimiterConfig cfg;
    cfg.kind = LimiterKind::tvb_weno;
    cfg.tvb_m = 0.0;

    // random flagged data: means survive exactly
    {
        Mesh1D s(10, 2);
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        FieldCoefficients u(s.mesh, s.basis, 1);
        for (double& x : u.data) x = dist(rng);
        std::vector<double> means(10);
        for (int c = 0; c < 10; ++c) means[c] = u.mean(c, 0);
        std::vector<char> flags(10, 1);
        apply_weno_limiter_1d(u, flags, cfg, law);
        for (int c = 0; c < 10; ++c)
            CHECK(u.mean(c, 0) == doctest::Approx(means[c]).epsilon(1e-14));
    }
    // globally quadratic data: all candidates coincide, the rebuild is a no-op
    {
        Mesh1D s(10, 2);
        FieldCoefficients u = project_field(
            s.mesh, s.basis, 1,
            [](double x, double, double* o) { o[0] = 3.0 * x * x - x + 0.5; });
        FieldCoefficients orig = u;
        std::vector<char> flags(10, 1);
        apply_weno_limiter_1d(u, flags, cfg, law);
        for (size_t i = 0; i < u.data.size(); ++i)
            CHECK(u.data[i] == doctest::Approx(orig.data[i]).epsilon(1e-12));
    }
    // unflagged cells are untouched bitwise
    {
        Mesh1D s(10, 2);
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        FieldCoefficients u(s.mesh, s.basis, 1);
        for (double& x : u.data) x = dist(rng);
        FieldCoefficients orig = u;
        std::vector<char> flags(10, 0);
        flags[4] = 1;
        apply_weno_limiter_1d(u, flags, cfg, law);
        for (int c = 0; c < 10; ++c) {
            if (c == 4) continue;
            for (int m = 0; m < 3; ++m)
                CHECK(u.coeffs(c, 0)[m] == orig.coeffs(c, 0)[m]);
        }
    }
    // boundary cells fall back to the one-sided combination (no throw, mean kept)
    {
        Mesh1D s(6, 2, BoundaryTag::outflow);
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        FieldCoefficients u(s.mesh, s.basis, 1);
        for (double& x : u.data) x = dist(rng);
        const double m0 = u.mean(0, 0), m5 = u.mean(5, 0);
        std::vector<char> flags(6, 1);
        apply_weno_limiter_1d(u, flags, cfg, law);
        CHECK(u.mean(0, 0) == doctest::Approx(m0).epsilon(1e-14));
        CHECK(u.mean(5, 0) == doctest::Approx(m5).epsilon(1e-14));
    }
    // k > 3 unsupported
    {
        Mesh1D s(6, 4);
        FieldCoefficients u(s.mesh, s.basis, 1);
        std::vector<char> flags(6, 1);
        CHECK_THROWS_AS(apply_weno_limiter_1d(u, flags, cfg, law), ParameterError);
    }
}

TEST_CASE("characteristic WENO keeps conserved means") {
    EulerLaw law(1);
    LimiterConfig cfg;
    cfg.kind = LimiterKind::tvb_weno;
    cfg.characteristic = true;
    Mesh1D s(12, 2);
    FieldCoefficients u = project_field(s.mesh, s.basis, 3,
                                        [](double x, double, double* o) {
                                            const double prim[3] = {
                                                1.0 + 0.4 * (x > 0.5 ? 1.0 : 0.0),
                                                0.3 * std::sin(2 * M_PI * x),
                                                1.0 + 0.5 * (x > 0.5 ? 1.0 : 0.0)};
                                            euler_prim_to_cons(1, prim, o);
                                        });
    std::vector<double> tot0 = u.total_conserved();
    apply_limiter(u, cfg, law);
    std::vector<double> tot1 = u.total_conserved();
    for (int v = 0; v < 3; ++v)
        CHECK(tot1[v] == doctest::Approx(tot0[v]).epsilon(1e-14));
}

TEST_CASE("minmod slope limiter in 2D") {
    EulerLaw law2(2);
    AdvectionLaw adv2(1.0, 1.0, 2);
    auto mesh = std::make_shared<MeshTopology>(build_rect_mesh(
        0.0, 1.0, 0.0, 1.0, 6, 6, BoundarySpec::all(BoundaryTag::periodic)));
    auto basis = std::make_shared<ReferenceBasis>(build_basis(2, 1));
    LimiterConfig cfg;
    cfg.kind = LimiterKind::tvb_minmod;
    cfg.tvb_m = 0.0;

    // unflagged field: bitwise identity
    {
        std::mt19937 rng(2);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        FieldCoefficients u(mesh, basis, 1);
        for (double& x : u.data) x = dist(rng);
        FieldCoefficients orig = u;
        std::vector<char> flags(mesh->n_cells(), 0);
        apply_minmod_limiter(u, flags, cfg, adv2);
        for (size_t i = 0; i < u.data.size(); ++i) CHECK(u.data[i] == orig.data[i]);
    }
    // slope between same-sign neighbor differences: kept; sign mismatch: zeroed
    {
        FieldCoefficients u(mesh, basis, 1);
        const double cm = basis->const_mode_value; // 1/2
        // linear-in-x means: mean difference 0.1 between columns
        for (int j = 0; j < 6; ++j)
            for (int i = 0; i < 6; ++i) {
                const int c = mesh->grid_cell[j * 6 + i];
                u.coeffs(c, 0)[0] = 0.1 * i / cm;
            }
        const int mid = mesh->grid_cell[2 * 6 + 2];
        const double phi_face = std::sqrt(3.0) / 2.0;
        u.coeffs(mid, 0)[1] = 0.05 / phi_face; // deviation 0.05 within (0, 0.1)
        std::vector<char> flags(mesh->n_cells(), 0);
        flags[mid] = 1;
        FieldCoefficients kept = u;
        apply_minmod_limiter(kept, flags, cfg, adv2);
        CHECK(kept.coeffs(mid, 0)[1] == u.coeffs(mid, 0)[1]);

        // reverse the slope sign: arguments disagree, slope snaps to zero
        u.coeffs(mid, 0)[1] = -0.05 / phi_face;
        FieldCoefficients zeroed = u;
        apply_minmod_limiter(zeroed, flags, cfg, adv2);
        CHECK(zeroed.coeffs(mid, 0)[1] == 0.0);
    }
    // idempotence: applying twice equals applying once, bitwise
    {
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        auto basis2 = std::make_shared<ReferenceBasis>(build_basis(2, 2));
        FieldCoefficients u(mesh, basis2, 4);
        for (double& x : u.data) x = dist(rng);
        // keep states admissible for the characteristic transform: use means
        // near a reference state
        for (int c = 0; c < mesh->n_cells(); ++c) {
            u.coeffs(c, 0)[0] = (2.0 + 0.2 * dist(rng)) / basis2->const_mode_value;
            u.coeffs(c, 3)[0] = (8.0 + 0.5 * dist(rng)) / basis2->const_mode_value;
        }
        LimiterConfig c2 = cfg;
        c2.characteristic = true;
        std::vector<char> flags(mesh->n_cells(), 1);
        FieldCoefficients once = u;
        apply_minmod_limiter(once, flags, c2, law2);
        FieldCoefficients twice = once;
        apply_minmod_limiter(twice, flags, c2, law2);
        for (size_t i = 0; i < once.data.size(); ++i)
            CHECK(twice.data[i] == once.data[i]);
    }
    // mean preservation across the full pipeline
    {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        FieldCoefficients u(mesh, basis, 1);
        for (double& x : u.data) x = dist(rng);
        std::vector<double> tot0 = u.total_conserved();
        LimiterConfig c1 = cfg;
        c1.tvb_m = 0.0;
        apply_limiter(u, c1, adv2);
        std::vector<double> tot1 = u.total_conserved();
        CHECK(tot1[0] == doctest::Approx(tot0[0]).epsilon(1e-14));
    }
}

TEST_CASE("limiter dispatch") {
    BurgersLaw law;
    Mesh1D s(8, 2);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FieldCoefficients u(s.mesh, s.basis, 1);
    for (double& x : u.data) x = dist(rng);

    LimiterConfig none;
    FieldCoefficients copy = u;
    CHECK(apply_limiter(copy, none, law) == 0);
    for (size_t i = 0; i < u.data.size(); ++i) CHECK(copy.data[i] == u.data[i]);

    LimiterConfig weno;
    weno.kind = LimiterKind::tvb_weno;
    weno.tvb_m = 0.0;
    CHECK(apply_limiter(copy, weno, law) > 0);

    CHECK(limiter_kind_from_name("tvb_weno") == LimiterKind::tvb_weno);
    CHECK_THROWS_AS(limiter_kind_from_name("superbee"), ConfigError);
}
