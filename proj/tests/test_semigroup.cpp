#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hslab/norms.hpp"
#include "hslab/semigroup.hpp"
#include "test_helpers.hpp"

using namespace hslab;
using namespace testutil;
using semigroup::EvolveMethod;
using semigroup::SemigroupQuery;

namespace {
constexpr double kPi = std::numbers::pi;

const EvolveMethod kMethods[3] = {EvolveMethod::direct, EvolveMethod::fast_convolution,
                                  EvolveMethod::mellin_multiplier};

RadialProfile evolved_gaussian(double sigma, double t, const LogRadialGrid& grid) {
    RadialProfile p;
    p.grid = grid;
    p.values.resize(static_cast<std::size_t>(grid.count));
    const double v = sigma * sigma + 2.0 * t;
    for (int i = 0; i < grid.count; ++i)
        p.values[static_cast<std::size_t>(i)] =
            sigma / std::sqrt(v) * std::exp(-0.5 * grid.s(i) * grid.s(i) / v);
    return p;
}
}  // namespace

TEST_CASE("heat kernel basics") {
    CHECK_THROWS_AS(semigroup::heat_kernel(0.0, 0.0, 0.0), std::domain_error);
    CHECK(semigroup::heat_kernel(0.3, 1.1, 0.7) == semigroup::heat_kernel(1.1, 0.3, 0.7));
    CHECK(semigroup::heat_kernel(2.0, 2.0, 0.25) ==
          doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
    // closed-form spot value e^{-1} / sqrt(pi)
    CHECK(std::abs(semigroup::heat_kernel(0.0, 1.0, 0.25) - 0.2075537487102974) <= 1e-13);

    // quadrature normalization on a fine line
    for (double t : {0.05, 0.5}) {
        double mass = 0.0;
        const double h = 0.002;
        for (int i = -20000; i <= 20000; ++i) mass += semigroup::heat_kernel(0.0, i * h, t) * h;
        CHECK(std::abs(mass - 1.0) <= 1e-10);
    }
}

TEST_CASE("constant profiles are fixed points at interior nodes") {
    const LogRadialGrid grid = default_grid();
    RadialProfile p;
    p.grid = grid;
    p.values.assign(static_cast<std::size_t>(grid.count), cd{1.0, 0.0});
    for (EvolveMethod m : kMethods) {
        const RadialProfile q = semigroup::evolve(p, SemigroupQuery::make(0.5, m));
        double err = 0.0;
        for (int i = 0; i < grid.count; ++i) {
            // interior means clear of the zero-extension boundary layer,
            // whose reach is erfc(d / 2 sqrt(t)): d >= 7 keeps it below 1e-12
            if (std::abs(grid.s(i)) > 5.0) continue;
            err = std::max(err, std::abs(q.values[static_cast<std::size_t>(i)] - 1.0));
        }
        CAPTURE(semigroup::method_name(m));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("Gaussian evolves to the closed-form Gaussian") {
    const LogRadialGrid grid = default_grid();
    const RadialProfile g = gaussian_profile(1.0, 0.0, grid);
    for (double t : {0.1, 1.0}) {
        const RadialProfile want = evolved_gaussian(1.0, t, grid);
        for (EvolveMethod m : kMethods) {
            const RadialProfile got = semigroup::evolve(g, SemigroupQuery::make(t, m));
            CAPTURE(semigroup::method_name(m));
            CHECK(sup_diff(got, want) <= 1e-9);
        }
    }
}

TEST_CASE("three methods agree within 1e-8 on random smooth profiles") {
    Rng rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        RadialProfile g = mixture_profile(rng);
        for (double t : {0.01, 0.1, 1.0}) {
            const RadialProfile a = semigroup::evolve(g, SemigroupQuery::make(t, kMethods[0]));
            const RadialProfile b = semigroup::evolve(g, SemigroupQuery::make(t, kMethods[1]));
            const RadialProfile c = semigroup::evolve(g, SemigroupQuery::make(t, kMethods[2]));
            CHECK(sup_diff(a, b) <= 1e-8);
            CHECK(sup_diff(a, c) <= 1e-8);
            CHECK(sup_diff(b, c) <= 1e-8);
        }
    }
}

TEST_CASE("semigroup law") {
    Rng rng(42);
    const RadialProfile g = mixture_profile(rng);
    const double scale = sup_abs(g);
    for (double t1 : {0.05, 0.2, 1.0}) {
        for (double t2 : {0.05, 0.2, 1.0}) {
            const RadialProfile once =
                semigroup::evolve(g, SemigroupQuery::make(t1 + t2, EvolveMethod::fast_convolution));
            const RadialProfile twice = semigroup::evolve(
                semigroup::evolve(g, SemigroupQuery::make(t2, EvolveMethod::fast_convolution)),
                SemigroupQuery::make(t1, EvolveMethod::fast_convolution));
            CHECK(sup_diff(once, twice) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("positivity, maximum principle, and contraction") {
    Rng rng(43);
    RadialProfile g = mixture_profile(rng);  // nonnegative mixture
    const double sup0 = sup_abs(g);
    double l2 = 0.0;
    for (const auto& v : g.values) l2 += std::norm(v);

    for (EvolveMethod m : {EvolveMethod::direct, EvolveMethod::fast_convolution}) {
        const RadialProfile q = semigroup::evolve(g, SemigroupQuery::make(0.3, m));
        double minre = 1e300, sup1 = 0.0, l2e = 0.0;
        for (const auto& v : q.values) {
            minre = std::min(minre, v.real());
            sup1 = std::max(sup1, std::abs(v));
            l2e += std::norm(v);
        }
        CAPTURE(semigroup::method_name(m));
        CHECK(minre >= -1e-12);
        CHECK(sup1 <= sup0 * (1.0 + 1e-12));
        CHECK(l2e <= l2 * (1.0 + 1e-12));
    }
}

TEST_CASE("smoothing bounds with the explicit constants") {
    Rng rng(44);
    for (int trial = 0; trial < 4; ++trial) {
        const RadialProfile g = mixture_profile(rng);
        for (double p : {1.0, 2.0, 4.0}) {
            const double gp = norms::lq_norm_line(g, p);
            for (double t : {0.05, 0.5}) {
                const RadialProfile q = semigroup::evolve(g, SemigroupQuery::make(t, EvolveMethod::fast_convolution));
                const double cp = std::pow(4.0 * kPi, -0.5 / p) *
                                  (p == 1.0 ? 1.0 : std::pow(p / (p - 1.0), -0.5 * (p - 1.0) / p));
                const double rhs = cp * std::pow(t, -0.5 / p) * gp;
                CHECK(norms::linf_norm(q) <= rhs * (1.0 + 1e-9));

                const double drhs = std::pow(kPi * t, -0.5) * gp;
                CHECK(norms::lq_norm_line(d_ds(q, DerivScheme::spectral), p) <= drhs * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("P_t commutes with the spherical mean") {
    const LogRadialGrid grid = default_grid();
    const SphericalQuadrature sphere = make_spherical_quadrature(3, 6);
    LogField g = make_log_field(grid, sphere);
    for (int i = 0; i < grid.count; ++i) {
        const double s = grid.s(i);
        for (int j = 0; j < sphere.node_count(); ++j)
            g.at(i, j) = std::exp(-0.5 * s * s) * (1.0 + 0.5 * sphere.nodes[static_cast<std::size_t>(j)][2]);
    }
    const auto q = SemigroupQuery::make(0.2, EvolveMethod::fast_convolution);
    const RadialProfile a = spherical_mean(semigroup::evolve(g, q));
    const RadialProfile b = semigroup::evolve(spherical_mean(g), q);
    CHECK(sup_diff(a, b) <= 1e-13);
}

TEST_CASE("e^{-t L*L}") {
    const ScalarField f = log_gaussian_field(3, 1.0, 0.0);

    SUBCASE("t -> 0 recovers the field") {
        const ScalarField g = semigroup::evolve_LstarL(f, 1e-4);
        double sup = 0.0, dev = 0.0;
        for (std::size_t k = 0; k < f.values.size(); ++k) {
            sup = std::max(sup, std::abs(f.values[k]));
            dev = std::max(dev, std::abs(g.values[k] - f.values[k]));
        }
        CHECK(dev <= 1e-3 * sup);
    }

    SUBCASE("prefactor composition is literal") {
        const double t = 0.5;
        const ScalarField a = semigroup::evolve_LstarL(f, t, EvolveMethod::fast_convolution);
        ScalarField b = phi_inverse(
            semigroup::evolve(phi_forward(f), SemigroupQuery::make(t, EvolveMethod::fast_convolution)));
        const double pre = std::exp(-t * 9.0 / 4.0);
        for (cd& v : b.values) v *= pre;
        for (std::size_t k = 0; k < a.values.size(); k += 53) {
            CHECK(a.values[k].real() == b.values[k].real());
            CHECK(a.values[k].imag() == b.values[k].imag());
        }
    }

    SUBCASE("matches direct quadrature of the kernel representation") {
        // f(x) = |x|^{-3/2} exp(-(ln|x|)^2/2) radial in R^3, so Phi f is a unit Gaussian
        const double t = 0.5, n = 3.0;
        const ScalarField lst = semigroup::evolve_LstarL(f, t, EvolveMethod::direct);
        // independent Simpson quadrature in u = ln z of
        //   e^{-t n^2/4} (4 pi t)^{-1/2} r^{-n/2} int e^{-(ln r - u)^2 / 4t} e^{u n / 2} psi(e^u) du
        const int m = 24000;
        const double lo = -30.0, hi = 30.0, hu = (hi - lo) / m;
        double dev = 0.0, sup = 0.0;
        for (int i = 0; i < f.grid.count; i += 41) {
            const double s = f.grid.s(i);
            if (std::abs(s) > 6.0) continue;
            double acc = 0.0;
            for (int k = 0; k <= m; ++k) {
                const double u = lo + k * hu;
                const double w = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
                const double psi = std::exp(-1.5 * u) * std::exp(-0.5 * u * u);
                acc += w * std::exp(-(s - u) * (s - u) / (4.0 * t)) * std::exp(0.5 * n * u) * psi;
            }
            acc *= hu / 3.0;
            const double want =
                std::exp(-t * n * n / 4.0) / std::sqrt(4.0 * kPi * t) * std::exp(-0.5 * n * s) * acc;
            dev = std::max(dev, std::abs(lst.at(i, 0) - want));
            sup = std::max(sup, std::abs(want));
        }
        CHECK(dev <= 1e-8 * sup);

        // the same u-integral in closed form: unit-Gaussian convolution
        const double closed0 = std::exp(-t * n * n / 4.0) / std::sqrt(1.0 + 2.0 * t);
        int mid = f.grid.count / 2;
        double best = 1e300;
        for (int i = 0; i < f.grid.count; ++i)
            if (std::abs(f.grid.s(i)) < std::abs(f.grid.s(mid))) mid = i;
        const double s0 = f.grid.s(mid);
        const double want0 = closed0 * std::exp(-0.5 * n * s0) * std::exp(-0.5 * s0 * s0 / (1.0 + 2.0 * t));
        best = std::abs(lst.at(mid, 0) - want0);
        CHECK(best <= 1e-9);
    }
}

TEST_CASE("contraction of e^{-t L*L}") {
    const ScalarField f = log_gaussian_field(4, 0.9, 0.1);
    const double t = 0.3;
    const ScalarField g = semigroup::evolve_LstarL(f, t);
    const double before = std::sqrt(norms::rn_lp_integral(f, 2.0));
    const double after = std::sqrt(norms::rn_lp_integral(g, 2.0));
    CHECK(after <= std::exp(-t * 16.0 / 4.0) * before * (1.0 + 1e-12));
}

TEST_CASE("query validation and leakage") {
    CHECK_THROWS_AS(SemigroupQuery::make(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SemigroupQuery::make(5e-5), std::invalid_argument);
    CHECK_THROWS_AS(SemigroupQuery::make(2e4), std::invalid_argument);
    CHECK_THROWS_AS(SemigroupQuery::make(1.0, EvolveMethod::direct, 1.0), std::invalid_argument);

    // mass parked next to the boundary leaks out of the padded window once
    // the tolerance asks for more than the kernel-tail floor
    const LogRadialGrid grid = default_grid();
    RadialProfile p = gaussian_profile(0.5, 11.8, grid);
    SemigroupQuery strict = SemigroupQuery::make(1.0, EvolveMethod::fast_convolution);
    strict.leakage_tolerance = 1e-12;
    CHECK_THROWS_AS(semigroup::evolve(p, strict), std::runtime_error);
    // centered data passes even the strict tolerance
    CHECK_NOTHROW(semigroup::evolve(gaussian_profile(0.6, 0.0, grid), strict));
}
