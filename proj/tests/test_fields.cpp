#include <cmath>

#include "doctest.h"
#include "hslab/norms.hpp"
#include "test_helpers.hpp"

using namespace hslab;
using namespace testutil;

TEST_CASE("phi maps are pointwise reciprocal") {
    Rng rng(7);
    const ScalarField f = extremal::random_mixture_field(3, {{0.0, 2.0}}, rng, true);
    const ScalarField back = phi_inverse(phi_forward(f));
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        err = std::max(err, std::abs(back.values[k] - f.values[k]));
        scale = std::max(scale, std::abs(f.values[k]));
    }
    CHECK(err <= 1e-15 * scale);
}

TEST_CASE("f = |x|^{-n/2} maps to the constant log field and back") {
    const LogRadialGrid grid = default_grid();
    for (int n : {1, 2, 3, 5}) {
        ScalarField f = make_scalar_field(grid, make_radial_marker(n));
        for (int i = 0; i < grid.count; ++i) f.at(i, 0) = std::exp(-0.5 * n * grid.s(i));
        const LogField g = phi_forward(f);
        for (int i = 0; i < grid.count; i += 97) CHECK(std::abs(g.at(i, 0) - 1.0) <= 1e-12);

        LogField ones = make_log_field(grid, make_radial_marker(n));
        for (auto& v : ones.values) v = 1.0;
        const ScalarField h = phi_inverse(ones);
        for (int i = 0; i < grid.count; i += 97)
            CHECK(std::abs(h.at(i, 0) - std::exp(-0.5 * n * grid.s(i))) <=
                  1e-12 * std::exp(-0.5 * n * grid.s(i)));
    }
}

TEST_CASE("phi preserves the L2 norm; Gaussian benchmark value") {
    const ScalarField f = gaussian_rn(3);
    const double rn = norms::rn_lp_integral(f, 2.0);
    const LogField g = phi_forward(f);
    const double cyl = std::pow(norms::lp_norm_cylinder(g, 2.0), 2.0);
    CHECK(std::abs(cyl - rn) <= 1e-12 * rn);
    CHECK(std::abs(cyl - 5.568327996831708) <= 1e-9 * 5.568327996831708);

    Rng rng(8);
    const ScalarField h = extremal::random_mixture_field(2, {{0.0, 2.0}}, rng, true);
    const double rn2 = norms::rn_lp_integral(h, 2.0);
    const double cyl2 = std::pow(norms::lp_norm_cylinder(phi_forward(h), 2.0), 2.0);
    CHECK(std::abs(cyl2 - rn2) <= 1e-9 * rn2);
}

TEST_CASE("spherical mean") {
    const LogRadialGrid grid = LogRadialGrid::make(-6.0, 6.0, 256);

    SUBCASE("radial data reproduces the slice") {
        const SphericalQuadrature sphere = make_spherical_quadrature(3, 8);
        LogField g = make_log_field(grid, sphere);
        for (int i = 0; i < grid.count; ++i)
            for (int j = 0; j < sphere.node_count(); ++j) g.at(i, j) = std::exp(-0.1 * grid.s(i) * grid.s(i));
        const RadialProfile G = spherical_mean(g);
        for (int i = 0; i < grid.count; i += 13)
            CHECK(std::abs(G.values[static_cast<std::size_t>(i)] - g.at(i, 0)) <= 1e-14);
    }

    SUBCASE("cos(theta) component averages away") {
        const SphericalQuadrature sphere = make_spherical_quadrature(3, 8);
        LogField g = make_log_field(grid, sphere);
        for (int i = 0; i < grid.count; ++i) {
            const double phi = std::exp(-0.2 * grid.s(i) * grid.s(i));
            for (int j = 0; j < sphere.node_count(); ++j)
                g.at(i, j) = phi * (1.0 + sphere.nodes[static_cast<std::size_t>(j)][2]);
        }
        const RadialProfile G = spherical_mean(g);
        for (int i = 0; i < grid.count; i += 13) {
            const double phi = std::exp(-0.2 * grid.s(i) * grid.s(i));
            CHECK(std::abs(G.values[static_cast<std::size_t>(i)] - phi) <= 1e-13);
        }
    }

    SUBCASE("agrees with a much finer quadrature") {
        auto smooth = [](double s, const std::array<double, 3>& w) {
            return std::exp(-0.3 * s * s) * (1.0 + 0.4 * w[2] + 0.25 * w[0] * w[1] + 0.1 * w[2] * w[2]);
        };
        const SphericalQuadrature coarse = make_spherical_quadrature(3, 10);
        const SphericalQuadrature fine = make_spherical_quadrature(3, 40);
        LogField gc = make_log_field(grid, coarse), gf = make_log_field(grid, fine);
        for (int i = 0; i < grid.count; ++i) {
            for (int j = 0; j < coarse.node_count(); ++j)
                gc.at(i, j) = smooth(grid.s(i), coarse.nodes[static_cast<std::size_t>(j)]);
            for (int j = 0; j < fine.node_count(); ++j)
                gf.at(i, j) = smooth(grid.s(i), fine.nodes[static_cast<std::size_t>(j)]);
        }
        const RadialProfile a = spherical_mean(gc), b = spherical_mean(gf);
        CHECK(sup_diff(a, b) <= 1e-10);
    }

    SUBCASE("marker quadrature demands the radial assertion") {
        LogField g = make_log_field(grid, make_radial_marker(5));
        CHECK_THROWS_AS(spherical_mean(g), std::invalid_argument);
        CHECK_NOTHROW(spherical_mean(g, true));
    }
}

TEST_CASE("tail report separates compliant and leaking fields") {
    const ScalarField good = log_gaussian_field(3, 1.0, 0.0);
    CHECK(tail_report(good).relative < 1e-12);

    const ScalarField bad = log_gaussian_field(3, 1.0, 10.5);  // mass parked at the window edge
    CHECK(tail_report(bad).relative > 1e-3);
}

TEST_CASE("CSV dumps carry the fixed headers and round-trip profiles") {
    const LogRadialGrid grid = LogRadialGrid::make(-2.0, 2.0, 32);
    ScalarField f = make_scalar_field(grid, make_spherical_quadrature(2, 2));
    f.at(3, 1) = cd{1.25, -0.5};
    const std::string fcsv = field_to_csv(f);
    CHECK(fcsv.rfind("s,omega_index,re,im\n", 0) == 0);

    RadialProfile p;
    p.grid = grid;
    p.values.assign(32, cd{0.0, 0.0});
    p.values[5] = cd{0.75, 0.25};
    const std::string pcsv = profile_to_csv(p);
    CHECK(pcsv.rfind("s,re,im\n", 0) == 0);
    const RadialProfile q = profile_from_csv(pcsv);
    CHECK(q.grid.count == 32);
    CHECK(sup_diff(p, q) <= 1e-15);
}

TEST_CASE("non-finite samples are rejected") {
    ScalarField f = gaussian_rn(3);
    f.values[10] = cd{std::nan(""), 0.0};
    CHECK_THROWS_AS(phi_forward(f), std::domain_error);
}
