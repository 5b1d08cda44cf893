#include <cmath>

#include "doctest.h"
#include "hslab/mellin.hpp"
#include "hslab/norms.hpp"
#include "hslab/semigroup.hpp"
#include "test_helpers.hpp"

using namespace hslab;
using namespace testutil;

TEST_CASE("Parseval holds to rounding") {
    Rng rng(31);
    const ScalarField f = extremal::random_mixture_field(3, {{0.0, 2.0}}, rng, true);
    const mellin::MellinData d = mellin::mellin_forward(f);
    double spec = 0.0;
    for (int k = 0; k < static_cast<int>(d.frequencies.size()); ++k)
        for (int j = 0; j < d.node_count(); ++j)
            spec += d.sphere.weights[static_cast<std::size_t>(j)] * std::norm(d.at(k, j));
    spec *= d.delta_tau();
    const double direct = norms::rn_lp_integral(f, 2.0);
    CHECK(std::abs(spec - direct) <= 1e-12 * direct);
}

TEST_CASE("Gaussian maps to a Gaussian of unit variance") {
    const ScalarField f = log_gaussian_field(3, 1.0, 0.0);
    const mellin::MellinData d = mellin::mellin_forward(f);
    double err = 0.0;
    for (int k = 0; k < static_cast<int>(d.frequencies.size()); ++k) {
        const double tau = d.frequencies[static_cast<std::size_t>(k)];
        err = std::max(err, std::abs(d.at(k, 0) - cd{std::exp(-0.5 * tau * tau), 0.0}));
    }
    CHECK(err <= 1e-9);
}

TEST_CASE("real radial data has Hermitian-symmetric spectra") {
    const ScalarField f = log_gaussian_field(3, 0.8, 0.6);
    const mellin::MellinData d = mellin::mellin_forward(f);
    const int n = static_cast<int>(d.frequencies.size());
    double err = 0.0;
    // ascending layout pairs k and n-k (skip the unpaired lowest bin)
    for (int k = 1; k < n; ++k) {
        const cd a = d.at(k, 0);
        const cd b = d.at(n - k, 0);
        err = std::max(err, std::abs(a - std::conj(b)));
    }
    CHECK(err <= 1e-12);
}

TEST_CASE("inverse round-trip and trivial multiplier") {
    Rng rng(32);
    const ScalarField f = extremal::random_mixture_field(2, {{0.0, 2.0}}, rng, true);
    mellin::MellinData d = mellin::mellin_forward(f);

    // transform fidelity lives on the cylinder; the r^{-n/2} factor of the
    // final change of coordinates rescales any flat transform noise by
    // e^{n|s|/2} at the far ends, so the roundtrip is weighted back
    const ScalarField back = mellin::mellin_inverse(d);
    const LogField g = phi_forward(f), gb = phi_forward(back);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        err = std::max(err, std::abs(gb.values[k] - g.values[k]));
        scale = std::max(scale, std::abs(g.values[k]));
    }
    CHECK(err <= 1e-11 * scale);

    std::vector<double> ones(d.frequencies.size(), 1.0);
    mellin::apply_multiplier(d, ones);
    const ScalarField same = mellin::mellin_inverse(d);
    double err2 = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        err2 = std::max(err2, std::abs(same.values[k] - back.values[k]));
    CHECK(err2 == 0.0);
}

TEST_CASE("Gaussian multiplier then inversion is the multiplier evolution path, bitwise") {
    const ScalarField f = log_gaussian_field(3, 1.1, -0.2);
    const LogField g = phi_forward(f);
    const double t = 0.4;

    mellin::MellinData d = mellin::forward_log(g);
    std::vector<double> mult(d.frequencies.size());
    for (std::size_t k = 0; k < mult.size(); ++k)
        mult[k] = std::exp(-t * d.frequencies[k] * d.frequencies[k]);
    mellin::apply_multiplier(d, mult);
    const LogField manual = mellin::inverse_log(d);

    const LogField evolved =
        semigroup::evolve(g, semigroup::SemigroupQuery::make(t, semigroup::EvolveMethod::mellin_multiplier));
    for (std::size_t k = 0; k < manual.values.size(); k += 37) {
        CHECK(manual.values[k].real() == evolved.values[k].real());
        CHECK(manual.values[k].imag() == evolved.values[k].imag());
    }
}

TEST_CASE("dilation diagonalization") {
    const ScalarField f = log_gaussian_field(3, 1.0, 0.0);

    SUBCASE("t = 0 gives zero deviation") { CHECK(mellin::check_dilation_shift(f, 0.0) <= 1e-14); }

    SUBCASE("interpolation-limited deviation at t = 0.3") {
        CHECK(mellin::check_dilation_shift(f, 0.3) <= 1e-6);
    }

    SUBCASE("deviation shrinks under refinement at order >= 3") {
        double errs[3];
        const int counts[3] = {512, 1024, 2048};
        for (int c = 0; c < 3; ++c) {
            const ScalarField fc = log_gaussian_field(3, 1.0, 0.0, LogRadialGrid::make(-12.0, 12.0, counts[c]));
            errs[c] = mellin::check_dilation_shift(fc, 0.3);
        }
        CHECK(std::log2(errs[0] / errs[1]) >= 3.0);
        CHECK(std::log2(errs[1] / errs[2]) >= 3.0);
    }
}

TEST_CASE("generator diagonalization") {
    SUBCASE("constant log field annihilated") {
        const LogRadialGrid grid = default_grid();
        ScalarField f = make_scalar_field(grid, make_radial_marker(3));
        for (int i = 0; i < grid.count; ++i) f.at(i, 0) = std::exp(-1.5 * grid.s(i));  // Phi f = 1
        CHECK(mellin::check_generator(f, DerivScheme::fd4) <= 1e-9);
        CHECK(mellin::check_generator(f, DerivScheme::spectral) <= 1e-9);
    }
    SUBCASE("Gaussian within 1e-7 on the resolved band") {
        const ScalarField f = log_gaussian_field(3, 1.0, 0.0);
        CHECK(mellin::check_generator(f, DerivScheme::fd4) <= 1e-7);
    }
    SUBCASE("relative deviation is confined to unresolved frequencies") {
        // narrow data puts real content near the band edge
        const ScalarField f = log_gaussian_field(3, 0.04, 0.0);
        const mellin::MellinData base = mellin::mellin_forward(f);
        const mellin::MellinData applied = mellin::mellin_forward(apply_A(f, DerivScheme::fd4));
        const double band = mellin::resolved_band(f.grid);
        double rel_in = 0.0, rel_out = 0.0;
        for (int k = 0; k < static_cast<int>(base.frequencies.size()); ++k) {
            const double tau = base.frequencies[static_cast<std::size_t>(k)];
            const double mag = std::abs(tau * base.at(k, 0));
            if (mag < 1e-8) continue;
            const double rel = std::abs(applied.at(k, 0) - tau * base.at(k, 0)) / mag;
            if (std::abs(tau) <= 0.5 * band) rel_in = std::max(rel_in, rel);
            if (std::abs(tau) > band) rel_out = std::max(rel_out, rel);
        }
        CHECK(rel_in <= 0.02);
        CHECK(rel_out >= 5.0 * rel_in);
    }
}

TEST_CASE("semigroup diagonalization on the resolved band") {
    Rng rng(33);
    const ScalarField f = extremal::random_mixture_field(3, {{0.0, 2.0}}, rng, false);
    const mellin::MellinData base = mellin::mellin_forward(f);
    const double band = mellin::resolved_band(f.grid);
    for (double t : {0.1, 1.0}) {
        const LogField pg =
            semigroup::evolve(phi_forward(f), semigroup::SemigroupQuery::make(t, semigroup::EvolveMethod::fast_convolution));
        const mellin::MellinData lhs = mellin::forward_log(pg);
        double dev = 0.0;
        for (int k = 0; k < static_cast<int>(base.frequencies.size()); ++k) {
            const double tau = base.frequencies[static_cast<std::size_t>(k)];
            if (std::abs(tau) > band) continue;
            dev = std::max(dev, std::abs(lhs.at(k, 0) - std::exp(-t * tau * tau) * base.at(k, 0)));
        }
        CHECK(dev <= 1e-8);
    }
}

TEST_CASE("A applied twice agrees with the tau^2 multiplier on the resolved band") {
    const ScalarField f = log_gaussian_field(3, 1.0, 0.2);
    const ScalarField aaf = apply_A(apply_A(f, DerivScheme::fd4), DerivScheme::fd4);
    const mellin::MellinData lhs = mellin::mellin_forward(aaf);
    const mellin::MellinData base = mellin::mellin_forward(f);
    const double band = mellin::resolved_band(f.grid);
    double dev = 0.0;
    for (int k = 0; k < static_cast<int>(base.frequencies.size()); ++k) {
        const double tau = base.frequencies[static_cast<std::size_t>(k)];
        if (std::abs(tau) > band) continue;
        dev = std::max(dev, std::abs(lhs.at(k, 0) - tau * tau * base.at(k, 0)));
    }
    CHECK(dev <= 1e-6);
}

TEST_CASE("zero field has a zero spectrum; spectrum CSV header") {
    const LogRadialGrid grid = LogRadialGrid::make(-6.0, 6.0, 128);
    ScalarField f = make_scalar_field(grid, make_radial_marker(3));
    const mellin::MellinData d = mellin::mellin_forward(f);
    for (const auto& v : d.values) CHECK(std::abs(v) == 0.0);
    CHECK(mellin::spectrum_to_csv(d).rfind("tau,omega_index,re,im\n", 0) == 0);
}

TEST_CASE("grid mismatch is rejected on inversion") {
    const ScalarField f = log_gaussian_field(3, 1.0, 0.0, LogRadialGrid::make(-6.0, 6.0, 128));
    mellin::MellinData d = mellin::mellin_forward(f);
    d.frequencies.pop_back();
    CHECK_THROWS_AS(mellin::inverse_log(d), std::invalid_argument);
}
