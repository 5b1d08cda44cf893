#include "hslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hslab::norms {

double radial_weighted_integral(const ScalarField& f, double p, double beta) {
    if (p < 1.0) throw std::invalid_argument("norms: exponent must be >= 1");
    const int nodes = f.node_count();
    double acc = 0.0;
    for (int i = 0; i < f.grid.count; ++i) {
        const double ws = (beta + 1.0) * f.grid.s(i);
        for (int j = 0; j < nodes; ++j) {
            const double a = std::abs(f.at(i, j));
            if (a <= 0.0) continue;
            // |f|^p e^{w s} assembled in the exponent: |f| alone may overflow
            // a double on wide tilted grids even when the integrand is benign
            acc += f.sphere.weights[static_cast<std::size_t>(j)] * std::exp(p * std::log(a) + ws);
        }
    }
    return acc * f.grid.spacing;
}

double rn_lp_integral(const ScalarField& f, double p, double radial_power) {
    return radial_weighted_integral(f, p, radial_power + static_cast<double>(f.dimension()) - 1.0);
}

double rn_lp_norm(const ScalarField& f, double p) { return std::pow(rn_lp_integral(f, p), 1.0 / p); }

double lq_norm_line(const RadialProfile& g, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_norm_line: q must be >= 1");
    double acc = 0.0;
    for (const cd& v : g.values) acc += std::pow(std::abs(v), q);
    return std::pow(acc * g.grid.spacing, 1.0 / q);
}

double lp_norm_cylinder(const LogField& g, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm_cylinder: p must be >= 1");
    const int nodes = g.node_count();
    double acc = 0.0;
    for (int i = 0; i < g.grid.count; ++i)
        for (int j = 0; j < nodes; ++j)
            acc += g.sphere.weights[static_cast<std::size_t>(j)] * std::pow(std::abs(g.at(i, j)), p);
    return std::pow(acc * g.grid.spacing, 1.0 / p);
}

double linf_norm(const RadialProfile& g) {
    double m = 0.0;
    for (const cd& v : g.values) m = std::max(m, std::abs(v));
    return m;
}

double weak_lq_norm(const RadialProfile& g, double q) {
    if (!(q > 1.0)) throw std::invalid_argument("weak_lq_norm: q must be > 1");
    std::vector<double> mag(g.values.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(g.values[i]);
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    // u^q lambda(|G| >= u) is maximized at a sample value: lambda(|G| >= mag[k]) = (k+1) h
    double best = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        if (mag[k] <= 0.0) break;
        const double lam = static_cast<double>(k + 1) * g.grid.spacing;
        best = std::max(best, std::pow(mag[k], q) * lam);
    }
    return std::pow(best, 1.0 / q);
}

double l2star_radial(const RadialProfile& f_of_r, int n, Premultiplier pre) {
    if (n < 3) throw std::invalid_argument("l2star_radial: needs n >= 3");
    const double two_star = 2.0 * static_cast<double>(n) / (static_cast<double>(n) - 2.0);
    double acc = 0.0;
    for (int i = 0; i < f_of_r.grid.count; ++i) {
        const double s = f_of_r.grid.s(i);
        double v = std::abs(f_of_r.values[static_cast<std::size_t>(i)]);
        if (pre == Premultiplier::r) v *= std::exp(s);
        // r^{n-1} dr = e^{n s} ds
        acc += std::pow(v, two_star) * std::exp(static_cast<double>(n) * s);
    }
    return std::pow(acc * f_of_r.grid.spacing, 1.0 / two_star);
}

std::vector<double> default_besov_grid() {
    std::vector<double> t(200);
    const double lo = std::log(1e-4), hi = std::log(1e4);
    for (int i = 0; i < 200; ++i)
        t[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * static_cast<double>(i) / 199.0);
    return t;
}

BesovResult besov_norm(const LogField& g, double alpha, const std::vector<double>& t_grid,
                       bool caller_asserts_radial) {
    require_finite(g, "besov_norm");
    if (t_grid.size() < 2) throw std::invalid_argument("besov_norm: t-grid needs at least two points");
    RadialProfile mean = spherical_mean(g, caller_asserts_radial);
    for (cd& v : mean.values) v = std::abs(v);  // P_t acts on |G|

    // the scan shares one data transform across the whole t-grid and is
    // wrap-free at arbitrarily large t
    const semigroup::ProfileHeatScan scan(mean);

    BesovResult res;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double t = t_grid[k];
        const RadialProfile ev = scan.apply(t);
        const double val = std::pow(t, -0.5 * alpha) * linf_norm(ev);
        if (val > res.value) {
            res.value = val;
            res.sup_t = t;
            arg = k;
        }
    }
    res.endpoint_attained = res.value > 0.0 && (arg == 0 || arg + 1 == t_grid.size());
    return res;
}

double besov_norm_auto(const LogField& g, double alpha, bool caller_asserts_radial, BesovResult* detail) {
    double lo = 1e-4, hi = 1e4;
    for (int attempt = 0; attempt <= 2; ++attempt) {
        std::vector<double> grid(200);
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < 200; ++i)
            grid[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / 199.0);
        BesovResult res = besov_norm(g, alpha, grid, caller_asserts_radial);
        res.widenings = attempt;
        if (!res.endpoint_attained) {
            if (detail) *detail = res;
            return res.value;
        }
        if (res.sup_t <= grid[1]) lo /= 10.0;
        else hi *= 10.0;
    }
    throw std::runtime_error("besov_norm: sup attained at the t-grid endpoint after two widenings");
}

}  // namespace hslab::norms
