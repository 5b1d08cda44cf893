#include "hslab/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hslab/fft.hpp"

namespace hslab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cd> d_ds_fd4(const std::vector<cd>& v, double h) {
    const int n = static_cast<int>(v.size());
    if (n < 5) throw std::invalid_argument("d_ds: grid too coarse for the 4th-order stencil");
    std::vector<cd> out(v.size());
    const double c1 = 8.0 / (12.0 * h), c2 = 1.0 / (12.0 * h);
    for (int i = 2; i < n - 2; ++i)
        out[static_cast<std::size_t>(i)] = c1 * (v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i - 1)]) -
                                           c2 * (v[static_cast<std::size_t>(i + 2)] - v[static_cast<std::size_t>(i - 2)]);
    // one-sided 4th-order rows at the ends keep the error proportional to the
    // local sample scale (a zero extension would manufacture O(|v|/h) junk)
    auto fwd0 = [&](int a, int sgn) {
        return (static_cast<double>(sgn) / (12.0 * h)) *
               (-25.0 * v[static_cast<std::size_t>(a)] + 48.0 * v[static_cast<std::size_t>(a + sgn)] -
                36.0 * v[static_cast<std::size_t>(a + 2 * sgn)] + 16.0 * v[static_cast<std::size_t>(a + 3 * sgn)] -
                3.0 * v[static_cast<std::size_t>(a + 4 * sgn)]);
    };
    auto fwd1 = [&](int a, int sgn) {
        return (static_cast<double>(sgn) / (12.0 * h)) *
               (-3.0 * v[static_cast<std::size_t>(a - sgn)] - 10.0 * v[static_cast<std::size_t>(a)] +
                18.0 * v[static_cast<std::size_t>(a + sgn)] - 6.0 * v[static_cast<std::size_t>(a + 2 * sgn)] +
                v[static_cast<std::size_t>(a + 3 * sgn)]);
    };
    out[0] = fwd0(0, 1);
    out[1] = fwd1(1, 1);
    out[static_cast<std::size_t>(n - 1)] = fwd0(n - 1, -1);
    out[static_cast<std::size_t>(n - 2)] = fwd1(n - 2, -1);
    return out;
}

std::vector<cd> d_ds_spectral(const std::vector<cd>& v, double h) {
    const int n = static_cast<int>(v.size());
    if (n < 4) throw std::invalid_argument("d_ds: grid too coarse");
    std::vector<cd> hat = fft::dft(v, false);
    const double dtau = 2.0 * kPi / (static_cast<double>(n) * h);
    for (int k = 0; k < n; ++k) {
        int kk = (k <= n / 2) ? k : k - n;
        if (2 * k == n) kk = 0;  // unpaired Nyquist mode carries no odd derivative
        hat[static_cast<std::size_t>(k)] *= cd{0.0, dtau * static_cast<double>(kk)};
    }
    return fft::dft(hat, true);
}

template <class F>
F slicewise_d_ds(const F& g, DerivScheme scheme) {
    F out = g;
    const int nodes = g.node_count();
    std::vector<cd> slice(static_cast<std::size_t>(g.grid.count));
    for (int j = 0; j < nodes; ++j) {
        for (int i = 0; i < g.grid.count; ++i) slice[static_cast<std::size_t>(i)] = g.at(i, j);
        const std::vector<cd> d = d_ds_line(slice, g.grid.spacing, scheme);
        for (int i = 0; i < g.grid.count; ++i) out.at(i, j) = d[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace

std::vector<cd> d_ds_line(const std::vector<cd>& v, double h, DerivScheme scheme) {
    return scheme == DerivScheme::fd4 ? d_ds_fd4(v, h) : d_ds_spectral(v, h);
}

RadialProfile d_ds(const RadialProfile& p, DerivScheme scheme) {
    RadialProfile out = p;
    out.values = d_ds_line(p.values, p.grid.spacing, scheme);
    return out;
}

LogField d_ds(const LogField& g, DerivScheme scheme) { return slicewise_d_ds(g, scheme); }

LogField apply_A(const LogField& g, DerivScheme scheme) {
    LogField out = d_ds(g, scheme);
    for (cd& v : out.values) v *= cd{0.0, -1.0};
    return out;
}

ScalarField apply_A(const ScalarField& f, DerivScheme scheme) {
    return phi_inverse(apply_A(phi_forward(f), scheme));
}

ScalarField apply_L(const ScalarField& f, DerivScheme scheme) {
    LogField g = phi_forward(f);
    LogField dg = d_ds(g, scheme);
    const double half_n = 0.5 * static_cast<double>(f.dimension());
    for (std::size_t k = 0; k < dg.values.size(); ++k) dg.values[k] -= half_n * g.values[k];
    return phi_inverse(dg);
}

namespace {

// 4-point Lagrange weights for position base + theta, theta in [0,1)
void cubic_weights(double theta, double w[4]) {
    w[0] = -theta * (theta - 1.0) * (theta - 2.0) / 6.0;
    w[1] = (theta * theta - 1.0) * (theta - 2.0) / 2.0;
    w[2] = -theta * (theta + 1.0) * (theta - 2.0) / 2.0;
    w[3] = theta * (theta * theta - 1.0) / 6.0;
}

std::vector<cd> shift_line(const std::vector<cd>& v, double shift_in_samples, double* err_estimate) {
    const int n = static_cast<int>(v.size());
    std::vector<cd> out(v.size(), cd{0.0, 0.0});
    auto sample = [&](int i) -> cd { return (i < 0 || i >= n) ? cd{0.0, 0.0} : v[static_cast<std::size_t>(i)]; };
    const double rounded = std::round(shift_in_samples);
    if (std::abs(shift_in_samples - rounded) < 1e-12 * std::max(1.0, std::abs(shift_in_samples))) {
        const int k = static_cast<int>(rounded);
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sample(i + k);
        if (err_estimate) *err_estimate = 0.0;
        return out;
    }
    const double base_f = std::floor(shift_in_samples);
    const int base = static_cast<int>(base_f);
    double w[4];
    cubic_weights(shift_in_samples - base_f, w);
    for (int i = 0; i < n; ++i) {
        cd acc{0.0, 0.0};
        for (int m = 0; m < 4; ++m) acc += w[m] * sample(i + base + m - 1);
        out[static_cast<std::size_t>(i)] = acc;
    }
    if (err_estimate) {
        // cubic interpolation error ~ |g''''| h^4 / 24 <= max |delta^4 g| / 24
        double d4 = 0.0;
        for (int i = 2; i < n - 2; ++i) {
            const cd diff = sample(i - 2) - 4.0 * sample(i - 1) + 6.0 * sample(i) - 4.0 * sample(i + 1) + sample(i + 2);
            d4 = std::max(d4, std::abs(diff));
        }
        *err_estimate = d4 / 24.0;
    }
    return out;
}

}  // namespace

RadialProfile shift_profile(const RadialProfile& p, double t) {
    RadialProfile out = p;
    out.values = shift_line(p.values, t / p.grid.spacing, nullptr);
    return out;
}

DilateResult dilate_with_report(const ScalarField& f, double t) {
    if (std::abs(t) > f.grid.s_max - f.grid.s_min)
        throw std::invalid_argument("dilate: shift exceeds the grid span");
    if (t == 0.0) return {f, 0.0};
    // Phi(U(t) f)(s) = (Phi f)(s + t)
    LogField g = phi_forward(f);
    const int nodes = g.node_count();
    std::vector<cd> slice(static_cast<std::size_t>(g.grid.count));
    double worst = 0.0;
    for (int j = 0; j < nodes; ++j) {
        for (int i = 0; i < g.grid.count; ++i) slice[static_cast<std::size_t>(i)] = g.at(i, j);
        double est = 0.0;
        const std::vector<cd> shifted = shift_line(slice, t / g.grid.spacing, &est);
        worst = std::max(worst, est);
        for (int i = 0; i < g.grid.count; ++i) g.at(i, j) = shifted[static_cast<std::size_t>(i)];
    }
    return {phi_inverse(g), worst};
}

ScalarField dilate(const ScalarField& f, double t) { return dilate_with_report(f, t).field; }

namespace {

// barycentric differentiation matrix on arbitrary distinct nodes
std::vector<double> diff_matrix(const std::vector<double>& x) {
    const int m = static_cast<int>(x.size());
    std::vector<double> lam(static_cast<std::size_t>(m), 1.0);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
            if (l != k) lam[static_cast<std::size_t>(k)] /= (x[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(l)]);
    std::vector<double> d(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    for (int k = 0; k < m; ++k) {
        double diag = 0.0;
        for (int l = 0; l < m; ++l) {
            if (l == k) continue;
            const double v = (lam[static_cast<std::size_t>(l)] / lam[static_cast<std::size_t>(k)]) /
                             (x[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(l)]);
            d[static_cast<std::size_t>(k * m + l)] = v;
            diag -= v;
        }
        d[static_cast<std::size_t>(k * m + k)] = diag;
    }
    return d;
}

// spectral derivative of a periodic ring sampled at uniform angles
std::vector<cd> ring_derivative(const std::vector<cd>& v) {
    const int m = static_cast<int>(v.size());
    std::vector<cd> hat = fft::dft(v, false);
    for (int k = 0; k < m; ++k) {
        int kk = (k <= m / 2) ? k : k - m;
        if (2 * k == m) kk = 0;
        hat[static_cast<std::size_t>(k)] *= cd{0.0, static_cast<double>(kk)};
    }
    return fft::dft(hat, true);
}

}  // namespace

namespace {

// Roll the outermost samples smoothly to zero.  The inverse-power weights in
// the gradient integrals magnify boundary noise by e^{-2 s_min}, and the DFT
// derivative turns even a 1e-8 periodization jump into noise everywhere, so
// tail-compliant data is pinned to zero at the edges before the transform.
// Interior samples are untouched.
void roll_edges(LogField& g) {
    const int n = g.grid.count;
    const int w = std::max(4, n / 40);
    const int nodes = g.node_count();
    for (int i = 0; i < w; ++i) {
        const double x = (static_cast<double>(i) + 1.0) / (static_cast<double>(w) + 1.0);
        const double win = x * x * (3.0 - 2.0 * x);
        for (int j = 0; j < nodes; ++j) {
            g.at(i, j) *= win;
            g.at(n - 1 - i, j) *= win;
        }
    }
}

}  // namespace

std::vector<cd> radial_derivative(const ScalarField& f, DerivScheme scheme) {
    LogField g = phi_forward(f);
    LogField dg;
    if (scheme == DerivScheme::spectral) {
        LogField rolled = g;
        roll_edges(rolled);
        dg = d_ds(rolled, scheme);
    } else {
        dg = d_ds(g, scheme);
    }
    const double half_n = 0.5 * static_cast<double>(f.dimension());
    std::vector<cd> out(f.values.size());
    const int nodes = f.node_count();
    for (int i = 0; i < f.grid.count; ++i) {
        // df/dr = e^{-s} d/ds f(e^s omega) = e^{-s(1+n/2)} (g' - (n/2) g)
        const double scale = std::exp(-(1.0 + half_n) * f.grid.s(i));
        for (int j = 0; j < nodes; ++j)
            out[static_cast<std::size_t>(i * nodes + j)] = scale * (dg.at(i, j) - half_n * g.at(i, j));
    }
    return out;
}

std::vector<double> gradient_sq(const ScalarField& f, DerivScheme scheme) {
    const int n = f.dimension();
    const int nodes = f.node_count();
    const std::vector<cd> dr = radial_derivative(f, scheme);
    std::vector<double> out(f.values.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(dr[k]);

    if (n == 1 || f.sphere.radial_only) return out;

    if (n == 2) {
        std::vector<cd> ring(static_cast<std::size_t>(nodes));
        for (int i = 0; i < f.grid.count; ++i) {
            const double inv_r2 = std::exp(-2.0 * f.grid.s(i));
            for (int j = 0; j < nodes; ++j) ring[static_cast<std::size_t>(j)] = f.at(i, j);
            const std::vector<cd> dphi = ring_derivative(ring);
            for (int j = 0; j < nodes; ++j)
                out[static_cast<std::size_t>(i * nodes + j)] += inv_r2 * std::norm(dphi[static_cast<std::size_t>(j)]);
        }
        return out;
    }
    if (n == 3) {
        const int lp = f.sphere.polar_count, la = f.sphere.azimuth_count;
        if (lp == 0 || la == 0) throw std::invalid_argument("gradient_sq: quadrature lacks product structure");
        const std::vector<double> du = diff_matrix(f.sphere.polar_cos);
        std::vector<cd> ring(static_cast<std::size_t>(la));
        std::vector<cd> column(static_cast<std::size_t>(lp));
        for (int i = 0; i < f.grid.count; ++i) {
            const double inv_r2 = std::exp(-2.0 * f.grid.s(i));
            // azimuthal part: |d f/d phi|^2 / sin^2 theta
            for (int k = 0; k < lp; ++k) {
                const double c = f.sphere.polar_cos[static_cast<std::size_t>(k)];
                const double sin2 = std::max(1e-300, 1.0 - c * c);
                for (int m = 0; m < la; ++m) ring[static_cast<std::size_t>(m)] = f.at(i, k * la + m);
                const std::vector<cd> dphi = ring_derivative(ring);
                for (int m = 0; m < la; ++m)
                    out[static_cast<std::size_t>(i * nodes + k * la + m)] +=
                        inv_r2 * std::norm(dphi[static_cast<std::size_t>(m)]) / sin2;
            }
            // polar part: |d f/d theta|^2 = sin^2 theta |d f/du|^2
            for (int m = 0; m < la; ++m) {
                for (int k = 0; k < lp; ++k) column[static_cast<std::size_t>(k)] = f.at(i, k * la + m);
                for (int k = 0; k < lp; ++k) {
                    cd acc{0.0, 0.0};
                    for (int l = 0; l < lp; ++l)
                        acc += du[static_cast<std::size_t>(k * lp + l)] * column[static_cast<std::size_t>(l)];
                    const double c = f.sphere.polar_cos[static_cast<std::size_t>(k)];
                    out[static_cast<std::size_t>(i * nodes + k * la + m)] += inv_r2 * (1.0 - c * c) * std::norm(acc);
                }
            }
        }
        return out;
    }
    throw std::invalid_argument("gradient_sq: angular derivatives only available for n in {2,3}");
}

}  // namespace hslab
