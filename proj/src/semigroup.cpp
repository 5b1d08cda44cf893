#include "hslab/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hslab/fft.hpp"
#include "hslab/mellin.hpp"

namespace hslab::semigroup {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTMin = 1e-4, kTMax = 1e4;
}  // namespace

EvolveMethod method_from_string(const std::string& name) {
    if (name == "direct") return EvolveMethod::direct;
    if (name == "fast-convolution") return EvolveMethod::fast_convolution;
    if (name == "mellin-multiplier") return EvolveMethod::mellin_multiplier;
    throw std::invalid_argument("unknown evolve method: " + name);
}

std::string method_name(EvolveMethod m) {
    switch (m) {
        case EvolveMethod::direct: return "direct";
        case EvolveMethod::fast_convolution: return "fast-convolution";
        case EvolveMethod::mellin_multiplier: return "mellin-multiplier";
    }
    return "?";
}

SemigroupQuery SemigroupQuery::make(double t, EvolveMethod m, double pad) {
    if (!(t > 0.0)) throw std::invalid_argument("SemigroupQuery: t must be positive");
    if (t < kTMin || t > kTMax)
        throw std::invalid_argument("SemigroupQuery: t outside the supported range [1e-4, 1e4]");
    if (pad >= 0.0 && pad < 8.0 * std::sqrt(t))
        throw std::invalid_argument("SemigroupQuery: pad_width below 8 sqrt(t)");
    SemigroupQuery q;
    q.time = t;
    q.method = m;
    q.pad_width = pad;
    return q;
}

double heat_kernel(double r, double s, double t) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be positive");
    const double d = r - s;
    return std::exp(-d * d / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double lattice_kernel_mass(double t, double h) {
    // h sum_m k(m h) = sum_j exp(-t (2 pi j / h)^2)
    const double w = 2.0 * kPi / h;
    double m = 1.0;
    for (int j = 1; j < 64; ++j) {
        const double term = 2.0 * std::exp(-t * w * w * static_cast<double>(j) * static_cast<double>(j));
        if (term < 1e-30) break;
        m += term;
    }
    return m;
}

namespace {

double resolve_pad(const SemigroupQuery& q, double h) {
    if (q.pad_width >= 0.0) {
        if (q.pad_width < 8.0 * std::sqrt(q.time))
            throw std::invalid_argument("evolve: pad_width below 8 sqrt(t)");
        return q.pad_width;
    }
    return std::max(8.0 * std::sqrt(q.time), 10.0 * h);
}

double renormalized_mass(double t, double h) {
    const double m = lattice_kernel_mass(t, h);
    return std::abs(m - 1.0) <= 1e-13 ? 1.0 : m;
}

void check_leakage(const std::vector<cd>& v, const LogRadialGrid& grid, double t, double pad, double tol) {
    // |G| mass the kernel would push beyond the padded window
    const double lo = grid.s_min - pad, hi = grid.s_max + pad;
    const double denom = 2.0 * std::sqrt(t);
    double escape = 0.0, total = 0.0;
    for (int i = 0; i < grid.count; ++i) {
        const double a = std::abs(v[static_cast<std::size_t>(i)]);
        const double s = grid.s(i);
        escape += a * 0.5 * (std::erfc((s - lo) / denom) + std::erfc((hi - s) / denom));
        total += a;
    }
    if (escape > tol * std::max(total, 1e-300))
        throw std::runtime_error("evolve: tail leakage " + std::to_string(escape * grid.spacing) +
                                 " above tolerance; increase pad_width");
}

std::vector<cd> evolve_direct(const std::vector<cd>& v, const LogRadialGrid& grid, double t) {
    const int n = grid.count;
    const double h = grid.spacing;
    // offsets beyond the grid span only ever meet zero-extended data
    const int reach = std::min(n - 1, static_cast<int>(std::ceil(10.0 * std::sqrt(t) / h)) + 2);
    std::vector<double> kern(static_cast<std::size_t>(reach + 1));
    for (int j = 0; j <= reach; ++j) kern[static_cast<std::size_t>(j)] = heat_kernel(0.0, static_cast<double>(j) * h, t);
    const double mass = renormalized_mass(t, h);
    std::vector<cd> out(static_cast<std::size_t>(n), cd{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        cd acc = kern[0] * v[static_cast<std::size_t>(i)];
        for (int j = 1; j <= reach; ++j) {
            const cd left = (i - j >= 0) ? v[static_cast<std::size_t>(i - j)] : cd{0.0, 0.0};
            const cd right = (i + j < n) ? v[static_cast<std::size_t>(i + j)] : cd{0.0, 0.0};
            acc += kern[static_cast<std::size_t>(j)] * (left + right);
        }
        out[static_cast<std::size_t>(i)] = acc * (h / mass);
    }
    return out;
}

// Kernel sampled at the in-grid offsets [-(n-1) h, (n-1) h], zero-padded to
// >= 3n, so the circular product is an exact linear convolution for every t.
std::vector<cd> evolve_fast(const std::vector<cd>& v, const LogRadialGrid& grid, double t) {
    const int n = grid.count;
    const double h = grid.spacing;
    const std::size_t m = fft::next_pow2(static_cast<std::size_t>(3 * n));
    std::vector<cd> a(m, cd{0.0, 0.0}), k(m, cd{0.0, 0.0});
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    k[0] = heat_kernel(0.0, 0.0, t);
    for (int j = 1; j < n; ++j) {
        const double val = heat_kernel(0.0, static_cast<double>(j) * h, t);
        k[static_cast<std::size_t>(j)] = val;
        k[m - static_cast<std::size_t>(j)] = val;
    }
    const double mass = renormalized_mass(t, h);
    fft::fft_pow2(a, false);
    fft::fft_pow2(k, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= k[j];
    fft::fft_pow2(a, true);
    std::vector<cd> out(static_cast<std::size_t>(n));
    const double scale = h / mass;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * scale;
    return out;
}

}  // namespace

LogField evolve(const LogField& g, const SemigroupQuery& q) {
    if (!(q.time > 0.0) || q.time < kTMin || q.time > kTMax)
        throw std::invalid_argument("evolve: t outside the supported range [1e-4, 1e4]");
    const double pad = resolve_pad(q, g.grid.spacing);

    if (q.method == EvolveMethod::mellin_multiplier) {
        {
            std::vector<cd> slice(static_cast<std::size_t>(g.grid.count));
            for (int j = 0; j < g.node_count(); ++j) {
                for (int i = 0; i < g.grid.count; ++i) slice[static_cast<std::size_t>(i)] = g.at(i, j);
                check_leakage(slice, g.grid, q.time, pad, q.leakage_tolerance);
            }
        }
        // reuses the transform pipeline verbatim
        mellin::MellinData d = mellin::forward_log(g);
        std::vector<double> mult(d.frequencies.size());
        for (std::size_t k = 0; k < mult.size(); ++k)
            mult[k] = std::exp(-q.time * d.frequencies[k] * d.frequencies[k]);
        mellin::apply_multiplier(d, mult);
        return mellin::inverse_log(d);
    }

    LogField out = g;
    const int nodes = g.node_count();
    std::vector<cd> slice(static_cast<std::size_t>(g.grid.count));
    for (int j = 0; j < nodes; ++j) {
        for (int i = 0; i < g.grid.count; ++i) slice[static_cast<std::size_t>(i)] = g.at(i, j);
        check_leakage(slice, g.grid, q.time, pad, q.leakage_tolerance);
        const std::vector<cd> ev = (q.method == EvolveMethod::direct)
                                       ? evolve_direct(slice, g.grid, q.time)
                                       : evolve_fast(slice, g.grid, q.time);
        for (int i = 0; i < g.grid.count; ++i) out.at(i, j) = ev[static_cast<std::size_t>(i)];
    }
    return out;
}

ProfileHeatScan::ProfileHeatScan(const RadialProfile& g) : grid_(g.grid) {
    padded_ = fft::next_pow2(static_cast<std::size_t>(3 * g.grid.count));
    data_hat_.assign(padded_, cd{0.0, 0.0});
    for (int i = 0; i < g.grid.count; ++i) data_hat_[static_cast<std::size_t>(i)] = g.values[static_cast<std::size_t>(i)];
    fft::fft_pow2(data_hat_, false);
}

RadialProfile ProfileHeatScan::apply(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("ProfileHeatScan: t must be positive");
    const int n = grid_.count;
    const double h = grid_.spacing;
    std::vector<cd> k(padded_, cd{0.0, 0.0});
    k[0] = heat_kernel(0.0, 0.0, t);
    for (int j = 1; j < n; ++j) {
        const double val = heat_kernel(0.0, static_cast<double>(j) * h, t);
        k[static_cast<std::size_t>(j)] = val;
        k[padded_ - static_cast<std::size_t>(j)] = val;
    }
    fft::fft_pow2(k, false);
    for (std::size_t j = 0; j < padded_; ++j) k[j] *= data_hat_[j];
    fft::fft_pow2(k, true);
    RadialProfile out;
    out.grid = grid_;
    out.values.resize(static_cast<std::size_t>(n));
    const double scale = h / renormalized_mass(t, h);
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)] * scale;
    return out;
}

RadialProfile heat_convolve(const RadialProfile& g, double t) { return ProfileHeatScan(g).apply(t); }

RadialProfile evolve(const RadialProfile& g, const SemigroupQuery& q) {
    LogField wrapped = make_log_field(g.grid, make_radial_marker(1));
    for (int i = 0; i < g.grid.count; ++i) wrapped.at(i, 0) = g.values[static_cast<std::size_t>(i)];
    const LogField ev = evolve(wrapped, q);
    RadialProfile out = g;
    for (int i = 0; i < g.grid.count; ++i) out.values[static_cast<std::size_t>(i)] = ev.at(i, 0);
    return out;
}

ScalarField evolve_LstarL(const ScalarField& f, double t, EvolveMethod method) {
    const SemigroupQuery q = SemigroupQuery::make(t, method);
    const double n = static_cast<double>(f.dimension());
    const double prefactor = std::exp(-t * n * n / 4.0);
    ScalarField out = phi_inverse(evolve(phi_forward(f), q));
    for (cd& v : out.values) v *= prefactor;
    return out;
}

}  // namespace hslab::semigroup
