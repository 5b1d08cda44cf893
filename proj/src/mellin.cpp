#include "hslab/mellin.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "hslab/fft.hpp"

namespace hslab::mellin {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2Pi = 2.5066282746310002;

// e^{2 pi i cycles}; reducing to the nearest whole turn first keeps the
// phase accurate when tau * s_min runs to thousands of radians
cd unit_phase(double cycles) {
    const double frac = cycles - std::nearbyint(cycles);
    return std::polar(1.0, 2.0 * kPi * frac);
}
}  // namespace

double MellinData::delta_tau() const {
    return 2.0 * kPi / (static_cast<double>(grid.count) * grid.spacing);
}

double resolved_band(const LogRadialGrid& grid) { return 0.5 * kPi / grid.spacing; }

MellinData forward_log(const LogField& g) {
    require_finite(g, "mellin_forward");
    const int n = g.grid.count;
    const int nodes = g.node_count();
    MellinData d;
    d.grid = g.grid;
    d.sphere = g.sphere;
    d.frequencies.resize(static_cast<std::size_t>(n));
    d.values.resize(g.values.size());
    const double dtau = 2.0 * kPi / (static_cast<double>(n) * g.grid.spacing);
    const int kmin = -(n / 2);
    for (int k = 0; k < n; ++k)
        d.frequencies[static_cast<std::size_t>(k)] = dtau * static_cast<double>(kmin + k);

    const double amp = g.grid.spacing / kSqrt2Pi;
    // tau_k s_min = 2 pi kk c with c = s_min / (n h)
    const double c = g.grid.s_min / (static_cast<double>(n) * g.grid.spacing);
    std::vector<cd> slice(static_cast<std::size_t>(n));
    for (int j = 0; j < nodes; ++j) {
        for (int i = 0; i < n; ++i) slice[static_cast<std::size_t>(i)] = g.at(i, j);
        const std::vector<cd> hat = fft::dft(slice, false);
        for (int k = 0; k < n; ++k) {
            const int kk = kmin + k;           // signed frequency index
            const int bin = (kk % n + n) % n;  // DFT bin
            // rectangle-sum phase anchored at s_min
            const cd phase = unit_phase(-static_cast<double>(kk) * c);
            d.at(k, j) = amp * phase * hat[static_cast<std::size_t>(bin)];
        }
    }
    return d;
}

LogField inverse_log(const MellinData& d) {
    const int n = d.grid.count;
    const int nodes = d.node_count();
    if (static_cast<int>(d.frequencies.size()) != n || d.values.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(nodes))
        throw std::invalid_argument("mellin_inverse: grid mismatch");
    LogField g = make_log_field(d.grid, d.sphere);
    const int kmin = -(n / 2);
    // the inverse DFT supplies its own 1/n
    const double amp = kSqrt2Pi / d.grid.spacing;
    const double c = d.grid.s_min / (static_cast<double>(n) * d.grid.spacing);
    std::vector<cd> bins(static_cast<std::size_t>(n));
    for (int j = 0; j < nodes; ++j) {
        for (int k = 0; k < n; ++k) {
            const int kk = kmin + k;
            const int bin = (kk % n + n) % n;
            const cd phase = unit_phase(static_cast<double>(kk) * c);
            bins[static_cast<std::size_t>(bin)] = amp * phase * d.at(k, j);
        }
        const std::vector<cd> slice = fft::dft(bins, true);
        for (int i = 0; i < n; ++i) g.at(i, j) = slice[static_cast<std::size_t>(i)];
    }
    return g;
}

MellinData mellin_forward(const ScalarField& f) { return forward_log(phi_forward(f)); }

ScalarField mellin_inverse(const MellinData& d) { return phi_inverse(inverse_log(d)); }

void apply_multiplier(MellinData& d, const std::vector<double>& multiplier) {
    if (multiplier.size() != d.frequencies.size())
        throw std::invalid_argument("apply_multiplier: multiplier length mismatch");
    const int nodes = d.node_count();
    for (int k = 0; k < static_cast<int>(d.frequencies.size()); ++k)
        for (int j = 0; j < nodes; ++j) d.at(k, j) *= multiplier[static_cast<std::size_t>(k)];
}

double check_dilation_shift(const ScalarField& f, double t) {
    const MellinData base = mellin_forward(f);
    const MellinData shifted = mellin_forward(dilate(f, t));
    const double band = resolved_band(f.grid);
    const int nodes = base.node_count();
    double dev = 0.0;
    for (int k = 0; k < static_cast<int>(base.frequencies.size()); ++k) {
        const double tau = base.frequencies[static_cast<std::size_t>(k)];
        if (std::abs(tau) > band) continue;
        const cd phase = std::polar(1.0, t * tau);
        for (int j = 0; j < nodes; ++j) dev = std::max(dev, std::abs(shifted.at(k, j) - phase * base.at(k, j)));
    }
    return dev;
}

double check_generator(const ScalarField& f, DerivScheme scheme) {
    const MellinData base = mellin_forward(f);
    const MellinData applied = mellin_forward(apply_A(f, scheme));
    const double band = resolved_band(f.grid);
    const int nodes = base.node_count();
    double dev = 0.0;
    for (int k = 0; k < static_cast<int>(base.frequencies.size()); ++k) {
        const double tau = base.frequencies[static_cast<std::size_t>(k)];
        if (std::abs(tau) > band) continue;
        for (int j = 0; j < nodes; ++j) dev = std::max(dev, std::abs(applied.at(k, j) - tau * base.at(k, j)));
    }
    return dev;
}

std::string spectrum_to_csv(const MellinData& d) {
    std::string out = "tau,omega_index,re,im\n";
    char buf[40];
    const int nodes = d.node_count();
    for (int k = 0; k < static_cast<int>(d.frequencies.size()); ++k) {
        for (int j = 0; j < nodes; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", d.frequencies[static_cast<std::size_t>(k)]);
            out += buf;
            out += ',';
            out += std::to_string(j);
            out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", d.at(k, j).real());
            out += buf;
            out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", d.at(k, j).imag());
            out += buf;
            out += '\n';
        }
    }
    return out;
}

}  // namespace hslab::mellin
