#include "hslab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hslab::fft {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                // direct twiddle evaluation avoids accumulated recurrence error
                const cd w = std::polar(1.0, ang * static_cast<double>(k));
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

namespace {

// Bluestein: X_k = w_k * (a (*) b)_k with a_j = x_j w_j, b_j = conj(w_j),
// w_j = e^{-i pi j^2 / N}.  j^2 is reduced mod 2N before the angle is formed
// so the argument stays small.
std::vector<cd> bluestein(const std::vector<cd>& x, bool inverse) {
    const std::size_t n = x.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cd> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t j2 = (j * j) % (2 * n);
        w[j] = std::polar(1.0, sign * kPi * static_cast<double>(j2) / static_cast<double>(n));
    }
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cd> a(m, cd{0.0, 0.0}), b(m, cd{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * w[j];
    for (std::size_t j = 0; j < n; ++j) {
        b[j] = std::conj(w[j]);
        if (j > 0) b[m - j] = std::conj(w[j]);
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * w[k];
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& v : out) v *= inv;
    }
    return out;
}

}  // namespace

std::vector<cd> dft(const std::vector<cd>& a, bool inverse) {
    if (a.empty()) return {};
    if (a.size() == 1) return a;
    if (is_pow2(a.size())) {
        std::vector<cd> out = a;
        fft_pow2(out, inverse);
        return out;
    }
    return bluestein(a, inverse);
}

}  // namespace hslab::fft
