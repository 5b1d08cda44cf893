// fft.hpp — complex discrete Fourier transforms.
//
// Self-contained radix-2 FFT with a Bluestein (chirp-z) fallback for
// arbitrary lengths, so every grid size is supported and results are
// bit-reproducible across runs.  Forward transform is unnormalized,
//   X_k = sum_j x_j e^{-2*pi*i*j*k/N};
// the inverse divides by N.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hslab::fft {

using cd = std::complex<double>;

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// In-place transform, n must be a power of two.
void fft_pow2(std::vector<cd>& a, bool inverse);

// Any length; power-of-two sizes take the fast path.
std::vector<cd> dft(const std::vector<cd>& a, bool inverse);

}  // namespace hslab::fft
