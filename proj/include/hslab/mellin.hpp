// mellin.hpp — the transform M = F o Phi, Fourier in s after the change to
// log coordinates, with the symmetric 1/sqrt(2 pi) convention:
//
//   (M psi)(tau, omega) = (2 pi)^{-1/2} int e^{-i s tau} (Phi psi)(s, omega) ds.
//
// M diagonalizes the dilation group and its generator:
//   M U(t) = e^{i t tau} M,    M A = tau M,    M e^{-tA^2} = e^{-t tau^2} M.
//
// Discretely the s-integral is the rectangle sum, so M is a rescaled unitary
// DFT: Parseval and the inverse hold to rounding.

#pragma once

#include <vector>

#include "hslab/field.hpp"
#include "hslab/operators.hpp"

namespace hslab::mellin {

struct MellinData {
    LogRadialGrid grid;           // originating s-grid
    SphericalQuadrature sphere;
    std::vector<double> frequencies;  // tau_k, ascending
    std::vector<cd> values;           // values[k * nodes + j]

    int node_count() const { return sphere.node_count(); }
    double delta_tau() const;
    cd& at(int k, int j) { return values[static_cast<std::size_t>(k) * static_cast<std::size_t>(node_count()) + static_cast<std::size_t>(j)]; }
    const cd& at(int k, int j) const { return values[static_cast<std::size_t>(k) * static_cast<std::size_t>(node_count()) + static_cast<std::size_t>(j)]; }
};

MellinData forward_log(const LogField& g);
LogField inverse_log(const MellinData& d);

MellinData mellin_forward(const ScalarField& f);
ScalarField mellin_inverse(const MellinData& d);

// multiply by a real frequency multiplier m(tau) in place
void apply_multiplier(MellinData& d, const std::vector<double>& multiplier);

// max_k sup_j |M(U(t) f) - e^{i t tau} M f| over the resolved band
double check_dilation_shift(const ScalarField& f, double t);

// max over |tau| <= 0.5 tau_Nyquist of |M(A f) - tau M f|
double check_generator(const ScalarField& f, DerivScheme scheme = DerivScheme::fd4);

double resolved_band(const LogRadialGrid& grid);  // 0.5 * pi / spacing

std::string spectrum_to_csv(const MellinData& d);  // tau,omega_index,re,im

}  // namespace hslab::mellin
