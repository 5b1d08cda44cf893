// semigroup.hpp — P_t = e^{-tA^2}, a Gaussian convolution in log coordinates:
//
//   (Phi P_t Phi^{-1} phi)(r, omega) = (4 pi t)^{-1/2} int exp{-(r-s)^2/4t} phi(s omega) ds,
//
// and e^{-t L*L} = e^{-t n^2/4} P_t.  Three independent evaluation paths:
//   direct           — quadrature sum against the sampled kernel
//   fast-convolution — zero-padded FFT convolution with the sampled kernel
//   mellin-multiplier— multiply Mellin data by e^{-t tau^2} and invert
// The sampled kernel is renormalized by its own lattice mass whenever that
// mass departs from one by more than 1e-13, which keeps constants exactly
// invariant and the discrete operator positivity-preserving.

#pragma once

#include <string>

#include "hslab/field.hpp"

namespace hslab::semigroup {

enum class EvolveMethod { direct, fast_convolution, mellin_multiplier };

EvolveMethod method_from_string(const std::string& name);
std::string method_name(EvolveMethod m);

struct SemigroupQuery {
    double time = 0.0;
    EvolveMethod method = EvolveMethod::fast_convolution;
    double pad_width = 0.0;
    // the default pad 8 sqrt(t) truncates kernel mass at erfc(4)/2 ~ 7.7e-9,
    // so the default tolerance sits just above that floor
    double leakage_tolerance = 1e-8;

    // pad < 0 selects max(8 sqrt(t), 10 h) at evolve time
    static SemigroupQuery make(double t, EvolveMethod m = EvolveMethod::fast_convolution, double pad = -1.0);
};

double heat_kernel(double r, double s, double t);

// h * sum over the whole lattice of the sampled kernel, by Poisson duality;
// departs from one only for t near the resolution floor
double lattice_kernel_mass(double t, double h);

RadialProfile evolve(const RadialProfile& g, const SemigroupQuery& q);
LogField evolve(const LogField& g, const SemigroupQuery& q);

// e^{-t n^2/4} Phi^{-1} P_t Phi f
ScalarField evolve_LstarL(const ScalarField& f, double t, EvolveMethod method = EvolveMethod::fast_convolution);

// Repeated P_t applications to one profile across many t (the B^alpha scan).
// The kernel is sampled at in-grid offsets only and the convolution is a
// zero-padded exact linear one, so arbitrarily large t is safe: no periodic
// wrap-around, data outside the grid treated as zero.
class ProfileHeatScan {
  public:
    explicit ProfileHeatScan(const RadialProfile& g);
    RadialProfile apply(double t) const;

  private:
    LogRadialGrid grid_;
    std::size_t padded_;
    std::vector<std::complex<double>> data_hat_;
};

// single-shot convenience wrapper around ProfileHeatScan
RadialProfile heat_convolve(const RadialProfile& g, double t);

}  // namespace hslab::semigroup
