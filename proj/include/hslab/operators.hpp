// operators.hpp — differential and group operators in log coordinates.
//
// With g = Phi f on the cylinder:
//   L = x . grad        acts as  Phi L Phi^{-1} = d/ds - n/2
//   A = -iL - i n/2     acts as  Phi A Phi^{-1} = -i d/ds
//   U(t) f(x) = e^{t n/2} f(e^t x)   acts as the shift g(s) -> g(s + t)
// and ||A f||^2 + (n^2/4) ||f||^2 = ||L f||^2.
//
// d/ds is either a 4th-order centered difference (zero extension beyond the
// grid, antisymmetric stencil) or the unitary DFT derivative for data that
// vanishes at both ends.  The gradient of a scalar field splits as
//   |grad f|^2 = |df/dr|^2 + r^{-2} |grad_omega f|^2
// with the radial part taken through g and angular parts by quadrature-
// consistent differentiation (spectral in the azimuth, barycentric
// differentiation on the Gauss-Legendre polar nodes).

#pragma once

#include <vector>

#include "hslab/field.hpp"

namespace hslab {

enum class DerivScheme { fd4, spectral };

// d/ds of a sampled line, uniform spacing h
std::vector<cd> d_ds_line(const std::vector<cd>& v, double h, DerivScheme scheme);

RadialProfile d_ds(const RadialProfile& p, DerivScheme scheme = DerivScheme::fd4);
LogField d_ds(const LogField& g, DerivScheme scheme = DerivScheme::fd4);

// A g = -i dg/ds (slice-wise)
LogField apply_A(const LogField& g, DerivScheme scheme = DerivScheme::fd4);
ScalarField apply_A(const ScalarField& f, DerivScheme scheme = DerivScheme::fd4);

// L f = (x . grad) f = Phi^{-1} (d/ds - n/2) Phi f
ScalarField apply_L(const ScalarField& f, DerivScheme scheme = DerivScheme::fd4);

struct DilateResult {
    ScalarField field;
    double interp_error_estimate = 0.0;  // 0 for on-grid shifts
};

// U(t): shift by t in s, cubic 4-point interpolation off-grid, exact
// re-indexing when t is a multiple of the spacing.
ScalarField dilate(const ScalarField& f, double t);
DilateResult dilate_with_report(const ScalarField& f, double t);
RadialProfile shift_profile(const RadialProfile& p, double t);

// |grad f|^2 at every sample (real), radial part via g = Phi f
std::vector<double> gradient_sq(const ScalarField& f, DerivScheme scheme = DerivScheme::fd4);

// df/dr at every sample
std::vector<cd> radial_derivative(const ScalarField& f, DerivScheme scheme = DerivScheme::fd4);

}  // namespace hslab
