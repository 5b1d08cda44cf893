// field.hpp — sampled fields in log-polar coordinates and the unitary map
//
//   (Phi f)(s, omega) = e^{s n/2} f(e^s omega),   (Phi^{-1} g)(x) = r^{-n/2} g(ln r, omega),
//
// a pointwise pair of reciprocal maps, so phi_inverse(phi_forward(f)) == f
// exactly at the samples.  With the plain Riemann sum used throughout, the
// cylinder norm of Phi f and the R^n norm of f are the *same* finite sum, so
// the discrete Phi is an exact isometry.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hslab/grid.hpp"

namespace hslab {

using cd = std::complex<double>;

// samples f(e^{s_i} omega_j), stored i-major: values[i * nodes + j]
struct ScalarField {
    LogRadialGrid grid;
    SphericalQuadrature sphere;
    std::vector<cd> values;

    int dimension() const { return sphere.dimension; }
    int node_count() const { return sphere.node_count(); }
    cd& at(int i, int j) { return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(node_count()) + static_cast<std::size_t>(j)]; }
    const cd& at(int i, int j) const { return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(node_count()) + static_cast<std::size_t>(j)]; }
};

// samples g(s_i, omega_j) on the cylinder R x S^{n-1}
struct LogField {
    LogRadialGrid grid;
    SphericalQuadrature sphere;
    std::vector<cd> values;

    int dimension() const { return sphere.dimension; }
    int node_count() const { return sphere.node_count(); }
    cd& at(int i, int j) { return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(node_count()) + static_cast<std::size_t>(j)]; }
    const cd& at(int i, int j) const { return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(node_count()) + static_cast<std::size_t>(j)]; }
};

// samples G(s_i) of a one-variable profile
struct RadialProfile {
    LogRadialGrid grid;
    std::vector<cd> values;
};

ScalarField make_scalar_field(const LogRadialGrid& grid, const SphericalQuadrature& sphere);
LogField make_log_field(const LogRadialGrid& grid, const SphericalQuadrature& sphere);

void require_finite(const ScalarField& f, const char* where);
void require_finite(const LogField& g, const char* where);

LogField phi_forward(const ScalarField& f);
ScalarField phi_inverse(const LogField& g);

// G(s_i) = |S^{n-1}|^{-1} sum_j w_j g(s_i, omega_j).  A radial-only marker
// quadrature cannot certify non-radial data, so the caller must assert
// radial symmetry to use one.
RadialProfile spherical_mean(const LogField& g, bool caller_asserts_radial = false);

struct TailReport {
    double total_mass = 0.0;  // sum of the weighted density over the grid
    double tail_mass = 0.0;   // part outside the inner window
    double relative = 0.0;    // tail / max(total, tiny)
    double window_lo = 0.0;
    double window_hi = 0.0;
};

// Mass density |f|^p * r^{r_power} against dr d(omega), accumulated outside the
// inner (1 - 2*margin) portion of the grid.  r_power = n-1, p = 2 is the L^2
// mass of the field.
TailReport tail_report(const ScalarField& f, double p, double r_power, double margin = 0.1);
TailReport tail_report(const ScalarField& f);  // L^2 mass, default window

// plain |G|^2 ds mass for cylinder data
TailReport tail_report(const RadialProfile& g, double margin = 0.1);

// CSV dumps; header rows are part of the format.
std::string field_to_csv(const ScalarField& f);   // s,omega_index,re,im
std::string field_to_csv(const LogField& g);      // s,omega_index,re,im
std::string profile_to_csv(const RadialProfile& p);  // s,re,im

RadialProfile profile_from_csv(const std::string& text);

}  // namespace hslab
