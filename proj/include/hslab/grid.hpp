// grid.hpp — discretization of R^n in log-polar coordinates.
//
// A field f on R^n is sampled at x = e^{s_i} * omega_j where the s_i form a
// uniform grid on [s_min, s_max] (s = ln r) and the omega_j are nodes of a
// quadrature on the unit sphere S^{n-1}.
//
// Sphere rules:
//   n = 1 : the two points {-1, +1}, weight 1 each            (|S^0| = 2)
//   n = 2 : equally spaced angles, weight 2*pi/M each
//   n = 3 : product rule, Gauss-Legendre in cos(theta) x uniform azimuth
//   n >= 4: single-node marker carrying the full surface area; valid only
//           for radial data.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace hslab {

struct LogRadialGrid {
    double s_min = 0.0;
    double s_max = 0.0;
    int count = 0;
    double spacing = 0.0;  // (s_max - s_min) / (count - 1)

    static LogRadialGrid make(double s_min, double s_max, int count);

    double s(int i) const { return s_min + spacing * static_cast<double>(i); }
    double r(int i) const;
    std::vector<double> points() const;

    bool operator==(const LogRadialGrid&) const = default;
};

struct SphericalQuadrature {
    int dimension = 0;
    bool radial_only = false;
    std::vector<std::array<double, 3>> nodes;  // unit vectors (padded with 0)
    std::vector<double> weights;

    // product-rule bookkeeping, populated for n == 3
    int polar_count = 0;
    int azimuth_count = 0;
    std::vector<double> polar_cos;  // Gauss-Legendre nodes u_k = cos(theta_k)
    std::vector<double> polar_weight;
    std::vector<double> azimuth;  // phi_m, uniform

    // uniform angles for n == 2
    std::vector<double> angle;

    int node_count() const { return static_cast<int>(nodes.size()); }
    double total_weight() const;

    static double surface_area(int n);  // |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)
};

SphericalQuadrature make_spherical_quadrature(int n, int order);

// One-node rule for radial data in any dimension.
SphericalQuadrature make_radial_marker(int n);

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_m.
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

// {"s_min":..,"s_max":..,"count":..,"dimension":..,"order":..}
std::string grid_to_json(const LogRadialGrid& grid, int dimension, int order);

}  // namespace hslab
