// norms.hpp — every norm and functional the certifier needs.
//
// All R^n integrals are polar rectangle sums on the log grid,
//   int |f|^p r^beta dr domega = sum_ij w_j |f_ij|^p e^{(beta+1) s_i} h,
// so the Lebesgue integrals, the cylinder norms of Phi f, and the weighted
// radial norms are all the *same* sums under the exponent bookkeeping and
// the change-of-variables identities hold at quadrature level.
//
// The B^alpha functional takes the spherical mean G of g, applies P_t to
// |G|, and maximizes t^{-alpha/2} ||P_t |G| ||_inf over a geometric t-grid.
// The weak-L^q norm is evaluated exactly over the sample distribution.

#pragma once

#include <vector>

#include "hslab/field.hpp"
#include "hslab/semigroup.hpp"

namespace hslab::norms {

// int_{R^n} |f|^p |x|^{w} dx    (w = 0 for the plain Lebesgue integral)
double rn_lp_integral(const ScalarField& f, double p, double radial_power = 0.0);

// (int |f|^p dx)^{1/p}
double rn_lp_norm(const ScalarField& f, double p);

// int int |f(r omega)|^p r^{beta} dr domega   (measure dr domega, not dx)
double radial_weighted_integral(const ScalarField& f, double p, double beta);

// (sum_i |G_i|^q h)^{1/q}
double lq_norm_line(const RadialProfile& g, double q);

// (sum_ij w_j |g_ij|^p h)^{1/p} on the cylinder
double lp_norm_cylinder(const LogField& g, double p);

double linf_norm(const RadialProfile& g);

// { sup_u u^q lambda(|G| >= u) }^{1/q}, exact over the discrete distribution
double weak_lq_norm(const RadialProfile& g, double q);

enum class Premultiplier { one, r };

// || pre * F ||_{L^{2*}(R+, r^{n-1} dr)}, 2* = 2n/(n-2), via r = e^s
double l2star_radial(const RadialProfile& f_of_r, int n, Premultiplier pre);

struct BesovResult {
    double value = 0.0;
    double sup_t = 0.0;
    bool endpoint_attained = false;
    int widenings = 0;
};

std::vector<double> default_besov_grid();  // 200 log-spaced points on [1e-4, 1e4]

// sup over the given t-grid; flags endpoint attainment, never widens
BesovResult besov_norm(const LogField& g, double alpha, const std::vector<double>& t_grid,
                       bool caller_asserts_radial = false);

// default grid, widened x10 on endpoint attainment at most twice, then throws
double besov_norm_auto(const LogField& g, double alpha, bool caller_asserts_radial = false,
                       BesovResult* detail = nullptr);

}  // namespace hslab::norms
