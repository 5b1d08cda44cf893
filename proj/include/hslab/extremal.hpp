// extremal.hpp — parametrized trial families and derivative-free ratio
// optimization for sharpness probes and empirical constant estimates.
//
// A family maps a parameter vector inside a box to a trial field.  Families
// size their own log-radial grid so that every weighted integrand an
// inequality touches keeps its mass inside the inner 80% of the grid
// (the weighted window of a component exp(-(s-mu)^2/2 sigma^2) under
// e^{tilt*s} |.|^{power} is centered at mu + tilt sigma^2 / power).
//
// The optimizer is a deterministic Nelder-Mead simplex with seeded
// restarts and box projection.  Any certified violation of an
// explicit-constant entry discovered during a search aborts it loudly.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hslab/inequalities.hpp"
#include "hslab/rng.hpp"

namespace hslab::extremal {

struct FamilySpec {
    std::string id;
    std::string description;
    std::vector<std::array<double, 2>> box;
    std::function<ScalarField(const std::vector<double>&)> make;
    bool radial = true;
};

// grid sized from mixture components and weighted windows
LogRadialGrid fit_grid(const std::vector<std::pair<double, double>>& components,  // (mu, sigma)
                       const std::vector<ineq::WeightedWindow>& windows,
                       double min_half_span = 12.0, double extra_span = 0.0);

// radial field f = Phi^{-1} g for a log-Gaussian mixture g
ScalarField mixture_field(int n, const std::vector<double>& amp, const std::vector<double>& phase,
                          const std::vector<double>& mu, const std::vector<double>& sigma,
                          const LogRadialGrid& grid);

// seeded random mixture trial, grid fitted to the given windows
ScalarField random_mixture_field(int n, const std::vector<ineq::WeightedWindow>& windows, Rng& rng,
                                 bool complex_phases = false, double extra_span = 0.0);

// parameters {sigma, mu}
FamilySpec log_gaussian_family(int n, const std::vector<ineq::WeightedWindow>& windows,
                               double sigma_lo = 0.5, double sigma_hi = 50.0, double extra_span = 0.0);

// parameters {width fraction}; support inside [-lambda, lambda]
FamilySpec annulus_bump_family(int n, double lambda);

// parameters {log-scale shift}; cut Sobolev-extremizer profile (1+r^2)^{-(n-2)/2}
FamilySpec sobolev_extremizer_family(int n);

// parameters {sigma, mu, eps}; f = Phi^{-1} g * (1 + eps cos(theta)), n = 3
FamilySpec perturbed_radial_family(int order = 12);

enum class SearchDirection { minimize, maximize };

struct SearchResult {
    std::string inequality_id;
    std::string family_id;
    std::vector<double> best_params;
    double best_ratio = 0.0;
    int evaluations = 0;
    bool converged = false;
    std::vector<double> history;  // best-so-far after each evaluation
    std::uint64_t seed = 0;
};

struct CounterexampleFound : std::runtime_error {
    explicit CounterexampleFound(ineq::CertificateRecord rec);
    ineq::CertificateRecord record;
};

// lhs/rhs of the entry on this trial (constant included for explicit
// entries, so sharpness means ratio -> 1); throws CounterexampleFound on a
// certified explicit-constant violation
double ratio(const std::string& id, const ScalarField& f, const ineq::ParamSet& params,
             const ineq::CertifyOptions& options = {});

SearchResult optimize(const std::string& id, const FamilySpec& family, SearchDirection direction,
                      int budget, std::uint64_t seed, const ineq::ParamSet& params,
                      const ineq::CertifyOptions& options = {});

struct ConstantEstimate {
    double value = 0.0;  // sup of lhs / constant-free rhs: empirical lower bound for C
    SearchResult best;
    std::vector<SearchResult> searches;
};

ConstantEstimate estimate_constant(const std::string& id, const std::vector<FamilySpec>& families,
                                   int budget, std::uint64_t seed, const ineq::ParamSet& params,
                                   const ineq::CertifyOptions& options = {});

}  // namespace hslab::extremal
