#include "hslab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hslab/fft.hpp"

namespace hslab::extremal {

namespace {

constexpr double kWindowFraction = 0.78;  // mass must sit inside the inner 80%
constexpr int kMaxCount = 32768;

double smooth_step_up(double x) {  // C-infinity, 0 at x<=0, 1 at x>=1
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

}  // namespace

LogRadialGrid fit_grid(const std::vector<std::pair<double, double>>& components,
                       const std::vector<ineq::WeightedWindow>& windows, double min_half_span,
                       double extra_span) {
    double half = min_half_span;
    double sigma_min = 1.0;
    std::vector<ineq::WeightedWindow> wins = windows;
    wins.push_back({0.0, 2.0});  // the plain L^2 mass must stay inside too
    for (const auto& [mu, sigma] : components) {
        sigma_min = std::min(sigma_min, sigma);
        for (const auto& w : wins) {
            const double pw = std::max(w.power, 1.0);
            const double center = mu + w.tilt * sigma * sigma / pw;
            const double width = sigma * std::sqrt(74.0 / pw) + extra_span;
            half = std::max(half, (std::abs(center) + width) / kWindowFraction);
        }
    }
    int count = 2048;
    const double needed = 85.0 * 2.0 * half / sigma_min;
    if (needed > 2048.0)
        count = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(kMaxCount),
                                                       fft::next_pow2(static_cast<std::size_t>(needed))));
    return LogRadialGrid::make(-half, half, count);
}

ScalarField mixture_field(int n, const std::vector<double>& amp, const std::vector<double>& phase,
                          const std::vector<double>& mu, const std::vector<double>& sigma,
                          const LogRadialGrid& grid) {
    ScalarField f = make_scalar_field(grid, make_radial_marker(n));
    const double half_n = 0.5 * static_cast<double>(n);
    for (int i = 0; i < grid.count; ++i) {
        const double s = grid.s(i);
        cd v{0.0, 0.0};
        for (std::size_t k = 0; k < amp.size(); ++k) {
            const double z = (s - mu[k]) / sigma[k];
            // one exponential per component keeps r^{-n/2} underflow benign
            v += std::polar(amp[k], phase[k]) * std::exp(-half_n * s - 0.5 * z * z);
        }
        f.at(i, 0) = v;
    }
    return f;
}

ScalarField random_mixture_field(int n, const std::vector<ineq::WeightedWindow>& windows, Rng& rng,
                                 bool complex_phases, double extra_span) {
    const int k = rng.uniform_int(2, 3);
    std::vector<double> amp, phase, mu, sigma;
    std::vector<std::pair<double, double>> comps;
    for (int i = 0; i < k; ++i) {
        amp.push_back(rng.uniform(0.3, 1.0));
        phase.push_back(complex_phases ? rng.uniform(0.0, 2.0 * std::numbers::pi) : 0.0);
        mu.push_back(rng.uniform(-2.0, 2.0));
        sigma.push_back(rng.uniform(0.45, 1.2));
        comps.emplace_back(mu.back(), sigma.back());
    }
    return mixture_field(n, amp, phase, mu, sigma, fit_grid(comps, windows, 12.0, extra_span));
}

FamilySpec log_gaussian_family(int n, const std::vector<ineq::WeightedWindow>& windows, double sigma_lo,
                               double sigma_hi, double extra_span) {
    FamilySpec fam;
    fam.id = "log_gaussian";
    fam.description = "radial g(s) = exp(-(s-mu)^2 / 2 sigma^2), parameters {sigma, mu}";
    // Tilted windows e^{a s} |g|^pw push the integrand mass to
    // mu + a sigma^2 / pw; cap sigma so (a) every integral magnitude
    // ~ e^{a^2 sigma^2 / 2 pw} stays inside double range and (b) the fitted
    // grid stays narrow enough that field samples and the log-polar
    // scale factors e^{(1 + n/2)|s|} remain representable.
    double cap = sigma_hi;
    const double span_budget = 0.78 * 650.0 / (1.0 + 0.5 * static_cast<double>(n));
    for (const auto& w : windows) {
        const double pw = std::max(w.power, 1.0);
        const double a = std::abs(w.tilt);
        if (a < 1e-12) continue;
        cap = std::min(cap, std::sqrt(1200.0 * pw) / a);
        // solve a sigma^2 / pw + 9.3 sigma <= span_budget for sigma
        const double disc = 9.3 * 9.3 + 4.0 * (a / pw) * span_budget;
        cap = std::min(cap, (std::sqrt(disc) - 9.3) / (2.0 * a / pw));
    }
    fam.box = {{sigma_lo, std::max(sigma_lo, cap)}, {-1.0, 1.0}};
    fam.make = [n, windows, extra_span](const std::vector<double>& prm) {
        const double sigma = prm.at(0), mu = prm.at(1);
        const LogRadialGrid grid = fit_grid({{mu, sigma}}, windows, 12.0, extra_span);
        return mixture_field(n, {1.0}, {0.0}, {mu}, {sigma}, grid);
    };
    return fam;
}

FamilySpec annulus_bump_family(int n, double lambda) {
    FamilySpec fam;
    fam.id = "annulus_bump";
    fam.description = "radial g(s) = exp(-1/(1-(s/(w Lambda))^2)), support inside [-Lambda, Lambda]";
    fam.box = {{0.6, 0.95}};
    fam.make = [n, lambda](const std::vector<double>& prm) {
        const double w = prm.at(0);
        const double half = std::max(12.0, 1.4 * lambda);
        int count = 2048;
        if (2.0 * half / 0.01 > 2048.0 && lambda > 8.0) count = 4096;
        const LogRadialGrid grid = LogRadialGrid::make(-half, half, count);
        ScalarField f = make_scalar_field(grid, make_radial_marker(n));
        const double half_n = 0.5 * static_cast<double>(n);
        for (int i = 0; i < grid.count; ++i) {
            const double s = grid.s(i);
            f.at(i, 0) = std::exp(-half_n * s) * bump(s / (w * lambda));
        }
        return f;
    };
    return fam;
}

FamilySpec sobolev_extremizer_family(int n) {
    FamilySpec fam;
    fam.id = "sobolev_extremizer";
    fam.description = "cut profile (1 + r^2)^{-(n-2)/2} dilated by e^{a}, parameter {a}";
    fam.box = {{-1.5, 1.5}};
    fam.make = [n](const std::vector<double>& prm) {
        const double a = prm.at(0);
        const LogRadialGrid grid = LogRadialGrid::make(-12.0, 12.0, 2048);
        ScalarField f = make_scalar_field(grid, make_radial_marker(n));
        const double expo = -0.5 * (static_cast<double>(n) - 2.0);
        for (int i = 0; i < grid.count; ++i) {
            const double s = grid.s(i);
            // smooth cutoff: 1 inside |s| <= 8.5, 0 outside |s| >= 10.5
            const double cut = smooth_step_up((10.5 - std::abs(s)) / 2.0);
            const double shifted = s - a;
            f.at(i, 0) = std::pow(1.0 + std::exp(2.0 * shifted), expo) * cut;
        }
        return f;
    };
    return fam;
}

FamilySpec perturbed_radial_family(int order) {
    FamilySpec fam;
    fam.id = "perturbed_radial";
    fam.description = "f = Phi^{-1} g_{sigma,mu} * (1 + eps cos(theta)) on S^2, parameters {sigma, mu, eps}";
    fam.box = {{0.5, 3.0}, {-1.0, 1.0}, {0.0, 0.5}};
    fam.radial = false;
    fam.make = [order](const std::vector<double>& prm) {
        const double sigma = prm.at(0), mu = prm.at(1), eps = prm.at(2);
        const LogRadialGrid grid = fit_grid({{mu, sigma}}, {{0.0, 2.0}, {-6.0, 6.0}, {-2.0, 2.0}});
        const SphericalQuadrature sphere = make_spherical_quadrature(3, order);
        ScalarField f = make_scalar_field(grid, sphere);
        const int nodes = sphere.node_count();
        for (int i = 0; i < grid.count; ++i) {
            const double s = grid.s(i);
            const double z = (s - mu) / sigma;
            const double radial = std::exp(-1.5 * s) * std::exp(-0.5 * z * z);
            for (int j = 0; j < nodes; ++j) {
                const double cos_theta = sphere.nodes[static_cast<std::size_t>(j)][2];
                f.at(i, j) = radial * (1.0 + eps * cos_theta);
            }
        }
        return f;
    };
    return fam;
}

CounterexampleFound::CounterexampleFound(ineq::CertificateRecord rec)
    : std::runtime_error("counterexample: certified violation of " + rec.id + " (margin " +
                         std::to_string(rec.margin) + ")"),
      record(std::move(rec)) {}

double ratio(const std::string& id, const ScalarField& f, const ineq::ParamSet& params,
             const ineq::CertifyOptions& options) {
    const ineq::InequalityDefinition& def = ineq::find_definition(id);
    ineq::CertificateRecord rec = ineq::certify(id, f, params, options);
    if (def.has_explicit_constant && !def.anomaly_class && rec.verdict == ineq::Verdict::violated)
        throw CounterexampleFound(std::move(rec));
    return rec.ratio;
}

namespace {

struct Objective {
    const std::string& id;
    const FamilySpec& family;
    const ineq::ParamSet& params;
    const ineq::CertifyOptions& options;
    double sign;  // +1 minimize, -1 maximize
    int evaluations = 0;
    double best_signed = std::numeric_limits<double>::infinity();
    std::vector<double> best_params;
    std::vector<double> history;

    double operator()(const std::vector<double>& x) {
        ineq::CertifyOptions opt = options;
        opt.assume_radial = options.assume_radial || family.radial;
        const double r = ratio(id, family.make(x), params, opt);
        const double value = sign * r;
        ++evaluations;
        if (value < best_signed) {
            best_signed = value;
            best_params = x;
        }
        history.push_back(sign * best_signed);
        return value;
    }
};

std::vector<double> project(const FamilySpec& family, std::vector<double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::clamp(x[i], family.box[i][0], family.box[i][1]);
    return x;
}

// one Nelder-Mead run within the remaining budget
void simplex_run(Objective& obj, const FamilySpec& family, Rng& rng, int budget) {
    const std::size_t d = family.box.size();
    std::vector<std::vector<double>> simplex;
    std::vector<double> fval;
    std::vector<double> x0(d);
    for (std::size_t i = 0; i < d; ++i) x0[i] = rng.uniform(family.box[i][0], family.box[i][1]);
    simplex.push_back(x0);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> xi = x0;
        const double step = 0.25 * (family.box[i][1] - family.box[i][0]);
        xi[i] += (xi[i] + step <= family.box[i][1]) ? step : -step;
        simplex.push_back(project(family, xi));
    }
    for (const auto& v : simplex) {
        if (obj.evaluations >= budget) return;
        fval.push_back(obj(v));
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;
    while (obj.evaluations < budget) {
        // sort ascending
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fval[a] < fval[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (std::size_t i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fval[i]);
        }
        simplex = std::move(s2);
        fval = std::move(f2);

        const double spread = std::abs(fval.back() - fval.front());
        if (spread <= 1e-6 * (std::abs(fval.front()) + 1e-30)) return;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j] / static_cast<double>(d);

        auto blend = [&](double c) {
            std::vector<double> x(d);
            for (std::size_t j = 0; j < d; ++j) x[j] = centroid[j] + c * (centroid[j] - simplex.back()[j]);
            return project(family, x);
        };

        const std::vector<double> xr = blend(alpha);
        const double fr = obj(xr);
        if (fr < fval.front()) {
            if (obj.evaluations >= budget) return;
            const std::vector<double> xe = blend(gamma);
            const double fe = obj(xe);
            simplex.back() = fe < fr ? xe : xr;
            fval.back() = std::min(fe, fr);
        } else if (fr < fval[fval.size() - 2]) {
            simplex.back() = xr;
            fval.back() = fr;
        } else {
            if (obj.evaluations >= budget) return;
            const std::vector<double> xc = blend(-rho);
            const double fc = obj(xc);
            if (fc < fval.back()) {
                simplex.back() = xc;
                fval.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t j = 0; j < d; ++j)
                        simplex[i][j] = simplex[0][j] + shrink * (simplex[i][j] - simplex[0][j]);
                    if (obj.evaluations >= budget) return;
                    fval[i] = obj(simplex[i]);
                }
            }
        }
    }
}

}  // namespace

SearchResult optimize(const std::string& id, const FamilySpec& family, SearchDirection direction,
                      int budget, std::uint64_t seed, const ineq::ParamSet& params,
                      const ineq::CertifyOptions& options) {
    if (budget < 1) throw std::invalid_argument("optimize: budget must be positive");
    Objective obj{id, family, params, options, direction == SearchDirection::minimize ? 1.0 : -1.0,
                  0, std::numeric_limits<double>::infinity(), {}, {}};

    Rng rng(seed);
    bool converged = false;
    if (budget < static_cast<int>(family.box.size()) + 1) {
        // not enough evaluations for a simplex: probe the box midpoint
        std::vector<double> mid(family.box.size());
        for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (family.box[i][0] + family.box[i][1]);
        obj(mid);
    } else {
        const int restarts = 3;
        for (int r = 0; r < restarts; ++r) {
            const int before = obj.evaluations;
            const int slice = budget * (r + 1) / restarts;
            simplex_run(obj, family, rng, slice);
            if (obj.evaluations < slice && obj.evaluations > before) converged = true;
            if (obj.evaluations >= budget) break;
        }
    }
    if (obj.best_params.empty()) throw std::runtime_error("optimize: every evaluation failed");

    SearchResult res;
    res.inequality_id = id;
    res.family_id = family.id;
    res.best_params = obj.best_params;
    res.best_ratio = obj.sign * obj.best_signed;
    res.evaluations = obj.evaluations;
    res.converged = converged;
    res.history = std::move(obj.history);
    res.seed = seed;

    // certified re-evaluation of the reported optimum
    ineq::CertifyOptions opt = options;
    opt.assume_radial = options.assume_radial || family.radial;
    const double check = ratio(id, family.make(res.best_params), params, opt);
    if (std::abs(check - res.best_ratio) > 1e-12 * (1.0 + std::abs(check)))
        throw std::runtime_error("optimize: best ratio failed re-evaluation");
    return res;
}

ConstantEstimate estimate_constant(const std::string& id, const std::vector<FamilySpec>& families,
                                   int budget, std::uint64_t seed, const ineq::ParamSet& params,
                                   const ineq::CertifyOptions& options) {
    const ineq::InequalityDefinition& def = ineq::find_definition(id);
    if (def.has_explicit_constant)
        throw std::invalid_argument("estimate_constant: " + id + " has an explicit constant");
    if (families.empty()) throw std::invalid_argument("estimate_constant: no families given");
    ConstantEstimate est;
    Rng rng(seed);
    for (const FamilySpec& fam : families) {
        SearchResult r = optimize(id, fam, SearchDirection::maximize, budget, rng.fork(), params, options);
        if (est.searches.empty() || r.best_ratio > est.value) {
            est.value = r.best_ratio;
            est.best = r;
        }
        est.searches.push_back(std::move(r));
    }
    return est;
}

}  // namespace hslab::extremal
