#include "hslab/inequalities.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hslab/norms.hpp"

namespace hslab::ineq {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::nan("");

// ---------------------------------------------------------------------------
// shared integrals
// ---------------------------------------------------------------------------

// int |f|^2 dx
double l2_sq(const ScalarField& f) { return norms::rn_lp_integral(f, 2.0); }

// int |f|^2 / |x|^2 dx
double hardy_weight_sq(const ScalarField& f) { return norms::rn_lp_integral(f, 2.0, -2.0); }

// int |grad f|^p r^{w} dx
double grad_lp_integral(const ScalarField& f, double p, double radial_power, DerivScheme scheme) {
    const std::vector<double> g2 = gradient_sq(f, scheme);
    const int nodes = f.node_count();
    const double n = static_cast<double>(f.dimension());
    double acc = 0.0;
    for (int i = 0; i < f.grid.count; ++i) {
        const double ws = (radial_power + n) * f.grid.s(i);
        for (int j = 0; j < nodes; ++j) {
            const double m2 = g2[static_cast<std::size_t>(i * nodes + j)];
            if (m2 <= 0.0) continue;
            acc += f.sphere.weights[static_cast<std::size_t>(j)] * std::exp(0.5 * p * std::log(m2) + ws);
        }
    }
    return acc * f.grid.spacing;
}

// int |L f|^p dx
double dilation_lp_integral(const ScalarField& f, double p, DerivScheme scheme) {
    return norms::rn_lp_integral(apply_L(f, scheme), p);
}

// field |x| f
ScalarField radial_multiply(const ScalarField& f) {
    ScalarField out = f;
    const int nodes = f.node_count();
    for (int i = 0; i < f.grid.count; ++i) {
        const double r = std::exp(f.grid.s(i));
        for (int j = 0; j < nodes; ++j) out.at(i, j) *= r;
    }
    return out;
}

// spherical mean of the raw field samples: F(r) = M(f)(r)
RadialProfile mean_of_field(const ScalarField& f, bool assume_radial) {
    LogField wrap;
    wrap.grid = f.grid;
    wrap.sphere = f.sphere;
    wrap.values = f.values;
    return spherical_mean(wrap, assume_radial);
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

void check_support(const RadialProfile& g, double half_width, const char* what) {
    for (int i = 0; i < g.grid.count; ++i) {
        if (std::abs(g.grid.s(i)) <= half_width) continue;
        if (std::abs(g.values[static_cast<std::size_t>(i)]) >= 1e-13)
            throw SupportViolation(std::string(what) + ": sample of magnitude " +
                                   std::to_string(std::abs(g.values[static_cast<std::size_t>(i)])) +
                                   " outside the admissible support");
    }
}

void check_support_cylinder(const LogField& g, double half_width, const char* what) {
    const int nodes = g.node_count();
    for (int i = 0; i < g.grid.count; ++i) {
        if (std::abs(g.grid.s(i)) <= half_width) continue;
        for (int j = 0; j < nodes; ++j)
            if (std::abs(g.at(i, j)) >= 1e-13)
                throw SupportViolation(std::string(what) + ": sample outside the admissible support");
    }
}

// constants
double smoothing_constant(double p) {
    const double c = std::pow(4.0 * kPi, -1.0 / (2.0 * p));
    if (p == 1.0) return c;  // p' = infinity, (p')^{-1/2p'} -> 1
    const double pp = p / (p - 1.0);
    return c * std::pow(pp, -1.0 / (2.0 * pp));
}

double two_star(int n) { return 2.0 * static_cast<double>(n) / (static_cast<double>(n) - 2.0); }

// derivative of g along s with the configured scheme
LogField cylinder_derivative(const LogField& g, const CertifyOptions& opt) { return d_ds(g, opt.scheme); }

// ---------------------------------------------------------------------------
// domain predicates
// ---------------------------------------------------------------------------

bool ok(std::string* why, const char* msg, bool cond) {
    if (!cond && why) *why = msg;
    return cond;
}

// ---------------------------------------------------------------------------
// registry construction
// ---------------------------------------------------------------------------

std::vector<WeightedWindow> field_lp_windows(const ParamSet& m, bool with_inverse_weight) {
    const double n = static_cast<double>(m.n);
    const double tilt = n * (1.0 - 0.5 * m.p);
    std::vector<WeightedWindow> w{{tilt, m.p}};
    if (with_inverse_weight) w.push_back({tilt - m.p, m.p});
    return w;
}

std::vector<WeightedWindow> cylinder_windows(const ParamSet& m) {
    std::vector<WeightedWindow> w{{0.0, std::max(1.0, m.p)}};
    if (m.q > 0.0) w.push_back({0.0, m.q});
    return w;
}

std::vector<WeightedWindow> sobolev_windows(const ParamSet& m) {
    const double n = static_cast<double>(m.n);
    const double ts = 2.0 * n / (n - 2.0);
    return {{-ts, ts}, {-2.0, 2.0}, {0.0, 2.0}};
}

std::vector<InequalityDefinition> build_registry() {
    std::vector<InequalityDefinition> reg;
    auto unspecified = [](const ParamSet&) { return kNaN; };

    // --- Hardy family -------------------------------------------------------
    {
        InequalityDefinition d;
        d.id = "hardy_classical";
        d.direction = Direction::lower_bound;
        d.has_explicit_constant = true;
        d.statement = "int |grad f|^p dx >= ((n-p)/p)^p int |f|^p / |x|^p dx";
        d.constant = [](const ParamSet& m) {
            return std::pow((static_cast<double>(m.n) - m.p) / m.p, m.p);
        };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p <= n", m.p >= 1.0 && m.p <= static_cast<double>(m.n));
        };
        d.windows = [](const ParamSet& m) { return field_lp_windows(m, true); };
        d.evaluate = [&](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            r.lhs = grad_lp_integral(f, m.p, 0.0, o.scheme);
            r.rhs = std::pow((static_cast<double>(m.n) - m.p) / m.p, m.p) * norms::rn_lp_integral(f, m.p, -m.p);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "hardy_dilation";
        d.direction = Direction::lower_bound;
        d.has_explicit_constant = true;
        d.statement = "int |(x.grad) f|^p dx >= (n/p)^p int |f|^p dx";
        d.constant = [](const ParamSet& m) { return std::pow(static_cast<double>(m.n) / m.p, m.p); };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs p >= 1 and n >= 1", m.p >= 1.0 && m.n >= 1);
        };
        d.windows = [](const ParamSet& m) { return field_lp_windows(m, false); };
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            r.lhs = dilation_lp_integral(f, m.p, o.scheme);
            r.rhs = std::pow(static_cast<double>(m.n) / m.p, m.p) * norms::rn_lp_integral(f, m.p);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "hardy_chain";
        d.direction = Direction::lower_bound;
        d.has_explicit_constant = true;
        d.statement = "|| grad(|x| f) ||_p >= ((n-p)/p) || f ||_p";
        d.constant = [](const ParamSet& m) { return (static_cast<double>(m.n) - m.p) / m.p; };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p <= n", m.p >= 1.0 && m.p <= static_cast<double>(m.n));
        };
        d.windows = [](const ParamSet& m) { return field_lp_windows(m, false); };
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            r.lhs = std::pow(grad_lp_integral(radial_multiply(f), m.p, 0.0, o.scheme), 1.0 / m.p);
            r.rhs = (static_cast<double>(m.n) - m.p) / m.p * norms::rn_lp_norm(f, m.p);
        };
        reg.push_back(std::move(d));
    }

    // --- identities ---------------------------------------------------------
    {
        InequalityDefinition d;
        d.id = "ibp_identity";
        d.kind = Kind::identity;
        d.has_explicit_constant = true;
        d.statement = "2 Re int conj(f) (x.grad) f dx = -n int |f|^2 dx";
        d.constant = [](const ParamSet&) { return 1.0; };
        d.in_domain = [](const ParamSet&, std::string*) { return true; };
        d.windows = [](const ParamSet&) { return std::vector<WeightedWindow>{{0.0, 2.0}}; };
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const ScalarField lf = apply_L(f, o.scheme);
            const int nodes = f.node_count();
            const double n = static_cast<double>(m.n);
            double acc = 0.0;
            for (int i = 0; i < f.grid.count; ++i) {
                double shell = 0.0;
                for (int j = 0; j < nodes; ++j)
                    shell += f.sphere.weights[static_cast<std::size_t>(j)] *
                             (std::conj(f.at(i, j)) * lf.at(i, j)).real();
                acc += shell * std::exp(n * f.grid.s(i));
            }
            r.lhs = 2.0 * acc * f.grid.spacing;
            r.rhs = -n * l2_sq(f);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "grad_identity";
        d.kind = Kind::identity;
        d.has_explicit_constant = true;
        d.statement = "int |grad(|x| f)|^2 dx = int (|x| |grad f|)^2 dx - (n-1) int |f|^2 dx";
        d.constant = [](const ParamSet&) { return 1.0; };
        d.in_domain = [](const ParamSet&, std::string*) { return true; };
        d.windows = [](const ParamSet&) { return std::vector<WeightedWindow>{{0.0, 2.0}}; };
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            r.lhs = grad_lp_integral(radial_multiply(f), 2.0, 0.0, o.scheme);
            r.rhs = grad_lp_integral(f, 2.0, 2.0, o.scheme) - (static_cast<double>(m.n) - 1.0) * l2_sq(f);
        };
        reg.push_back(std::move(d));
    }

    // --- smoothing lemmas ----------------------------------------------------
    {
        InequalityDefinition d;
        d.id = "smoothing_linf";
        d.has_explicit_constant = true;
        d.statement = "|| P_t G ||_inf <= (4 pi)^{-1/2p} (p')^{-1/2p'} t^{-1/2p} || G ||_p";
        d.constant = [](const ParamSet& m) { return smoothing_constant(m.p); };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs p >= 1 and t > 0", m.p >= 1.0 && m.t > 0.0);
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const RadialProfile G = spherical_mean(phi_forward(f), o.assume_radial);
            const auto q = semigroup::SemigroupQuery::make(m.t, o.method);
            r.lhs = norms::linf_norm(semigroup::evolve(G, q));
            r.rhs = smoothing_constant(m.p) * std::pow(m.t, -1.0 / (2.0 * m.p)) * norms::lq_norm_line(G, m.p);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "smoothing_deriv";
        d.has_explicit_constant = true;
        d.statement = "|| d/dr P_t G ||_p <= (pi t)^{-1/2} || G ||_p";
        d.constant = [](const ParamSet& m) { return std::pow(kPi * m.t, -0.5); };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs p >= 1 and t > 0", m.p >= 1.0 && m.t > 0.0);
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const RadialProfile G = spherical_mean(phi_forward(f), o.assume_radial);
            const auto q = semigroup::SemigroupQuery::make(m.t, o.method);
            r.lhs = norms::lq_norm_line(d_ds(semigroup::evolve(G, q), o.scheme), m.p);
            r.rhs = std::pow(kPi * m.t, -0.5) * norms::lq_norm_line(G, m.p);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "pseudo_poincare";
        d.has_explicit_constant = true;
        d.statement = "|| P_t g - g ||_p <= 2 pi^{-1/2} t^{1/2} || dg/ds ||_p  (cylinder norms)";
        d.constant = [](const ParamSet& m) { return 2.0 * std::pow(kPi, -0.5) * std::sqrt(m.t); };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs p >= 1 and t > 0", m.p >= 1.0 && m.t > 0.0);
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const auto q = semigroup::SemigroupQuery::make(m.t, o.method);
            LogField diff = semigroup::evolve(g, q);
            for (std::size_t k = 0; k < diff.values.size(); ++k) diff.values[k] -= g.values[k];
            r.lhs = norms::lp_norm_cylinder(diff, m.p);
            r.rhs = 2.0 * std::pow(kPi, -0.5) * std::sqrt(m.t) *
                    norms::lp_norm_cylinder(cylinder_derivative(g, o), m.p);
        };
        reg.push_back(std::move(d));
    }

    // --- the main bound and its corollaries ----------------------------------
    {
        InequalityDefinition d;
        d.id = "main_weak";
        d.has_explicit_constant = true;
        d.anomaly_class = true;
        d.statement =
            "|| G ||_{q,infty} <= 2^{theta+1} pi^{-theta/2} |S^{n-1}|^{-1} "
            "|| dg/ds ||_p^theta || g ||_{B^{theta/(theta-1)}}^{1-theta}";
        d.note =
            "printed constant tested as stated; the companion value uses the constant "
            "2 (2^p pi^{-p/2} |S^{n-1}|^{-1})^{theta/p} recoverable from the level-set bound";
        d.constant = [](const ParamSet& m) {
            const double theta = m.p / m.q;
            return std::pow(2.0, theta + 1.0) * std::pow(kPi, -0.5 * theta) /
                   SphericalQuadrature::surface_area(m.n);
        };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p and q > 2p (finite B norm on function trials)",
                      m.p >= 1.0 && m.q > 2.0 * m.p);
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const RadialProfile G = spherical_mean(g, o.assume_radial);
            const double theta = m.p / m.q;
            const double alpha = theta / (theta - 1.0);
            const double x = norms::lp_norm_cylinder(cylinder_derivative(g, o), m.p);
            const double b = norms::besov_norm_auto(g, alpha, o.assume_radial);
            const double core = std::pow(x, theta) * std::pow(b, 1.0 - theta);
            const double area = SphericalQuadrature::surface_area(m.n);
            r.lhs = norms::weak_lq_norm(G, m.q);
            r.rhs = std::pow(2.0, theta + 1.0) * std::pow(kPi, -0.5 * theta) / area * core;
            r.has_alt = true;
            r.alt_rhs = 2.0 * std::pow(std::pow(2.0, m.p) * std::pow(kPi, -0.5 * m.p) / area, theta / m.p) * core;
            r.alt_margin = r.alt_rhs - r.lhs;
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "main_strong";
        d.statement = "|| G ||_q <= C || dg/ds ||_p^theta || g ||_{B^{theta/(theta-1)}}^{1-theta}";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p and q > 2p (finite B norm on function trials)",
                      m.p >= 1.0 && m.q > 2.0 * m.p);
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const RadialProfile G = spherical_mean(g, o.assume_radial);
            const double theta = m.p / m.q;
            const double x = norms::lp_norm_cylinder(cylinder_derivative(g, o), m.p);
            const double b = norms::besov_norm_auto(g, theta / (theta - 1.0), o.assume_radial);
            r.lhs = norms::lq_norm_line(G, m.q);
            r.rhs = std::pow(x, theta) * std::pow(b, 1.0 - theta);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "sobolev_mean";
        d.statement = "|| G ||_{p*} <= C || dg/ds ||_p^{1/n} || g ||_p^{(n-1)/n},  p* = np/(n-p)";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p < n", m.p >= 1.0 && m.p < static_cast<double>(m.n));
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const RadialProfile G = spherical_mean(g, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double pstar = n * m.p / (n - m.p);
            r.lhs = norms::lq_norm_line(G, pstar);
            r.rhs = std::pow(norms::lp_norm_cylinder(cylinder_derivative(g, o), m.p), 1.0 / n) *
                    std::pow(norms::lp_norm_cylinder(g, m.p), (n - 1.0) / n);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "sobolev_mean_q";
        d.statement = "|| G ||_{p(p+1)} <= C || dg/ds ||_p^{1/(p+1)} || g ||_p^{p/(p+1)}";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p < n", m.p >= 1.0 && m.p < static_cast<double>(m.n));
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const RadialProfile G = spherical_mean(g, o.assume_radial);
            r.lhs = norms::lq_norm_line(G, m.p * (m.p + 1.0));
            r.rhs = std::pow(norms::lp_norm_cylinder(cylinder_derivative(g, o), m.p), 1.0 / (m.p + 1.0)) *
                    std::pow(norms::lp_norm_cylinder(g, m.p), m.p / (m.p + 1.0));
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "sobolev_compact";
        d.statement = "supp G in [-Lambda, Lambda]:  || G ||_{p*} <= C Lambda^{(n-1)/n} || dg/ds ||_p";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p < n and lambda > 0",
                      m.p >= 1.0 && m.p < static_cast<double>(m.n) && m.lambda > 0.0);
        };
        d.windows = cylinder_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const RadialProfile G = spherical_mean(g, o.assume_radial);
            check_support(G, m.lambda, "sobolev_compact");
            const double n = static_cast<double>(m.n);
            r.lhs = norms::lq_norm_line(G, n * m.p / (n - m.p));
            r.rhs = std::pow(m.lambda, (n - 1.0) / n) *
                    norms::lp_norm_cylinder(cylinder_derivative(g, o), m.p);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "gagliardo_nirenberg";
        d.statement = "|| G ||_q <= C || dg/ds ||_p^{p/q} || g ||_m^{1-p/q},  m = q/p - 1";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs 1 <= p < q and q >= 2p (so m >= 1)",
                      m.p >= 1.0 && m.q > m.p && m.q >= 2.0 * m.p);
        };
        d.windows = [](const ParamSet& m) {
            return std::vector<WeightedWindow>{{0.0, m.p}, {0.0, m.q}, {0.0, m.q / m.p - 1.0}};
        };
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const RadialProfile G = spherical_mean(g, o.assume_radial);
            const double mm = m.q / m.p - 1.0;
            r.lhs = norms::lq_norm_line(G, m.q);
            r.rhs = std::pow(norms::lp_norm_cylinder(cylinder_derivative(g, o), m.p), m.p / m.q) *
                    std::pow(norms::lp_norm_cylinder(g, mm), 1.0 - m.p / m.q);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "main_p2";
        d.statement =
            "|| r F ||^2_{2*, dmu} <= C { ||Lf||^2 - (n^2/4) ||f||^2 }^{1/n} (||f||^2)^{1-1/n}";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) { return ok(why, "needs n >= 3", m.n >= 3); };
        d.windows = sobolev_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const RadialProfile F = mean_of_field(f, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double lhs_norm = norms::l2star_radial(F, m.n, norms::Premultiplier::r);
            const double core = positive_part(dilation_lp_integral(f, 2.0, o.scheme) - 0.25 * n * n * l2_sq(f));
            r.lhs = lhs_norm * lhs_norm;
            r.rhs = std::pow(core, 1.0 / n) * std::pow(l2_sq(f), 1.0 - 1.0 / n);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "hardy_sobolev";
        d.statement =
            "|| M(h) ||^2_{2*, dmu} <= C { ||grad h||^2 - ((n-2)/2)^2 || h/|x| ||^2 }^{1/n} "
            "( || h/|x| ||^2 )^{1-1/n}";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) { return ok(why, "needs n >= 3", m.n >= 3); };
        d.windows = sobolev_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const RadialProfile F = mean_of_field(f, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double y = hardy_weight_sq(f);
            const double core =
                positive_part(grad_lp_integral(f, 2.0, 0.0, o.scheme) - 0.25 * (n - 2.0) * (n - 2.0) * y);
            const double lhs_norm = norms::l2star_radial(F, m.n, norms::Premultiplier::one);
            r.lhs = lhs_norm * lhs_norm;
            r.rhs = std::pow(core, 1.0 / n) * std::pow(y, 1.0 - 1.0 / n);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "hardy_sobolev_eps";
        d.statement =
            "|| M(h) ||^2_{2*, dmu} <= C eps^{-(1-1/n)} { ||grad h||^2 - [((n-2)/2)^2 - eps] || h/|x| ||^2 }";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs n >= 3 and eps > 0", m.n >= 3 && m.eps > 0.0);
        };
        d.windows = sobolev_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const RadialProfile F = mean_of_field(f, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double y = hardy_weight_sq(f);
            const double lhs_norm = norms::l2star_radial(F, m.n, norms::Premultiplier::one);
            r.lhs = lhs_norm * lhs_norm;
            r.rhs = std::pow(m.eps, -(1.0 - 1.0 / n)) *
                    (grad_lp_integral(f, 2.0, 0.0, o.scheme) - (0.25 * (n - 2.0) * (n - 2.0) - m.eps) * y);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "stubbe_pre";
        d.statement =
            "|| F ||^2_{2*, dmu} <= C [ (n-2)^2/4 - delta ]^{-(n-1)/n} { ||grad f||^2 - delta || f/|x| ||^2 }";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            const double cap = 0.25 * (static_cast<double>(m.n) - 2.0) * (static_cast<double>(m.n) - 2.0);
            return ok(why, "needs n >= 3 and 0 <= delta < (n-2)^2/4", m.n >= 3 && m.delta >= 0.0 && m.delta < cap);
        };
        d.windows = sobolev_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const RadialProfile F = mean_of_field(f, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double cap = 0.25 * (n - 2.0) * (n - 2.0);
            const double lhs_norm = norms::l2star_radial(F, m.n, norms::Premultiplier::one);
            r.lhs = lhs_norm * lhs_norm;
            r.rhs = std::pow(cap - m.delta, -(n - 1.0) / n) *
                    (grad_lp_integral(f, 2.0, 0.0, o.scheme) - m.delta * hardy_weight_sq(f));
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "stubbe";
        d.has_explicit_constant = true;
        d.statement =
            "|| f ||^2_{2*} <= K(n) [ (n-2)^2/4 - delta ]^{-(n-1)/n} { ||grad f||^2 - delta || f/|x| ||^2 }";
        d.constant = [](const ParamSet& m) { return stubbe_constant(m.n); };
        d.in_domain = [](const ParamSet& m, std::string* why) {
            const double cap = 0.25 * (static_cast<double>(m.n) - 2.0) * (static_cast<double>(m.n) - 2.0);
            return ok(why, "needs n >= 3 and 0 <= delta < (n-2)^2/4", m.n >= 3 && m.delta >= 0.0 && m.delta < cap);
        };
        d.windows = sobolev_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const double n = static_cast<double>(m.n);
            const double cap = 0.25 * (n - 2.0) * (n - 2.0);
            const double ts = two_star(m.n);
            r.lhs = std::pow(norms::rn_lp_integral(f, ts), 2.0 / ts);
            r.rhs = stubbe_constant(m.n) * std::pow(cap - m.delta, -(n - 1.0) / n) *
                    (grad_lp_integral(f, 2.0, 0.0, o.scheme) - m.delta * hardy_weight_sq(f));
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "annulus_L";
        d.statement =
            "supp f in A(1/R, R):  || r F ||^2_{2*, dmu} <= C (ln R)^{2(n-1)/n} "
            "{ ||Lf||^2 - (n^2/4) ||f||^2 }";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs n >= 3 and R > 1", m.n >= 3 && m.R > 1.0);
        };
        d.windows = sobolev_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            check_support_cylinder(phi_forward(f), std::log(m.R), "annulus_L");
            const RadialProfile F = mean_of_field(f, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double lhs_norm = norms::l2star_radial(F, m.n, norms::Premultiplier::r);
            const double core = positive_part(dilation_lp_integral(f, 2.0, o.scheme) - 0.25 * n * n * l2_sq(f));
            r.lhs = lhs_norm * lhs_norm;
            r.rhs = std::pow(std::log(m.R), 2.0 * (n - 1.0) / n) * core;
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "annulus_grad";
        d.statement =
            "supp h in A(1/R, R):  || M(h) ||^2_{2*, dmu} <= C (ln R)^{2(n-1)/n} "
            "{ ||grad h||^2 - ((n-2)^2/4) || h/|x| ||^2 }";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs n >= 3 and R > 1", m.n >= 3 && m.R > 1.0);
        };
        d.windows = sobolev_windows;
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            check_support_cylinder(phi_forward(f), std::log(m.R), "annulus_grad");
            const RadialProfile F = mean_of_field(f, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double y = hardy_weight_sq(f);
            const double core =
                positive_part(grad_lp_integral(f, 2.0, 0.0, o.scheme) - 0.25 * (n - 2.0) * (n - 2.0) * y);
            const double lhs_norm = norms::l2star_radial(F, m.n, norms::Premultiplier::one);
            r.lhs = lhs_norm * lhs_norm;
            r.rhs = std::pow(std::log(m.R), 2.0 * (n - 1.0) / n) * core;
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "weighted_gn";
        d.statement =
            "|| M(Phi f) ||_q <= C { ||Lf||^2 - (n^2/4) ||f||^2 }^{1/q} || Phi f ||_m^{1-2/q}, m = q/2-1; "
            "radial weights r^{nm} and r^{n(m/2-1)} against dmu";
        d.note =
            "certified in the spherical-mean form; the same statement with the field in place of "
            "its mean does not follow for non-radial data and is flagged as ambiguous";
        d.constant = unspecified;
        d.in_domain = [](const ParamSet& m, std::string* why) {
            return ok(why, "needs q >= 4 (so m = q/2 - 1 >= 1)", m.q >= 4.0);
        };
        d.windows = [](const ParamSet& m) {
            return std::vector<WeightedWindow>{{0.0, 2.0}, {0.0, m.q}, {0.0, m.q / 2.0 - 1.0}};
        };
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            const LogField g = phi_forward(f);
            const RadialProfile G = spherical_mean(g, o.assume_radial);
            const double n = static_cast<double>(m.n);
            const double mm = m.q / 2.0 - 1.0;
            const double core = positive_part(dilation_lp_integral(f, 2.0, o.scheme) - 0.25 * n * n * l2_sq(f));
            r.lhs = norms::lq_norm_line(G, m.q);
            r.rhs = std::pow(core, 1.0 / m.q) * std::pow(norms::lp_norm_cylinder(g, mm), 1.0 - 2.0 / m.q);
        };
        reg.push_back(std::move(d));
    }
    {
        InequalityDefinition d;
        d.id = "mod_hardy_L_bound";
        d.direction = Direction::lower_bound;
        d.has_explicit_constant = true;
        d.statement = "int |grad(|x| f)|^2 dx >= int |Lf|^2 dx - (n-1) int |f|^2 dx";
        d.constant = [](const ParamSet&) { return 1.0; };
        d.in_domain = [](const ParamSet&, std::string*) { return true; };
        d.windows = [](const ParamSet&) { return std::vector<WeightedWindow>{{0.0, 2.0}}; };
        d.evaluate = [](const ScalarField& f, const ParamSet& m, const CertifyOptions& o, CertificateRecord& r) {
            r.lhs = grad_lp_integral(radial_multiply(f), 2.0, 0.0, o.scheme);
            r.rhs = dilation_lp_integral(f, 2.0, o.scheme) - (static_cast<double>(m.n) - 1.0) * l2_sq(f);
        };
        reg.push_back(std::move(d));
    }
    return reg;
}

}  // namespace

double stubbe_constant(int n) {
    if (n < 3) throw DomainViolation("stubbe_constant: needs n >= 3");
    const double nn = static_cast<double>(n);
    return 1.0 / (kPi * nn * (nn - 2.0)) *
           std::pow(std::tgamma(nn) / std::tgamma(0.5 * nn), 2.0 / nn) *
           std::pow(0.25 * (nn - 2.0) * (nn - 2.0), (nn - 1.0) / nn);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::identity_ok: return "identity-ok";
        case Verdict::identity_fail: return "identity-fail";
    }
    return "?";
}

const std::vector<InequalityDefinition>& registry() {
    static const std::vector<InequalityDefinition> reg = build_registry();
    return reg;
}

bool is_registered(const std::string& id) {
    for (const auto& d : registry())
        if (d.id == id) return true;
    return false;
}

const InequalityDefinition& find_definition(const std::string& id) {
    for (const auto& d : registry())
        if (d.id == id) return d;
    throw DomainViolation("unknown inequality id: " + id);
}

CertificateRecord certify(const std::string& id, const ScalarField& f, const ParamSet& params,
                          const CertifyOptions& options) {
    const InequalityDefinition& def = find_definition(id);
    if (params.n != f.dimension())
        throw DomainViolation("certify: parameter n does not match the field dimension");
    std::string why;
    if (!def.in_domain(params, &why)) throw DomainViolation(id + ": " + why);
    require_finite(f, "certify");
    double sup = 0.0;
    for (const cd& v : f.values) sup = std::max(sup, std::abs(v));
    if (sup <= 0.0) throw NullFunction();

    CertificateRecord rec;
    rec.id = id;
    rec.params = params;
    def.evaluate(f, params, options, rec);

    if (def.kind == Kind::identity) {
        rec.margin = std::abs(rec.lhs - rec.rhs);
        const double scale = std::max({std::abs(rec.lhs), std::abs(rec.rhs), 1e-300});
        rec.tolerance = options.identity_tol;
        rec.ratio = rec.rhs != 0.0 ? rec.lhs / rec.rhs : std::numeric_limits<double>::infinity();
        rec.verdict = rec.margin <= options.identity_tol * scale ? Verdict::identity_ok : Verdict::identity_fail;
        return rec;
    }

    rec.tolerance = options.inequality_tol;
    if (rec.rhs > 0.0) {
        rec.ratio = rec.lhs / rec.rhs;
    } else {
        // a vanishing bounding side with nonzero bounded side is an infinite ratio
        rec.ratio = rec.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    rec.margin = def.direction == Direction::upper_bound ? rec.rhs - rec.lhs : rec.lhs - rec.rhs;
    if (def.has_explicit_constant)
        rec.verdict = rec.margin >= -options.inequality_tol * std::abs(rec.rhs) ? Verdict::holds : Verdict::violated;
    else
        rec.verdict = Verdict::holds;  // empirical-constant entry, no violation possible
    return rec;
}

SuiteResult certify_suite(const std::vector<std::string>& ids, const std::vector<Trial>& trials,
                          const std::vector<ParamSet>& params, const CertifyOptions& options) {
    SuiteResult out;
    for (const std::string& id : ids) {
        const InequalityDefinition& def = find_definition(id);
        for (std::size_t ti = 0; ti < trials.size(); ++ti) {
            const Trial& trial = trials[ti];
            for (const ParamSet& prm : params) {
                if (prm.n != trial.field.dimension()) continue;
                std::string why;
                if (!def.in_domain(prm, &why)) {
                    out.skips.push_back({id, trial.label, prm, why});
                    continue;
                }
                CertifyOptions opt = options;
                opt.assume_radial = options.assume_radial || trial.radial;
                try {
                    CertificateRecord rec = certify(id, trial.field, prm, opt);
                    rec.trial = trial.label;
                    out.records.push_back(std::move(rec));
                } catch (const std::exception& e) {
                    out.skips.push_back({id, trial.label, prm, e.what()});
                }
            }
        }
    }
    return out;
}

}  // namespace hslab::ineq
