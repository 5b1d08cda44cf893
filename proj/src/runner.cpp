#include "hslab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hslab/mellin.hpp"
#include "hslab/norms.hpp"
#include "hslab/rng.hpp"
#include "json.hpp"

namespace hslab::run {

using ordered_json = nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

const std::set<std::string> kSupportEntries = {"annulus_L", "annulus_grad", "sobolev_compact"};

ordered_json params_to_json(const ineq::ParamSet& m) {
    ordered_json j;
    j["n"] = m.n;
    j["p"] = m.p;
    j["q"] = m.q;
    j["delta"] = m.delta;
    j["eps"] = m.eps;
    j["R"] = m.R;
    j["lambda"] = m.lambda;
    j["t"] = m.t;
    return j;
}

ordered_json record_to_json(const ineq::CertificateRecord& r) {
    ordered_json j;
    j["id"] = r.id;
    j["params"] = params_to_json(r.params);
    j["trial"] = r.trial;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["ratio"] = r.ratio;
    j["margin"] = r.margin;
    j["verdict"] = ineq::verdict_name(r.verdict);
    j["tolerance"] = r.tolerance;
    return j;
}

void require_keys(const ordered_json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "' in " + where);
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    require_keys(j, {"grid", "quadrature", "seed", "tolerances", "ids", "method", "scheme", "trials",
                     "output_dir", "parameters", "field", "times", "search"},
                 "top level");
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        require_keys(g, {"s_min", "s_max", "count"}, "grid");
        cfg.grid.s_min = g.value("s_min", cfg.grid.s_min);
        cfg.grid.s_max = g.value("s_max", cfg.grid.s_max);
        cfg.grid.count = g.value("count", cfg.grid.count);
    }
    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        require_keys(q, {"dimension", "order"}, "quadrature");
        cfg.quad.dimension = q.value("dimension", cfg.quad.dimension);
        cfg.quad.order = q.value("order", cfg.quad.order);
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        require_keys(t, {"identity", "inequality"}, "tolerances");
        cfg.tol_identity = t.value("identity", cfg.tol_identity);
        cfg.tol_inequality = t.value("inequality", cfg.tol_inequality);
    }
    if (j.contains("ids")) {
        if (j.at("ids").is_string()) {
            const std::string all = j.at("ids").get<std::string>();
            if (all != "all") throw ConfigError("ids must be \"all\" or an array of ids");
        } else {
            for (const auto& v : j.at("ids")) cfg.ids.push_back(v.get<std::string>());
        }
    }
    if (j.contains("method")) cfg.method = j.at("method").get<std::string>();
    if (j.contains("scheme")) cfg.scheme = j.at("scheme").get<std::string>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("output_dir")) cfg.out_dir = j.at("output_dir").get<std::string>();
    if (j.contains("parameters")) {
        const auto& p = j.at("parameters");
        require_keys(p, {"n", "p", "q", "delta", "eps", "R", "lambda", "t"}, "parameters");
        for (auto it = p.begin(); it != p.end(); ++it) {
            std::vector<double> vals;
            for (const auto& v : *it) vals.push_back(v.get<double>());
            if (vals.empty()) throw ConfigError("parameter list '" + it.key() + "' is empty");
            cfg.params[it.key()] = std::move(vals);
        }
    }
    if (j.contains("field")) {
        const auto& f = j.at("field");
        require_keys(f, {"kind", "sigma", "mu", "path"}, "field");
        cfg.field.kind = f.value("kind", cfg.field.kind);
        cfg.field.sigma = f.value("sigma", cfg.field.sigma);
        cfg.field.mu = f.value("mu", cfg.field.mu);
        cfg.field.path = f.value("path", cfg.field.path);
        if (cfg.field.kind != "gaussian" && cfg.field.kind != "csv")
            throw ConfigError("field.kind must be gaussian or csv");
    }
    if (j.contains("times")) {
        cfg.times.clear();
        for (const auto& v : j.at("times")) cfg.times.push_back(v.get<double>());
    }
    if (j.contains("search")) {
        const auto& s = j.at("search");
        require_keys(s, {"id", "family", "direction", "budget"}, "search");
        cfg.search.id = s.value("id", cfg.search.id);
        cfg.search.family = s.value("family", cfg.search.family);
        cfg.search.direction = s.value("direction", cfg.search.direction);
        cfg.search.budget = s.value("budget", cfg.search.budget);
    }

    if (!(cfg.grid.s_min < cfg.grid.s_max) || cfg.grid.count < 16) throw ConfigError("invalid grid spec");
    if (cfg.quad.dimension < 1 || cfg.quad.order < 1) throw ConfigError("invalid quadrature spec");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (cfg.scheme != "fd4" && cfg.scheme != "spectral") throw ConfigError("scheme must be fd4 or spectral");
    try {
        semigroup::method_from_string(cfg.method == "all" ? "direct" : cfg.method);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    for (const std::string& id : cfg.ids)
        if (!ineq::is_registered(id)) throw ConfigError("unknown inequality id: " + id);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["grid"] = {{"s_min", cfg.grid.s_min}, {"s_max", cfg.grid.s_max}, {"count", cfg.grid.count}};
    j["quadrature"] = {{"dimension", cfg.quad.dimension}, {"order", cfg.quad.order}};
    j["seed"] = cfg.seed;
    j["tolerances"] = {{"identity", cfg.tol_identity}, {"inequality", cfg.tol_inequality}};
    j["ids"] = cfg.ids;
    j["method"] = cfg.method;
    j["scheme"] = cfg.scheme;
    j["trials"] = cfg.trials;
    ordered_json prm;
    for (const auto& [k, v] : cfg.params) prm[k] = v;
    j["parameters"] = prm;
    j["field"] = {{"kind", cfg.field.kind}, {"sigma", cfg.field.sigma}, {"mu", cfg.field.mu}, {"path", cfg.field.path}};
    j["times"] = cfg.times;
    j["search"] = {{"id", cfg.search.id}, {"family", cfg.search.family},
                   {"direction", cfg.search.direction}, {"budget", cfg.search.budget}};
    return j.dump();
}

std::uint64_t config_hash(const RunConfig& cfg) { return fnv1a64(config_to_json(cfg)); }

ineq::CertifyOptions options_from(const RunConfig& cfg) {
    ineq::CertifyOptions opt;
    opt.scheme = cfg.scheme == "fd4" ? DerivScheme::fd4 : DerivScheme::spectral;
    opt.method = semigroup::method_from_string(cfg.method == "all" ? "fast-convolution" : cfg.method);
    opt.identity_tol = cfg.tol_identity;
    opt.inequality_tol = cfg.tol_inequality;
    return opt;
}

std::vector<ineq::ParamSet> default_params(const std::string& id, const RunConfig& cfg) {
    auto list = [&](const char* key, std::vector<double> fallback) {
        const auto it = cfg.params.find(key);
        return it != cfg.params.end() ? it->second : fallback;
    };
    std::vector<double> ns = list("n", {static_cast<double>(cfg.quad.dimension)});

    std::vector<double> ps{2.0}, qs{0.0}, deltas{0.0}, epss{0.0}, rs{0.0}, lambdas{0.0}, ts{0.0};
    if (id == "hardy_classical" || id == "hardy_dilation") ps = list("p", {1.0, 1.5, 2.0, 3.0});
    else if (id == "hardy_chain") ps = list("p", {1.0, 2.0, 3.0});
    else if (id == "smoothing_linf" || id == "smoothing_deriv" || id == "pseudo_poincare") {
        ps = list("p", {1.0, 2.0, 4.0});
        ts = list("t", {0.05, 0.5});
    } else if (id == "main_weak" || id == "main_strong") {
        ps = list("p", {1.0, 2.0});
        qs = list("q", {6.0});
    } else if (id == "sobolev_mean" || id == "sobolev_mean_q") {
        ps = list("p", {1.0, 2.0});
    } else if (id == "sobolev_compact") {
        ps = list("p", {2.0});
        lambdas = list("lambda", {2.0});
    } else if (id == "gagliardo_nirenberg") {
        ps = list("p", {1.0, 2.0});
        qs = list("q", {4.0, 6.0});
    } else if (id == "hardy_sobolev_eps") {
        epss = list("eps", {0.05, 0.1, 0.2});
    } else if (id == "stubbe" || id == "stubbe_pre") {
        deltas = list("delta", {});  // filled per n below
    } else if (id == "annulus_L" || id == "annulus_grad") {
        rs = list("R", {std::exp(4.0)});
    } else if (id == "weighted_gn") {
        qs = list("q", {4.0, 6.0});
    }

    std::vector<ineq::ParamSet> out;
    for (double n : ns) {
        std::vector<double> dl = deltas;
        if ((id == "stubbe" || id == "stubbe_pre") && dl.empty()) {
            const double cap = 0.25 * (n - 2.0) * (n - 2.0);
            dl = {0.0, 0.25 * cap, 0.5 * cap};
        }
        for (double p : ps)
            for (double q : qs)
                for (double d : dl)
                    for (double e : epss)
                        for (double r : rs)
                            for (double lam : lambdas)
                                for (double t : ts) {
                                    ineq::ParamSet m;
                                    m.n = static_cast<int>(n);
                                    m.p = p;
                                    m.q = q;
                                    m.delta = d;
                                    m.eps = e;
                                    m.R = r;
                                    m.lambda = lam;
                                    m.t = t;
                                    out.push_back(m);
                                }
    }
    return out;
}

std::vector<ineq::Trial> build_trials(const std::string& id, const std::vector<ineq::ParamSet>& params,
                                      const RunConfig& cfg) {
    const ineq::InequalityDefinition& def = ineq::find_definition(id);
    Rng rng(cfg.seed ^ fnv1a64(id));
    std::vector<ineq::Trial> trials;

    std::set<int> dims;
    for (const auto& m : params) dims.insert(m.n);

    if (kSupportEntries.count(id)) {
        // support-constrained: smooth bumps strictly inside the admissible window
        double half_width = 1e300;
        for (const auto& m : params) {
            if (m.R > 1.0) half_width = std::min(half_width, std::log(m.R));
            if (m.lambda > 0.0) half_width = std::min(half_width, m.lambda);
        }
        if (half_width >= 1e300) half_width = 2.0;
        for (int n : dims) {
            extremal::FamilySpec fam = extremal::annulus_bump_family(n, half_width);
            for (int k = 0; k < cfg.trials; ++k) {
                const double w = rng.uniform(0.6, 0.9);
                trials.push_back({id + ":bump[" + std::to_string(k) + "]@n" + std::to_string(n), fam.make({w}), true});
            }
        }
        return trials;
    }

    for (int n : dims) {
        std::vector<ineq::WeightedWindow> windows;
        for (const auto& m : params) {
            if (m.n != n) continue;
            const auto w = def.windows(m);
            windows.insert(windows.end(), w.begin(), w.end());
        }
        for (int k = 0; k < cfg.trials; ++k) {
            const bool complex_phases = (k % 2) == 1;
            ScalarField f = extremal::random_mixture_field(n, windows, rng, complex_phases);
            trials.push_back({id + ":mixture[" + std::to_string(k) + "]@n" + std::to_string(n), std::move(f), true});
        }
        if (n == 3) {
            extremal::FamilySpec fam = extremal::perturbed_radial_family(cfg.quad.order);
            const double sigma = rng.uniform(0.8, 1.6), mu = rng.uniform(-0.5, 0.5), eps = rng.uniform(0.1, 0.4);
            trials.push_back({id + ":perturbed@n3", fam.make({sigma, mu, eps}), false});
        }
    }
    return trials;
}

VerifyOutcome run_verify(const RunConfig& cfg) {
    const ineq::CertifyOptions opt = options_from(cfg);
    std::vector<std::string> ids = cfg.ids;
    if (ids.empty())
        for (const auto& d : ineq::registry()) ids.push_back(d.id);

    std::vector<ineq::CertificateRecord> records;
    std::vector<ineq::SuiteSkip> skips;
    ordered_json anomalies = ordered_json::array();

    for (const std::string& id : ids) {
        const ineq::InequalityDefinition& def = ineq::find_definition(id);
        const std::vector<ineq::ParamSet> params = default_params(id, cfg);
        const std::vector<ineq::Trial> trials = build_trials(id, params, cfg);
        ineq::SuiteResult res = ineq::certify_suite({id}, trials, params, opt);
        for (auto& rec : res.records) {
            if (rec.has_alt) {
                ordered_json a;
                a["id"] = rec.id;
                a["trial"] = rec.trial;
                a["params"] = params_to_json(rec.params);
                a["printed_rhs"] = rec.rhs;
                a["printed_margin"] = rec.margin;
                a["companion_rhs"] = rec.alt_rhs;
                a["companion_margin"] = rec.alt_margin;
                a["note"] = def.note;
                anomalies.push_back(std::move(a));
            }
            records.push_back(std::move(rec));
        }
        for (auto& s : res.skips) skips.push_back(std::move(s));
        if (!def.note.empty() && def.id == "weighted_gn") {
            ordered_json a;
            a["id"] = def.id;
            a["note"] = def.note;
            anomalies.push_back(std::move(a));
        }
    }

    VerifyOutcome out;
    out.records = records.size();
    std::map<std::string, int> coverage;
    int holds = 0, violated = 0, id_ok = 0, id_fail = 0, flagged = 0;
    for (const auto& r : records) {
        coverage[r.id]++;
        const bool anomaly_class = ineq::find_definition(r.id).anomaly_class;
        switch (r.verdict) {
            case ineq::Verdict::holds: ++holds; break;
            case ineq::Verdict::violated:
                if (anomaly_class) ++flagged;
                else ++violated;
                break;
            case ineq::Verdict::identity_ok: ++id_ok; break;
            case ineq::Verdict::identity_fail: ++id_fail; break;
        }
    }
    out.violations = violated;
    out.identity_failures = id_fail;
    out.anomalies = flagged;
    out.exit_code = (violated > 0 || id_fail > 0) ? 1 : 0;

    ordered_json rep;
    rep["version"] = kVersion;
    rep["config_hash"] = hex64(config_hash(cfg));
    rep["seed"] = cfg.seed;
    rep["grid"] = ordered_json::parse(grid_to_json(
        LogRadialGrid::make(cfg.grid.s_min, cfg.grid.s_max, cfg.grid.count), cfg.quad.dimension, cfg.quad.order));
    rep["options"] = {{"method", cfg.method}, {"scheme", cfg.scheme},
                      {"tol_identity", cfg.tol_identity}, {"tol_inequality", cfg.tol_inequality}};
    ordered_json cov;
    for (const auto& [k, v] : coverage) cov[k] = v;
    rep["summary"] = {{"entries", ids.size()},   {"records", records.size()}, {"holds", holds},
                      {"violated", violated},    {"identity_ok", id_ok},      {"identity_fail", id_fail},
                      {"anomalies", flagged},    {"skips", skips.size()},     {"coverage", cov}};
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) recs.push_back(record_to_json(r));
    rep["records"] = std::move(recs);
    rep["anomalies"] = std::move(anomalies);
    ordered_json sk = ordered_json::array();
    for (const auto& s : skips) {
        ordered_json j;
        j["id"] = s.id;
        j["trial"] = s.trial;
        j["params"] = params_to_json(s.params);
        j["reason"] = s.reason;
        sk.push_back(std::move(j));
    }
    rep["skips"] = std::move(sk);
    out.report_json = rep.dump(2) + "\n";

    std::string csv = "id,trial,n,p,q,delta,eps,R,lambda,t,lhs,rhs,ratio,margin,verdict,tolerance\n";
    for (const auto& r : records) {
        csv += r.id + "," + r.trial + "," + std::to_string(r.params.n) + "," + csv_num(r.params.p) + "," +
               csv_num(r.params.q) + "," + csv_num(r.params.delta) + "," + csv_num(r.params.eps) + "," +
               csv_num(r.params.R) + "," + csv_num(r.params.lambda) + "," + csv_num(r.params.t) + "," +
               csv_num(r.lhs) + "," + csv_num(r.rhs) + "," + csv_num(r.ratio) + "," + csv_num(r.margin) + "," +
               ineq::verdict_name(r.verdict) + "," + csv_num(r.tolerance) + "\n";
    }
    out.report_csv = std::move(csv);
    return out;
}

namespace {

RadialProfile profile_from_spec(const RunConfig& cfg) {
    if (cfg.field.kind == "csv") {
        std::ifstream in(cfg.field.path);
        if (!in) throw ConfigError("cannot read profile: " + cfg.field.path);
        std::stringstream ss;
        ss << in.rdbuf();
        return profile_from_csv(ss.str());
    }
    RadialProfile p;
    p.grid = LogRadialGrid::make(cfg.grid.s_min, cfg.grid.s_max, cfg.grid.count);
    p.values.resize(static_cast<std::size_t>(p.grid.count));
    for (int i = 0; i < p.grid.count; ++i) {
        const double z = (p.grid.s(i) - cfg.field.mu) / cfg.field.sigma;
        p.values[static_cast<std::size_t>(i)] = std::exp(-0.5 * z * z);
    }
    return p;
}

ScalarField field_from_spec(const RunConfig& cfg) {
    const RadialProfile g = profile_from_spec(cfg);
    ScalarField f = make_scalar_field(g.grid, make_radial_marker(cfg.quad.dimension));
    const double half_n = 0.5 * static_cast<double>(cfg.quad.dimension);
    for (int i = 0; i < g.grid.count; ++i)
        f.at(i, 0) = std::exp(-half_n * g.grid.s(i)) * g.values[static_cast<std::size_t>(i)];
    return f;
}

}  // namespace

EvolveOutcome run_evolve(const RunConfig& cfg) {
    for (double t : cfg.times)
        if (!(t > 0.0)) throw ConfigError("evolve: every t must be positive");
    const RadialProfile base = profile_from_spec(cfg);
    EvolveOutcome out;
    int idx = 0;
    for (double t : cfg.times) {
        std::vector<RadialProfile> evolved;
        if (cfg.method == "all") {
            for (auto m : {semigroup::EvolveMethod::direct, semigroup::EvolveMethod::fast_convolution,
                           semigroup::EvolveMethod::mellin_multiplier})
                evolved.push_back(semigroup::evolve(base, semigroup::SemigroupQuery::make(t, m)));
        } else {
            evolved.push_back(
                semigroup::evolve(base, semigroup::SemigroupQuery::make(t, semigroup::method_from_string(cfg.method))));
        }
        std::string csv = evolved.size() > 1 ? "s,re,im,discrepancy\n" : "s,re,im\n";
        for (int i = 0; i < base.grid.count; ++i) {
            const cd v = evolved[0].values[static_cast<std::size_t>(i)];
            csv += csv_num(base.grid.s(i)) + "," + csv_num(v.real()) + "," + csv_num(v.imag());
            if (evolved.size() > 1) {
                double disc = 0.0;
                for (std::size_t m = 1; m < evolved.size(); ++m)
                    disc = std::max(disc, std::abs(evolved[m].values[static_cast<std::size_t>(i)] - v));
                out.max_cross_method_discrepancy = std::max(out.max_cross_method_discrepancy, disc);
                csv += "," + csv_num(disc);
            }
            csv += "\n";
        }
        out.dumps.emplace_back("evolve_" + std::to_string(idx++) + ".csv", std::move(csv));
    }
    return out;
}

SpectrumOutcome run_spectrum(const RunConfig& cfg) {
    const ScalarField f = field_from_spec(cfg);
    SpectrumOutcome out;
    out.spectrum_csv = mellin::spectrum_to_csv(mellin::mellin_forward(f));
    out.shift_deviation = mellin::check_dilation_shift(f, 0.3);
    out.generator_deviation = mellin::check_generator(f, options_from(cfg).scheme);

    // semigroup diagonalization on the resolved band
    double dev = 0.0;
    for (double t : {0.1, 1.0}) {
        const auto q = semigroup::SemigroupQuery::make(t, semigroup::EvolveMethod::fast_convolution);
        const mellin::MellinData lhs = mellin::forward_log(semigroup::evolve(phi_forward(f), q));
        const mellin::MellinData rhs = mellin::mellin_forward(f);
        const double band = mellin::resolved_band(f.grid);
        for (int k = 0; k < static_cast<int>(rhs.frequencies.size()); ++k) {
            const double tau = rhs.frequencies[static_cast<std::size_t>(k)];
            if (std::abs(tau) > band) continue;
            for (int j = 0; j < rhs.node_count(); ++j)
                dev = std::max(dev, std::abs(lhs.at(k, j) - std::exp(-t * tau * tau) * rhs.at(k, j)));
        }
    }
    out.semigroup_deviation = dev;

    ordered_json j;
    j["version"] = kVersion;
    j["config_hash"] = hex64(config_hash(cfg));
    j["shift_deviation"] = out.shift_deviation;
    j["generator_deviation"] = out.generator_deviation;
    j["semigroup_deviation"] = out.semigroup_deviation;
    out.deviations_json = j.dump(2) + "\n";
    return out;
}

SearchOutcome run_search(const RunConfig& cfg) {
    if (!ineq::is_registered(cfg.search.id)) throw ConfigError("unknown inequality id: " + cfg.search.id);
    const ineq::InequalityDefinition& def = ineq::find_definition(cfg.search.id);
    const std::vector<ineq::ParamSet> params = default_params(cfg.search.id, cfg);
    ineq::ParamSet prm;
    bool found = false;
    for (const auto& m : params) {
        std::string why;
        if (def.in_domain(m, &why)) {
            prm = m;
            found = true;
            break;
        }
    }
    if (!found) throw ConfigError("search: no in-domain parameter set for " + cfg.search.id);

    extremal::FamilySpec fam;
    if (cfg.search.family == "log_gaussian") fam = extremal::log_gaussian_family(prm.n, def.windows(prm));
    else if (cfg.search.family == "annulus_bump")
        fam = extremal::annulus_bump_family(prm.n, prm.R > 1.0 ? std::log(prm.R) : (prm.lambda > 0 ? prm.lambda : 2.0));
    else if (cfg.search.family == "sobolev_extremizer") fam = extremal::sobolev_extremizer_family(prm.n);
    else if (cfg.search.family == "perturbed_radial") fam = extremal::perturbed_radial_family(cfg.quad.order);
    else throw ConfigError("unknown family: " + cfg.search.family);
    if (cfg.search.direction != "minimize" && cfg.search.direction != "maximize")
        throw ConfigError("search.direction must be minimize or maximize");

    SearchOutcome out;
    ordered_json j;
    j["version"] = kVersion;
    j["config_hash"] = hex64(config_hash(cfg));
    j["seed"] = cfg.seed;
    try {
        const auto dir = cfg.search.direction == "minimize" ? extremal::SearchDirection::minimize
                                                            : extremal::SearchDirection::maximize;
        const extremal::SearchResult res =
            extremal::optimize(cfg.search.id, fam, dir, cfg.search.budget, cfg.seed, prm, options_from(cfg));
        ordered_json r;
        r["inequality"] = res.inequality_id;
        r["family"] = res.family_id;
        r["params"] = params_to_json(prm);
        r["best_params"] = res.best_params;
        r["best_ratio"] = res.best_ratio;
        r["evaluations"] = res.evaluations;
        r["converged"] = res.converged;
        r["seed"] = res.seed;
        r["history"] = res.history;
        j["search"] = std::move(r);
        if (!def.has_explicit_constant) j["empirical_constant_lower_bound"] = res.best_ratio;
        out.exit_code = 0;
    } catch (const extremal::CounterexampleFound& c) {
        j["counterexample"] = record_to_json(c.record);
        out.exit_code = 1;
    }
    out.report_json = j.dump(2) + "\n";
    return out;
}

}  // namespace hslab::run
