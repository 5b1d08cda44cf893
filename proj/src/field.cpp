#include "hslab/field.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hslab {

ScalarField make_scalar_field(const LogRadialGrid& grid, const SphericalQuadrature& sphere) {
    ScalarField f;
    f.grid = grid;
    f.sphere = sphere;
    f.values.assign(static_cast<std::size_t>(grid.count) * static_cast<std::size_t>(sphere.node_count()), cd{0.0, 0.0});
    return f;
}

LogField make_log_field(const LogRadialGrid& grid, const SphericalQuadrature& sphere) {
    LogField g;
    g.grid = grid;
    g.sphere = sphere;
    g.values.assign(static_cast<std::size_t>(grid.count) * static_cast<std::size_t>(sphere.node_count()), cd{0.0, 0.0});
    return g;
}

namespace {
template <class F>
void check_finite(const F& f, const char* where) {
    for (const cd& v : f.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error(std::string(where) + ": non-finite sample");
    }
}
}  // namespace

void require_finite(const ScalarField& f, const char* where) { check_finite(f, where); }
void require_finite(const LogField& g, const char* where) { check_finite(g, where); }

LogField phi_forward(const ScalarField& f) {
    require_finite(f, "phi_forward");
    LogField g;
    g.grid = f.grid;
    g.sphere = f.sphere;
    g.values.resize(f.values.size());
    const int nodes = f.node_count();
    const double half_n = 0.5 * static_cast<double>(f.dimension());
    for (int i = 0; i < f.grid.count; ++i) {
        const double scale = std::exp(half_n * f.grid.s(i));
        for (int j = 0; j < nodes; ++j) g.at(i, j) = scale * f.at(i, j);
    }
    return g;
}

ScalarField phi_inverse(const LogField& g) {
    require_finite(g, "phi_inverse");
    ScalarField f;
    f.grid = g.grid;
    f.sphere = g.sphere;
    f.values.resize(g.values.size());
    const int nodes = g.node_count();
    const double half_n = 0.5 * static_cast<double>(g.dimension());
    for (int i = 0; i < g.grid.count; ++i) {
        // divide by the forward map's factor so the roundtrip cancels
        const double scale = std::exp(half_n * g.grid.s(i));
        for (int j = 0; j < nodes; ++j) f.at(i, j) = g.at(i, j) / scale;
    }
    return f;
}

RadialProfile spherical_mean(const LogField& g, bool caller_asserts_radial) {
    if (g.sphere.radial_only && !caller_asserts_radial)
        throw std::invalid_argument("spherical_mean: marker quadrature needs the caller to assert radial data");
    RadialProfile p;
    p.grid = g.grid;
    p.values.assign(static_cast<std::size_t>(g.grid.count), cd{0.0, 0.0});
    const int nodes = g.node_count();
    const double inv_area = 1.0 / g.sphere.total_weight();
    for (int i = 0; i < g.grid.count; ++i) {
        cd acc{0.0, 0.0};
        for (int j = 0; j < nodes; ++j) acc += g.sphere.weights[static_cast<std::size_t>(j)] * g.at(i, j);
        p.values[static_cast<std::size_t>(i)] = inv_area * acc;
    }
    return p;
}

TailReport tail_report(const ScalarField& f, double p, double r_power, double margin) {
    TailReport rep;
    const double span = f.grid.s_max - f.grid.s_min;
    rep.window_lo = f.grid.s_min + margin * span;
    rep.window_hi = f.grid.s_max - margin * span;
    const int nodes = f.node_count();
    for (int i = 0; i < f.grid.count; ++i) {
        const double s = f.grid.s(i);
        const double ws = (r_power + 1.0) * s;  // r^{r_power} dr = e^{(r_power+1)s} ds
        double mass = 0.0;
        for (int j = 0; j < nodes; ++j) {
            const double a = std::abs(f.at(i, j));
            if (a <= 0.0) continue;
            // exponent-level product: the weight alone can overflow exactly
            // where the samples underflow
            mass += f.sphere.weights[static_cast<std::size_t>(j)] * std::exp(p * std::log(a) + ws);
        }
        mass *= f.grid.spacing;
        rep.total_mass += mass;
        if (s < rep.window_lo || s > rep.window_hi) rep.tail_mass += mass;
    }
    rep.relative = rep.tail_mass / std::max(rep.total_mass, 1e-300);
    return rep;
}

TailReport tail_report(const ScalarField& f) {
    return tail_report(f, 2.0, static_cast<double>(f.dimension()) - 1.0, 0.1);
}

TailReport tail_report(const RadialProfile& g, double margin) {
    TailReport rep;
    const double span = g.grid.s_max - g.grid.s_min;
    rep.window_lo = g.grid.s_min + margin * span;
    rep.window_hi = g.grid.s_max - margin * span;
    for (int i = 0; i < g.grid.count; ++i) {
        const double s = g.grid.s(i);
        const double mass = std::norm(g.values[static_cast<std::size_t>(i)]) * g.grid.spacing;
        rep.total_mass += mass;
        if (s < rep.window_lo || s > rep.window_hi) rep.tail_mass += mass;
    }
    rep.relative = rep.tail_mass / std::max(rep.total_mass, 1e-300);
    return rep;
}

namespace {
void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}
template <class F>
std::string cylinder_csv(const F& f) {
    std::string out = "s,omega_index,re,im\n";
    const int nodes = f.node_count();
    for (int i = 0; i < f.grid.count; ++i) {
        for (int j = 0; j < nodes; ++j) {
            append_num(out, f.grid.s(i));
            out += ',';
            out += std::to_string(j);
            out += ',';
            append_num(out, f.at(i, j).real());
            out += ',';
            append_num(out, f.at(i, j).imag());
            out += '\n';
        }
    }
    return out;
}
}  // namespace

std::string field_to_csv(const ScalarField& f) { return cylinder_csv(f); }
std::string field_to_csv(const LogField& g) { return cylinder_csv(g); }

std::string profile_to_csv(const RadialProfile& p) {
    std::string out = "s,re,im\n";
    for (int i = 0; i < p.grid.count; ++i) {
        append_num(out, p.grid.s(i));
        out += ',';
        append_num(out, p.values[static_cast<std::size_t>(i)].real());
        out += ',';
        append_num(out, p.values[static_cast<std::size_t>(i)].imag());
        out += '\n';
    }
    return out;
}

RadialProfile profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("profile_from_csv: empty input");
    std::vector<double> s;
    std::vector<cd> v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double a = 0, b = 0, c = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
            throw std::invalid_argument("profile_from_csv: bad row: " + line);
        s.push_back(a);
        v.emplace_back(b, c);
    }
    if (s.size() < 16) throw std::invalid_argument("profile_from_csv: need at least 16 samples");
    RadialProfile p;
    p.grid = LogRadialGrid::make(s.front(), s.back(), static_cast<int>(s.size()));
    p.values = std::move(v);
    return p;
}

}  // namespace hslab
