#include "hslab/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hslab {

namespace {
constexpr double kPi = std::numbers::pi;
}

LogRadialGrid LogRadialGrid::make(double s_min, double s_max, int count) {
    if (!(s_min < s_max)) throw std::invalid_argument("LogRadialGrid: s_min must be < s_max");
    if (count < 16) throw std::invalid_argument("LogRadialGrid: count must be >= 16");
    LogRadialGrid g;
    g.s_min = s_min;
    g.s_max = s_max;
    g.count = count;
    g.spacing = (s_max - s_min) / static_cast<double>(count - 1);
    return g;
}

double LogRadialGrid::r(int i) const { return std::exp(s(i)); }

std::vector<double> LogRadialGrid::points() const {
    std::vector<double> p(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) p[static_cast<std::size_t>(i)] = s(i);
    return p;
}

double SphericalQuadrature::total_weight() const {
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum;
}

double SphericalQuadrature::surface_area(int n) {
    if (n < 1) throw std::invalid_argument("surface_area: dimension must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    nodes.assign(static_cast<std::size_t>(m), 0.0);
    weights.assign(static_cast<std::size_t>(m), 0.0);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_m(x) and P'_m(x)
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(m - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(m - 1 - i)] = w;
    }
}

SphericalQuadrature make_radial_marker(int n) {
    if (n < 1) throw std::invalid_argument("make_radial_marker: dimension must be >= 1");
    SphericalQuadrature q;
    q.dimension = n;
    q.radial_only = true;
    q.nodes = {{1.0, 0.0, 0.0}};
    q.weights = {SphericalQuadrature::surface_area(n)};
    return q;
}

SphericalQuadrature make_spherical_quadrature(int n, int order) {
    if (n == 0) throw std::invalid_argument("make_spherical_quadrature: dimension 0");
    if (n < 0) throw std::invalid_argument("make_spherical_quadrature: negative dimension");
    if (order < 1) throw std::invalid_argument("make_spherical_quadrature: order must be >= 1");

    SphericalQuadrature q;
    q.dimension = n;

    if (n == 1) {
        q.nodes = {{-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
        q.weights = {1.0, 1.0};
        return q;
    }
    if (n == 2) {
        const int m = 2 * order + 2;
        q.nodes.reserve(static_cast<std::size_t>(m));
        q.angle.reserve(static_cast<std::size_t>(m));
        const double w = 2.0 * kPi / static_cast<double>(m);
        for (int j = 0; j < m; ++j) {
            const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
            q.nodes.push_back({std::cos(phi), std::sin(phi), 0.0});
            q.weights.push_back(w);
            q.angle.push_back(phi);
        }
        return q;
    }
    if (n == 3) {
        const int lp = order + 1;       // exact for Legendre degree <= 2*lp-1 >= order
        const int la = 2 * order + 2;   // kills e^{i m phi} for 0 < |m| <= order
        std::vector<double> u, wu;
        gauss_legendre(lp, u, wu);
        q.polar_count = lp;
        q.azimuth_count = la;
        q.polar_cos = u;
        q.polar_weight = wu;
        const double wphi = 2.0 * kPi / static_cast<double>(la);
        q.nodes.reserve(static_cast<std::size_t>(lp * la));
        for (int k = 0; k < lp; ++k) {
            const double c = u[static_cast<std::size_t>(k)];
            const double sth = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int m = 0; m < la; ++m) {
                const double phi = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(la);
                if (k == 0) q.azimuth.push_back(phi);
                q.nodes.push_back({sth * std::cos(phi), sth * std::sin(phi), c});
                q.weights.push_back(wu[static_cast<std::size_t>(k)] * wphi);
            }
        }
        return q;
    }
    return make_radial_marker(n);
}

std::string grid_to_json(const LogRadialGrid& grid, int dimension, int order) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"s_min\":" << grid.s_min << ",\"s_max\":" << grid.s_max << ",\"count\":" << grid.count
       << ",\"dimension\":" << dimension << ",\"order\":" << order << "}";
    return os.str();
}

}  // namespace hslab
