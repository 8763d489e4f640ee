#include "bico/uniform.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace bico {

namespace {

double sgn(double v) { return (v > 0) - (v < 0); }

void require_density(double density) {
    if (!(density > 0)) throw std::invalid_argument("uniform density must be positive");
}

// Shared cos/sin tables so repeated oracle calls at one resolution stay cheap.
struct CircleTable {
    std::vector<double> c, s;
};

const CircleTable& circle_table(std::size_t resolution) {
    static std::mutex mutex;
    static std::unordered_map<std::size_t, CircleTable> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(resolution);
    if (it != cache.end()) return it->second;
    CircleTable t;
    t.c.resize(resolution);
    t.s.resize(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        const double theta = 2.0 * std::numbers::pi * double(k) / double(resolution);
        t.c[k] = std::cos(theta);
        t.s[k] = std::sin(theta);
    }
    return cache.emplace(resolution, std::move(t)).first->second;
}

}  // namespace

const char* to_string(AsymmetricAbsence r) {
    switch (r) {
        case AsymmetricAbsence::ExistenceFails: return "existence_condition_fails";
        case AsymmetricAbsence::DegenerateDecoupled: return "degenerate_decoupled";
    }
    return "unknown";
}

double uniform_h_density(double phi1, double phi2, double g, double A) {
    const double a = phi1 * phi1;
    const double b = phi2 * phi2;
    return 0.5 * (a * a + b * b) + g * a * b + A * phi1 * phi2;
}

UniformState uniform_symmetric(double density, double g, double A) {
    require_density(density);
    UniformState s;
    const double amp = std::sqrt(density / 2);
    // A = 0 leaves the relative sign free; take the positive product.
    s.phi1 = amp;
    s.phi2 = A > 0 ? -amp : amp;
    s.mu = (1 + g) * density / 2 - std::abs(A) / 2;
    s.h_density = (g + 1) * density * density / 4 - density * std::abs(A) / 2;
    s.label = UniformLabel::Symmetric;
    return s;
}

std::variant<UniformState, AsymmetricAbsence> uniform_asymmetric(double density, double g,
                                                                 double A) {
    require_density(density);
    const double gm1 = g - 1;
    if (gm1 == 0)
        return A == 0 ? AsymmetricAbsence::DegenerateDecoupled : AsymmetricAbsence::ExistenceFails;
    if (!(std::abs(gm1) > std::abs(A) / density)) return AsymmetricAbsence::ExistenceFails;

    const double root = std::sqrt(density * density - (A / gm1) * (A / gm1));
    UniformState s;
    s.phi1 = std::sqrt(0.5 * (density + root));
    s.phi2 = std::sqrt(std::max(0.0, 0.5 * (density - root)));
    if (sgn(gm1 * A) > 0) s.phi2 = -s.phi2;
    s.mu = density;
    s.h_density = density * density / 2 - A * A / (4 * gm1);
    s.label = UniformLabel::Asymmetric;
    return s;
}

UniformState uniform_ground_state(double density, double g, double A) {
    UniformState sym = uniform_symmetric(density, g, A);
    if (g == 1) {
        sym.tie = true;
        return sym;
    }
    const auto asym = uniform_asymmetric(density, g, A);
    if (const auto* s = std::get_if<UniformState>(&asym); s && s->h_density < sym.h_density)
        return *s;
    return sym;
}

BruteForceResult uniform_brute_force(double density, double g, double A, std::size_t resolution,
                                     double imbalance_tol) {
    require_density(density);
    if (resolution < 1000) throw std::invalid_argument("oracle resolution must be at least 1000");

    const double r = std::sqrt(density);
    const auto h_at = [&](double c, double s) { return uniform_h_density(r * c, r * s, g, A); };

    const CircleTable& table = circle_table(resolution);
    std::size_t best = 0;
    double best_h = h_at(table.c[0], table.s[0]);
    double worst_h = best_h;
    for (std::size_t k = 1; k < resolution; ++k) {
        const double h = h_at(table.c[k], table.s[k]);
        if (h < best_h) {
            best_h = h;
            best = k;
        }
        worst_h = std::max(worst_h, h);
    }

    // Golden-section refinement inside the neighbouring scan cells.
    const double step = 2.0 * std::numbers::pi / double(resolution);
    double lo = (double(best) - 1) * step;
    double hi = (double(best) + 1) * step;
    const auto h_theta = [&](double t) { return h_at(std::cos(t), std::sin(t)); };
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = h_theta(x1), f2 = h_theta(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = h_theta(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = h_theta(x2);
        }
    }
    double theta = 0.5 * (lo + hi);
    double h = h_theta(theta);
    if (best_h < h) {
        theta = double(best) * step;
        h = best_h;
    }

    BruteForceResult out;
    out.theta = theta;
    out.flat = (worst_h - best_h) <= 1e-14 * std::max(1.0, std::abs(best_h));
    out.state.phi1 = r * std::cos(theta);
    out.state.phi2 = r * std::sin(theta);
    out.state.h_density = h;
    const double imbalance =
        std::abs(out.state.phi1 * out.state.phi1 - out.state.phi2 * out.state.phi2) / density;
    out.state.label = (!out.flat && imbalance > imbalance_tol) ? UniformLabel::Asymmetric
                                                                : UniformLabel::Symmetric;
    // Stationarity fixes mu from the Lagrange condition on the circle.
    const double p1 = out.state.phi1, p2 = out.state.phi2;
    out.state.mu = (p1 * p1 * p1 * p1 + p2 * p2 * p2 * p2 + 2 * g * p1 * p1 * p2 * p2 +
                    A * p1 * p2) /
                   density;
    return out;
}

}  // namespace bico
