#include "bico/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace bico {

const char* to_string(SeedKind k) {
    switch (k) {
        case SeedKind::TF: return "tf";
        case SeedKind::Random: return "random";
        case SeedKind::Constant: return "constant";
    }
    return "unknown";
}

SeedKind parse_seed_kind(const std::string& s) {
    if (s == "tf") return SeedKind::TF;
    if (s == "random") return SeedKind::Random;
    if (s == "constant") return SeedKind::Constant;
    throw std::invalid_argument("unknown seed kind '" + s + "' (expected tf|random|constant)");
}

const char* to_string(Symmetry s) {
    return s == Symmetry::ParitySector ? "parity" : "free";
}

Symmetry parse_symmetry(const std::string& s) {
    if (s == "parity") return Symmetry::ParitySector;
    if (s == "free") return Symmetry::Free;
    throw std::invalid_argument("unknown symmetry '" + s + "' (expected parity|free)");
}

void project_parity_sector(FieldPair<double>& fields, Parity parity) {
    const Field<double> r1 = fields.phi1.reverse();
    const Field<double> r2 = fields.phi2.reverse();
    fields.phi1 = 0.5 * (fields.phi1 + r1);
    fields.phi2 = parity == Parity::Odd ? Field<double>(0.5 * (fields.phi2 - r2))
                                        : Field<double>(0.5 * (fields.phi2 + r2));
}

void SolverConfig::validate() const {
    if (!(dtau > 0)) throw std::invalid_argument("dtau must be positive");
    if (!(tau_max > 0)) throw std::invalid_argument("tau_max must be positive");
    if (!(energy_tol > 0) || !(residual_tol > 0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (!(check_interval > 0)) throw std::invalid_argument("check interval must be positive");
}

ImaginaryTimeStepper::ImaginaryTimeStepper(const SystemParams<double>& params,
                                           const CouplingProfile<double>& profile,
                                           const Grid1D<double>& grid, double dtau,
                                           Boundary boundary, Symmetry symmetry)
    : params_(params), grid_(grid), dtau_(dtau), boundary_(boundary), symmetry_(symmetry),
      parity_(profile.parity()),
      trap_(sample_trap(params, grid)), coupling_(profile.sample(grid)),
      weights_(grid.weights()) {
    params.validate();
    if (!(dtau > 0)) throw std::invalid_argument("dtau must be positive");
    const auto n = static_cast<std::size_t>(grid.size());
    g11_.resize(n);
    g12_.resize(n);
    g22_.resize(n);
    y1_.resize(n);
    y2_.resize(n);
}

void ImaginaryTimeStepper::step(FieldPair<double>& fields) {
    if (!(fields.grid == grid_))
        throw std::invalid_argument("fields live on a different grid than the stepper");
    if (boundary_ == Boundary::Dirichlet)
        solve_dirichlet(fields);
    else
        solve_periodic(fields);
    if (!fields.all_finite())
        throw NumericalInstability("non-finite field values after an imaginary-time step "
                                   "(dtau = " + std::to_string(dtau_) + ")");
    if (symmetry_ == Symmetry::ParitySector) project_parity_sector(fields, parity_);
    renormalize(fields);
}

// Block tridiagonal system over interior nodes with 2x2 diagonal blocks
//   D_i = 1 + dtau [1/h^2 + V + phi_n^2 + g phi_m^2]  (diagonal entries)
//         dtau Omega / 2                               (off-diagonal entries)
// and scalar off-diagonal blocks c = -dtau / (2 h^2).
void ImaginaryTimeStepper::solve_dirichlet(FieldPair<double>& f) {
    const Eigen::Index n = grid_.size();
    const double h = grid_.spacing();
    const double dt = dtau_;
    const double c = -dt / (2 * h * h);
    const double kin = dt / (h * h);
    const double g = params_.g;
    double* p1 = f.phi1.data();
    double* p2 = f.phi2.data();
    const double* v = trap_.data();
    const double* om = coupling_.data();

    double prev_g11 = 0, prev_g12 = 0, prev_g22 = 0, prev_y1 = 0, prev_y2 = 0;
    for (Eigen::Index i = 1; i < n - 1; ++i) {
        const double a1 = p1[i] * p1[i], a2 = p2[i] * p2[i];
        double d11 = 1 + kin + dt * (v[i] + a1 + g * a2);
        double d22 = 1 + kin + dt * (v[i] + a2 + g * a1);
        double d12 = 0.5 * dt * om[i];
        double b1 = p1[i], b2 = p2[i];
        if (i > 1) {
            d11 -= c * c * prev_g11;
            d12 -= c * c * prev_g12;
            d22 -= c * c * prev_g22;
            b1 -= c * (prev_g11 * prev_y1 + prev_g12 * prev_y2);
            b2 -= c * (prev_g12 * prev_y1 + prev_g22 * prev_y2);
        }
        const double det = d11 * d22 - d12 * d12;
        prev_g11 = d22 / det;
        prev_g12 = -d12 / det;
        prev_g22 = d11 / det;
        prev_y1 = b1;
        prev_y2 = b2;
        g11_[i] = prev_g11;
        g12_[i] = prev_g12;
        g22_[i] = prev_g22;
        y1_[i] = b1;
        y2_[i] = b2;
    }
    double x1 = 0, x2 = 0;
    for (Eigen::Index i = n - 2; i >= 1; --i) {
        const double r1 = y1_[i] - c * x1;
        const double r2 = y2_[i] - c * x2;
        x1 = g11_[i] * r1 + g12_[i] * r2;
        x2 = g12_[i] * r1 + g22_[i] * r2;
        p1[i] = x1;
        p2[i] = x2;
    }
    p1[0] = p2[0] = p1[n - 1] = p2[n - 1] = 0;
}

void ImaginaryTimeStepper::solve_periodic(FieldPair<double>& f) {
    const Eigen::Index n = grid_.size();
    const Eigen::Index m = n - 1;  // distinct nodes
    const double h = grid_.spacing();
    const double dt = dtau_;
    const double c = -dt / (2 * h * h);
    const double g = params_.g;

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(8 * m));
    Eigen::VectorXd rhs(2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double a1 = f.phi1[i] * f.phi1[i], a2 = f.phi2[i] * f.phi2[i];
        const Eigen::Index r = 2 * i;
        entries.emplace_back(r, r, 1 + dt / (h * h) + dt * (trap_[i] + a1 + g * a2));
        entries.emplace_back(r + 1, r + 1, 1 + dt / (h * h) + dt * (trap_[i] + a2 + g * a1));
        entries.emplace_back(r, r + 1, 0.5 * dt * coupling_[i]);
        entries.emplace_back(r + 1, r, 0.5 * dt * coupling_[i]);
        const Eigen::Index right = 2 * ((i + 1) % m);
        const Eigen::Index left = 2 * ((i + m - 1) % m);
        for (int k = 0; k < 2; ++k) {
            entries.emplace_back(r + k, right + k, c);
            entries.emplace_back(r + k, left + k, c);
        }
        rhs[r] = f.phi1[i];
        rhs[r + 1] = f.phi2[i];
    }
    Eigen::SparseMatrix<double> mat(2 * m, 2 * m);
    mat.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(mat);
    if (lu.info() != Eigen::Success)
        throw NumericalInstability("periodic imaginary-time system is singular");
    const Eigen::VectorXd x = lu.solve(rhs);
    for (Eigen::Index i = 0; i < m; ++i) {
        f.phi1[i] = x[2 * i];
        f.phi2[i] = x[2 * i + 1];
    }
    f.phi1[m] = f.phi1[0];
    f.phi2[m] = f.phi2[0];
}

void ImaginaryTimeStepper::renormalize(FieldPair<double>& f) const {
    const double norm =
        weights_.dot(f.phi1.cwiseAbs2()) + weights_.dot(f.phi2.cwiseAbs2());
    if (!(norm > 0)) throw NumericalInstability("fields collapsed to zero norm");
    const double s = std::sqrt(params_.total_norm / norm);
    f.phi1 *= s;
    f.phi2 *= s;
}

FieldPair<double> imaginary_time_step(const FieldPair<double>& fields,
                                      const SystemParams<double>& params,
                                      const CouplingProfile<double>& profile, double dtau,
                                      Boundary boundary) {
    ImaginaryTimeStepper stepper(params, profile, fields.grid, dtau, boundary);
    FieldPair<double> out = fields;
    stepper.step(out);
    return out;
}

namespace {

void normalize_to(FieldPair<double>& f, double total_norm) {
    const double n = f.norm();
    if (!(n > 0)) throw std::invalid_argument("seed has zero norm");
    const double s = std::sqrt(total_norm / n);
    f.phi1 *= s;
    f.phi2 *= s;
}

Field<double> seed_envelope(const SystemParams<double>& params, const Grid1D<double>& grid) {
    if (params.omega > 0) {
        const double mu = thomas_fermi_mu(params.total_norm, params.omega);
        Field<double> env = thomas_fermi_profile(grid, mu, params.omega);
        // A TF support wider than the box still has to satisfy phi(+-x_max) = 0.
        env[0] = env[grid.size() - 1] = 0;
        return env;
    }
    Field<double> env = Field<double>::Ones(grid.size());
    env[0] = env[grid.size() - 1] = 0;
    return env;
}

// Smooth random modulation in [-1, 1]: a few low Fourier modes across the box.
Field<double> smooth_noise(const Grid1D<double>& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    const double length = 2 * grid.x_max();
    Field<double> out = Field<double>::Zero(grid.size());
    for (int k = 1; k <= 8; ++k) {
        const double a = amp(rng) / k;
        const double p = phase(rng);
        const double kx = 2 * std::numbers::pi * k / length;
        out += grid.nodes().unaryExpr([&](double x) { return a * std::cos(kx * x + p); });
    }
    const double peak = out.lpNorm<Eigen::Infinity>();
    return peak > 0 ? Field<double>(out / peak) : out;
}

}  // namespace

FieldPair<double> make_seed(SeedKind kind, const SystemParams<double>& params,
                            const Grid1D<double>& grid, std::uint64_t rng_seed) {
    params.validate();
    const Field<double> env = seed_envelope(params, grid);
    FieldPair<double> f(grid);
    switch (kind) {
        case SeedKind::TF:
            f.phi1 = env;
            break;
        case SeedKind::Constant:
            f.phi1 = Field<double>::Ones(grid.size());
            f.phi1[0] = f.phi1[grid.size() - 1] = 0;
            f.phi2 = f.phi1;
            break;
        case SeedKind::Random: {
            std::mt19937_64 rng(rng_seed);
            const Field<double> n1 = smooth_noise(grid, rng);
            const Field<double> n2 = smooth_noise(grid, rng);
            f.phi1 = (env.array() * (1.0 + 0.2 * n1.array())).matrix();
            f.phi2 = (env.array() * 0.3 * n2.array()).matrix();
            break;
        }
    }
    normalize_to(f, params.total_norm);
    return f;
}

void canonicalize(FieldPair<double>& fields) {
    const Field<double> w = fields.grid.weights();
    double s1 = w.dot(fields.phi1);
    const double s2 = w.dot(fields.phi2);
    if (std::abs(s2) > std::abs(s1)) {
        fields.phi1.swap(fields.phi2);
        s1 = s2;
    }
    if (s1 < 0) {
        fields.phi1 = -fields.phi1;
        fields.phi2 = -fields.phi2;
    }
}

GroundStateResult relax(FieldPair<double> initial, const SystemParams<double>& params,
                        const CouplingProfile<double>& profile, const SolverConfig& config) {
    config.validate();
    params.validate();
    ImaginaryTimeStepper stepper(params, profile, initial.grid, config.dtau, config.boundary,
                                 config.symmetry);

    GroundStateResult out{std::move(initial), 0, 0, 0, 0, 0, {}, false};
    FieldPair<double>& f = out.fields;
    if (config.symmetry == Symmetry::ParitySector) project_parity_sector(f, profile.parity());
    if (!f.all_finite()) throw NumericalInstability("initial fields contain non-finite values");
    const double n0 = f.norm();
    if (!(n0 > 0)) throw std::invalid_argument("initial fields have zero norm");
    f.phi1 *= std::sqrt(params.total_norm / n0);
    f.phi2 *= std::sqrt(params.total_norm / n0);

    const long check_every =
        std::max(1L, std::lround(config.check_interval / config.dtau));
    const long max_steps = static_cast<long>(std::ceil(config.tau_max / config.dtau - 1e-9));

    double e_prev = energy(f, params, profile);
    out.energy_trace.push_back({0.0, e_prev});
    double tau_prev = 0;
    long step = 0;
    while (step < max_steps) {
        stepper.step(f);
        ++step;
        const double tau = double(step) * config.dtau;
        if (step % check_every != 0 && step != max_steps) continue;

        const double e = energy(f, params, profile);
        out.energy_trace.push_back({tau, e});
        const double scale = std::max(std::abs(e), std::numeric_limits<double>::min());
        const double rate = std::abs(e - e_prev) / (scale * (tau - tau_prev));
        e_prev = e;
        tau_prev = tau;
        if (rate < config.energy_tol) {
            const double mu = chemical_potential(f, params, profile);
            if (stationary_residual(f, mu, params, profile) < config.residual_tol) {
                out.converged = true;
                break;
            }
        }
    }

    canonicalize(f);
    out.iterations = step;
    out.tau = double(step) * config.dtau;
    out.energy = energy(f, params, profile);
    out.mu = chemical_potential(f, params, profile);
    out.residual = stationary_residual(f, out.mu, params, profile);
    return out;
}

FieldPair<double> low_node_seed(const SystemParams<double>& params, const Grid1D<double>& grid,
                                Parity parity, double sign) {
    FieldPair<double> f = make_seed(SeedKind::TF, params, grid);
    const double xi = 1 / std::sqrt(thomas_fermi_mu(params.total_norm, params.omega));
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double shape = parity == Parity::Odd ? std::tanh(grid[i] / xi) : 1.0;
        f.phi2[i] = sign * 0.5 * f.phi1[i] * shape;
    }
    const double s = std::sqrt(params.total_norm / f.norm());
    f.phi1 *= s;
    f.phi2 *= s;
    return f;
}

GroundStateResult solve_ground_state(const SystemParams<double>& params,
                                     const CouplingProfile<double>& profile,
                                     const Grid1D<double>& grid, const SolverConfig& config) {
    GroundStateResult best =
        relax(make_seed(config.seed_kind, params, grid, config.rng_seed), params, profile, config);
    // Without coupling nothing converts population between the components, so
    // the start's component content is kept: no extra starts.
    if (!config.multistart || profile.amplitude() == 0) return best;
    for (double sign : {1.0, -1.0}) {
        GroundStateResult r =
            relax(low_node_seed(params, grid, profile.parity(), sign), params, profile, config);
        if (r.converged && (!best.converged || r.energy < best.energy)) best = std::move(r);
    }
    return best;
}

}  // namespace bico
