// Core model of the linearly coupled two-component condensate on a 1D grid.
//
// Stationary equations (n = 1, 2):
//
//   mu phi_n = [-1/2 d^2/dx^2 + omega^2 x^2 / 2 + phi_n^2 + g phi_m^2] phi_n
//              + 1/2 Omega(x) phi_m,                         m = 3 - n
//
// with Omega(x) = A sin(alpha x) (odd) or A cos(alpha x) (even). Everything
// here is a pure function of immutable value types; templated on the scalar
// so the same discretization can be evaluated in extended precision.

#ifndef BICO_MODEL_HPP
#define BICO_MODEL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace bico {

template <typename Scalar>
using Field = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Uniform grid on [-x_max, +x_max] including both endpoints.
template <typename Scalar = double>
class Grid1D {
public:
    Grid1D(Scalar x_max, Eigen::Index n_points) : x_max_(x_max), nodes_(n_points) {
        if (!(x_max > Scalar(0)))
            throw std::invalid_argument("grid half-width must be positive, got " +
                                        std::to_string(static_cast<double>(x_max)));
        if (n_points < kMinPoints)
            throw std::invalid_argument("grid needs at least " + std::to_string(kMinPoints) +
                                        " points, got " + std::to_string(n_points));
        spacing_ = Scalar(2) * x_max / Scalar(n_points - 1);
        // Fill from both ends so the grid is exactly symmetric and hits +-x_max.
        for (Eigen::Index i = 0; i < n_points; ++i) {
            const Eigen::Index j = n_points - 1 - i;
            nodes_[i] = (i <= j) ? -x_max + Scalar(i) * spacing_ : x_max - Scalar(j) * spacing_;
        }
        nodes_[0] = -x_max;
        nodes_[n_points - 1] = x_max;
    }

    static constexpr Eigen::Index kMinPoints = 16;

    Scalar x_max() const { return x_max_; }
    Eigen::Index size() const { return nodes_.size(); }
    Scalar spacing() const { return spacing_; }
    const Field<Scalar>& nodes() const { return nodes_; }
    Scalar operator[](Eigen::Index i) const { return nodes_[i]; }

    /// Trapezoidal quadrature weights (spacing included).
    Field<Scalar> weights() const {
        Field<Scalar> w = Field<Scalar>::Constant(size(), spacing_);
        w[0] *= Scalar(0.5);
        w[size() - 1] *= Scalar(0.5);
        return w;
    }

    friend bool operator==(const Grid1D& a, const Grid1D& b) {
        return a.x_max_ == b.x_max_ && a.size() == b.size();
    }

private:
    Scalar x_max_;
    Scalar spacing_{};
    Field<Scalar> nodes_;
};

template <typename Scalar>
Grid1D<Scalar> make_grid(Scalar x_max, Eigen::Index n_points) {
    return Grid1D<Scalar>(x_max, n_points);
}

inline Grid1D<double> make_grid(double x_max, Eigen::Index n_points) {
    return Grid1D<double>(x_max, n_points);
}

template <typename Scalar = double>
struct SystemParams {
    Scalar g = Scalar(0);
    Scalar omega = Scalar(0.05);
    Scalar total_norm = Scalar(2.41);

    void validate() const {
        if (!(omega >= Scalar(0)))
            throw std::invalid_argument("trap frequency must be non-negative");
        if (!(total_norm > Scalar(0)))
            throw std::invalid_argument("total norm must be positive");
    }
};

enum class Parity { Odd, Even };

inline const char* to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

inline Parity parse_parity(const std::string& s) {
    if (s == "odd" || s == "sin") return Parity::Odd;
    if (s == "even" || s == "cos") return Parity::Even;
    throw std::invalid_argument("unknown parity '" + s + "' (expected odd|even)");
}

/// Omega(x) = A {sin, cos}(alpha x). A negative amplitude is stored as |A|
/// plus a half-period shift, i.e. an overall sign inversion of the profile.
template <typename Scalar = double>
class CouplingProfile {
public:
    CouplingProfile() = default;
    CouplingProfile(Scalar amplitude, Scalar wavenumber, Parity parity)
        : amplitude_(std::abs(amplitude)), wavenumber_(wavenumber), parity_(parity),
          shifted_(amplitude < Scalar(0)) {
        if (!(wavenumber >= Scalar(0)))
            throw std::invalid_argument("modulation wavenumber must be non-negative");
        if (!std::isfinite(static_cast<double>(amplitude)))
            throw std::invalid_argument("modulation amplitude must be finite");
    }

    Scalar amplitude() const { return amplitude_; }
    Scalar wavenumber() const { return wavenumber_; }
    Parity parity() const { return parity_; }
    bool half_period_shifted() const { return shifted_; }
    /// Signed amplitude as originally supplied.
    Scalar signed_amplitude() const { return shifted_ ? -amplitude_ : amplitude_; }

    Scalar operator()(Scalar x) const {
        using std::cos;
        using std::sin;
        const Scalar shape = parity_ == Parity::Odd ? sin(wavenumber_ * x) : cos(wavenumber_ * x);
        return signed_amplitude() * shape;
    }

    Field<Scalar> sample(const Grid1D<Scalar>& grid) const {
        return grid.nodes().unaryExpr([this](Scalar x) { return (*this)(x); });
    }

private:
    Scalar amplitude_ = Scalar(0);
    Scalar wavenumber_ = Scalar(0);
    Parity parity_ = Parity::Odd;
    bool shifted_ = false;
};

template <typename Scalar>
Scalar coupling_at(const CouplingProfile<Scalar>& profile, Scalar x) {
    return profile(x);
}

template <typename Scalar>
Parity parity_of(const CouplingProfile<Scalar>& profile) {
    return profile.parity();
}

template <typename Scalar>
Scalar trap_at(const SystemParams<Scalar>& params, Scalar x) {
    return params.omega * params.omega * x * x / Scalar(2);
}

template <typename Scalar>
Field<Scalar> sample_trap(const SystemParams<Scalar>& params, const Grid1D<Scalar>& grid) {
    const Scalar k = params.omega * params.omega / Scalar(2);
    return (k * grid.nodes().array().square()).matrix();
}

/// Real stationary wave functions of both components sampled on a grid.
template <typename Scalar = double>
struct FieldPair {
    Grid1D<Scalar> grid;
    Field<Scalar> phi1;
    Field<Scalar> phi2;

    FieldPair(Grid1D<Scalar> g, Field<Scalar> p1, Field<Scalar> p2)
        : grid(std::move(g)), phi1(std::move(p1)), phi2(std::move(p2)) {
        check();
    }

    explicit FieldPair(Grid1D<Scalar> g)
        : grid(std::move(g)), phi1(Field<Scalar>::Zero(grid.size())),
          phi2(Field<Scalar>::Zero(grid.size())) {}

    void check() const {
        if (phi1.size() != grid.size() || phi2.size() != grid.size())
            throw std::invalid_argument("field length " + std::to_string(phi1.size()) + "/" +
                                        std::to_string(phi2.size()) +
                                        " does not match grid size " +
                                        std::to_string(grid.size()));
    }

    bool all_finite() const { return phi1.allFinite() && phi2.allFinite(); }

    Scalar norm() const {
        const Field<Scalar> w = grid.weights();
        return w.dot(phi1.cwiseAbs2() + phi2.cwiseAbs2());
    }
};

/// Energy split into its physical contributions.
template <typename Scalar = double>
struct EnergyTerms {
    Scalar kinetic{};
    Scalar trap{};
    Scalar self_interaction{};
    Scalar cross_interaction{};
    Scalar coupling{};

    Scalar total() const { return kinetic + trap + self_interaction + cross_interaction + coupling; }
};

namespace detail {

// (1/2) int (phi')^2 dx, with the derivative taken at cell midpoints. Its
// variational derivative is exactly the three-point Laplacian.
template <typename Scalar>
Scalar gradient_energy(const Field<Scalar>& phi, Scalar h) {
    const Eigen::Index n = phi.size();
    const auto diff = phi.tail(n - 1) - phi.head(n - 1);
    return diff.squaredNorm() / (Scalar(2) * h);
}

template <typename Scalar>
Field<Scalar> laplacian(const Field<Scalar>& phi, Scalar h) {
    const Eigen::Index n = phi.size();
    Field<Scalar> out = Field<Scalar>::Zero(n);
    out.segment(1, n - 2) =
        (phi.tail(n - 2) - Scalar(2) * phi.segment(1, n - 2) + phi.head(n - 2)) / (h * h);
    return out;
}

}  // namespace detail

template <typename Scalar>
EnergyTerms<Scalar> energy_terms(const FieldPair<Scalar>& f, const SystemParams<Scalar>& params,
                                 const CouplingProfile<Scalar>& profile) {
    f.check();
    const Scalar h = f.grid.spacing();
    const Field<Scalar> w = f.grid.weights();
    const Field<Scalar> v = sample_trap(params, f.grid);
    const Field<Scalar> om = profile.sample(f.grid);
    const auto a1 = f.phi1.array().square();
    const auto a2 = f.phi2.array().square();

    EnergyTerms<Scalar> e;
    e.kinetic = detail::gradient_energy(f.phi1, h) + detail::gradient_energy(f.phi2, h);
    e.trap = w.dot((v.array() * (a1 + a2)).matrix());
    e.self_interaction = w.dot((Scalar(0.5) * (a1.square() + a2.square())).matrix());
    e.cross_interaction = w.dot((params.g * a1 * a2).matrix());
    e.coupling = w.dot((om.array() * f.phi1.array() * f.phi2.array()).matrix());
    return e;
}

/// E = int [ (phi1'^2 + phi2'^2)/2 + V (phi1^2 + phi2^2) + (phi1^4 + phi2^4)/2
///           + g phi1^2 phi2^2 + Omega phi1 phi2 ] dx
template <typename Scalar>
Scalar energy(const FieldPair<Scalar>& f, const SystemParams<Scalar>& params,
              const CouplingProfile<Scalar>& profile) {
    return energy_terms(f, params, profile).total();
}

/// mu = N^-1 int phi_n (stationary operator) phi_n, summed over components.
template <typename Scalar>
Scalar chemical_potential(const FieldPair<Scalar>& f, const SystemParams<Scalar>& params,
                          const CouplingProfile<Scalar>& profile) {
    const Scalar n = f.norm();
    if (!(n > Scalar(0)))
        throw std::invalid_argument("chemical potential undefined for zero-norm fields");
    const auto e = energy_terms(f, params, profile);
    // Quartic terms enter twice as strongly as in the energy.
    return (e.kinetic + e.trap + Scalar(2) * e.self_interaction +
            Scalar(2) * e.cross_interaction + e.coupling) /
           n;
}

/// Pointwise residual of both stationary equations (zero at the end nodes).
template <typename Scalar>
std::pair<Field<Scalar>, Field<Scalar>> residual_fields(const FieldPair<Scalar>& f, Scalar mu,
                                                        const SystemParams<Scalar>& params,
                                                        const CouplingProfile<Scalar>& profile) {
    f.check();
    const Scalar h = f.grid.spacing();
    const Eigen::Index n = f.grid.size();
    const Field<Scalar> v = sample_trap(params, f.grid);
    const Field<Scalar> om = profile.sample(f.grid);
    const auto a1 = f.phi1.array().square();
    const auto a2 = f.phi2.array().square();

    Field<Scalar> r1 = (-Scalar(0.5) * detail::laplacian(f.phi1, h).array() +
                        (v.array() + a1 + params.g * a2 - mu) * f.phi1.array() +
                        Scalar(0.5) * om.array() * f.phi2.array())
                           .matrix();
    Field<Scalar> r2 = (-Scalar(0.5) * detail::laplacian(f.phi2, h).array() +
                        (v.array() + a2 + params.g * a1 - mu) * f.phi2.array() +
                        Scalar(0.5) * om.array() * f.phi1.array())
                           .matrix();
    r1[0] = r1[n - 1] = Scalar(0);
    r2[0] = r2[n - 1] = Scalar(0);
    return {std::move(r1), std::move(r2)};
}

/// Max-norm over interior nodes and both components of the stationary residual.
template <typename Scalar>
Scalar stationary_residual(const FieldPair<Scalar>& f, Scalar mu,
                           const SystemParams<Scalar>& params,
                           const CouplingProfile<Scalar>& profile) {
    const auto [r1, r2] = residual_fields(f, mu, params, profile);
    return std::max(r1.template lpNorm<Eigen::Infinity>(), r2.template lpNorm<Eigen::Infinity>());
}

/// Thomas-Fermi chemical potential of a single trapped component holding the given norm.
template <typename Scalar>
Scalar thomas_fermi_mu(Scalar total_norm, Scalar omega) {
    using std::cbrt;
    using std::sqrt;
    const Scalar x = Scalar(3) * total_norm * omega / (Scalar(4) * sqrt(Scalar(2)));
    return cbrt(x * x);
}

template <typename Scalar>
Field<Scalar> thomas_fermi_profile(const Grid1D<Scalar>& grid, Scalar mu, Scalar omega) {
    const Scalar k = omega * omega / Scalar(2);
    return grid.nodes().unaryExpr([&](Scalar x) {
        using std::sqrt;
        const Scalar d = mu - k * x * x;
        return d > Scalar(0) ? sqrt(d) : Scalar(0);
    });
}

}  // namespace bico

#endif  // BICO_MODEL_HPP
