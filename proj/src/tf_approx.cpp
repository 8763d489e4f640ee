#include "bico/tf_approx.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bico {

double effective_mu(double mu, double A, double alpha) {
    if (!(alpha > 0))
        throw std::invalid_argument("effective chemical potential needs a positive wavenumber");
    return mu + A * A / (4 * alpha * alpha);
}

namespace {

struct Local {
    double envelope2;  // mu_eff - omega^2 x^2 / 2
    double denom;      // (g - 1) envelope2 + alpha^2 / 2
};

Local local_terms(const SystemParams<double>& params, double alpha, double mu_eff, double x) {
    const double e2 = mu_eff - params.omega * params.omega * x * x / 2;
    return {e2, (params.g - 1) * e2 + alpha * alpha / 2};
}

// Upper row (odd) carries the minus sign in front of A^2.
double phi1_sign(Parity p) { return p == Parity::Odd ? -1.0 : 1.0; }

}  // namespace

double tf_phi1_correction(const SystemParams<double>& params,
                          const CouplingProfile<double>& profile, double mu, double x) {
    const double alpha = profile.wavenumber();
    const double A = profile.signed_amplitude();
    const double mu_eff = effective_mu(mu, A, alpha);
    const Local l = local_terms(params, alpha, mu_eff, x);
    if (!(l.envelope2 > 0)) return 0;
    return phi1_sign(profile.parity()) * (A * A / 16) * std::cos(2 * alpha * x) /
           ((alpha * alpha + l.envelope2) * l.denom);
}

TFApprox tf_pair(const SystemParams<double>& params, const CouplingProfile<double>& profile,
                 double mu, const Grid1D<double>& grid) {
    params.validate();
    const double alpha = profile.wavenumber();
    if (!(alpha > 0)) throw std::invalid_argument("TF approximation needs a positive wavenumber");
    const double A = profile.signed_amplitude();
    const double mu_eff = effective_mu(mu, A, alpha);
    if (!(mu_eff > 0))
        throw std::invalid_argument("effective chemical potential must be positive for a "
                                    "non-empty support");

    const double omega = params.omega;
    const double g = params.g;
    const double support = omega > 0 ? std::sqrt(2 * mu_eff) / omega
                                     : std::numeric_limits<double>::infinity();

    // The denominator is linear in x^2, so its zero is available in closed form.
    if (g != 1) {
        const double center = (g - 1) * mu_eff + alpha * alpha / 2;
        if (omega == 0) {
            if (center == 0)
                throw SingularApproximation({}, "phi2 denominator vanishes identically");
        } else {
            // (g-1)(mu_eff - omega^2 x^2/2) + alpha^2/2 = 0
            const double x2 = 2 * (mu_eff + alpha * alpha / (2 * (g - 1))) / (omega * omega);
            if (x2 >= 0 && x2 < support * support) {
                const double xs = std::sqrt(x2);
                std::ostringstream msg;
                msg << "phi2 denominator vanishes inside the TF support at x = +-" << xs
                    << " (g = " << g << ", alpha = " << alpha << ", mu_eff = " << mu_eff << ")";
                std::vector<double> at = xs == 0 ? std::vector<double>{0.0}
                                                 : std::vector<double>{-xs, xs};
                throw SingularApproximation(std::move(at), msg.str());
            }
        }
    }

    const Eigen::Index n = grid.size();
    Field<double> p1 = Field<double>::Zero(n);
    Field<double> p2 = Field<double>::Zero(n);
    const double s1 = phi1_sign(profile.parity());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = grid[i];
        const Local l = local_terms(params, alpha, mu_eff, x);
        if (!(l.envelope2 > 0)) continue;
        const double env = std::sqrt(l.envelope2);
        const double shape =
            profile.parity() == Parity::Odd ? std::sin(alpha * x) : std::cos(alpha * x);
        p2[i] = -(A / 2) * env / l.denom * shape;
        p1[i] = env * (1 + s1 * (A * A / 16) * std::cos(2 * alpha * x) /
                               ((alpha * alpha + l.envelope2) * l.denom));
    }
    return TFApprox{mu_eff, support, FieldPair<double>(grid, std::move(p1), std::move(p2))};
}

}  // namespace bico
