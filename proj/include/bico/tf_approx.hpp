// Strongly asymmetric approximation around a Thomas-Fermi phi1: phi2 to first
// order in A and phi1 with its second-order correction.

#ifndef BICO_TF_APPROX_HPP
#define BICO_TF_APPROX_HPP

#include "bico/model.hpp"

#include <stdexcept>
#include <vector>

namespace bico {

/// mu + A^2 / (4 alpha^2); absorbs the secular term of the second-order expansion.
double effective_mu(double mu, double A, double alpha);

struct TFApprox {
    double mu_eff = 0;
    /// sqrt(2 mu_eff) / omega; infinite for an untrapped system.
    double support_radius = 0;
    FieldPair<double> fields;
};

/// Thrown when the phi2 denominator (g-1)(mu_eff - V) + alpha^2/2 vanishes
/// inside the support. `locations` lists the singular x values; it is empty
/// when the denominator is zero everywhere (omega = 0).
class SingularApproximation : public std::runtime_error {
public:
    SingularApproximation(std::vector<double> locations, const std::string& what)
        : std::runtime_error(what), locations_(std::move(locations)) {}
    const std::vector<double>& locations() const { return locations_; }

private:
    std::vector<double> locations_;
};

TFApprox tf_pair(const SystemParams<double>& params, const CouplingProfile<double>& profile,
                 double mu, const Grid1D<double>& grid);

/// Second-order term multiplying the TF envelope in phi1, evaluated at x
/// (already carrying the parity-dependent sign). Zero outside the support.
double tf_phi1_correction(const SystemParams<double>& params,
                          const CouplingProfile<double>& profile, double mu, double x);

}  // namespace bico

#endif  // BICO_TF_APPROX_HPP
