// Uniform (omega = alpha = 0) states of the linearly coupled system at fixed
// total density N = phi1^2 + phi2^2, with Hamiltonian density
//
//   H = (phi1^4 + phi2^4)/2 + g phi1^2 phi2^2 + A phi1 phi2.

#ifndef BICO_UNIFORM_HPP
#define BICO_UNIFORM_HPP

#include <cstddef>
#include <string>
#include <variant>

namespace bico {

enum class UniformLabel { Symmetric, Asymmetric };

inline const char* to_string(UniformLabel l) {
    return l == UniformLabel::Symmetric ? "symmetric" : "asymmetric";
}

struct UniformState {
    double phi1 = 0;
    double phi2 = 0;
    double mu = 0;
    double h_density = 0;
    UniformLabel label = UniformLabel::Symmetric;
    /// Set when symmetric and asymmetric families are not distinguished (g = 1).
    bool tie = false;
};

enum class AsymmetricAbsence {
    /// |g - 1| <= |A| / N: the square root in the asymmetric amplitudes is imaginary.
    ExistenceFails,
    /// g = 1, A = 0: the asymmetric state merges into the flat family of all mixtures.
    DegenerateDecoupled,
};

const char* to_string(AsymmetricAbsence r);

double uniform_h_density(double phi1, double phi2, double g, double A);

UniformState uniform_symmetric(double density, double g, double A);

std::variant<UniformState, AsymmetricAbsence> uniform_asymmetric(double density, double g, double A);

/// Lower-H of the two candidate states; g = 1 returns Symmetric with the tie flag.
UniformState uniform_ground_state(double density, double g, double A);

struct BruteForceResult {
    UniformState state;
    /// Minimizer angle theta in phi1 = sqrt(N) cos(theta), phi2 = sqrt(N) sin(theta).
    double theta = 0;
    /// True when H is constant along the whole circle (g = 1, A = 0).
    bool flat = false;
};

/// Independent oracle: scans the circle phi1^2 + phi2^2 = N, then refines the
/// best bracket by golden-section search. The label is Asymmetric when the
/// minimizer's imbalance |phi1^2 - phi2^2| / N exceeds `imbalance_tol`.
BruteForceResult uniform_brute_force(double density, double g, double A, std::size_t resolution,
                                     double imbalance_tol = 1e-3);

}  // namespace bico

#endif  // BICO_UNIFORM_HPP
