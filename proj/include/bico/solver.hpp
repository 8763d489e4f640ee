// Norm-projected imaginary-time relaxation towards the ground state.

#ifndef BICO_SOLVER_HPP
#define BICO_SOLVER_HPP

#include "bico/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bico {

enum class SeedKind { TF, Random, Constant };

const char* to_string(SeedKind k);
SeedKind parse_seed_kind(const std::string& s);

enum class Boundary {
    /// phi = 0 at +-x_max.
    Dirichlet,
    /// Node n-1 is identified with node 0 (period 2 x_max).
    Periodic,
};

enum class Symmetry {
    /// Keep phi1 even and phi2 with the parity of Omega(x); the imaginary-time
    /// flow preserves this class, the projection only removes round-off drift.
    ParitySector,
    /// Unconstrained relaxation.
    Free,
};

const char* to_string(Symmetry s);
Symmetry parse_symmetry(const std::string& s);

struct SolverConfig {
    double dtau = 1e-3;
    double tau_max = 500;
    /// Threshold on |dE| / (|E| dtau) between energy checks.
    double energy_tol = 1e-10;
    /// Stationary residual required before a run counts as converged.
    double residual_tol = 1e-6;
    SeedKind seed_kind = SeedKind::TF;
    std::uint64_t rng_seed = 0;
    /// Imaginary time between energy evaluations (and trace samples).
    double check_interval = 0.1;
    Boundary boundary = Boundary::Dirichlet;
    Symmetry symmetry = Symmetry::ParitySector;
    /// Also relax from the two low-node seeds (see low_node_seed) and keep the
    /// lowest-energy converged state. A single relaxation can settle in a
    /// metastable state whose kink count differs from the ground state's.
    /// Ignored for A = 0, where the start's split between components is kept.
    bool multistart = true;

    void validate() const;
};

struct TraceSample {
    double tau;
    double energy;
};

struct GroundStateResult {
    FieldPair<double> fields;
    double mu = 0;
    double energy = 0;
    double residual = 0;
    double tau = 0;
    long iterations = 0;
    std::vector<TraceSample> energy_trace;
    bool converged = false;
};

/// Non-finite values appeared during time stepping.
class NumericalInstability : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Projects phi1 onto even functions and phi2 onto the parity of the profile.
void project_parity_sector(FieldPair<double>& fields, Parity parity);

/// Reusable stepping workspace for one (params, profile, grid) triple.
///
/// One step freezes the cubic terms at the current iterate, solves
///   (1 + dtau H) phi_new = phi
/// with H the full linear operator including the 1/2 Omega coupling, and
/// then rescales both components jointly to the prescribed total norm.
class ImaginaryTimeStepper {
public:
    ImaginaryTimeStepper(const SystemParams<double>& params,
                         const CouplingProfile<double>& profile, const Grid1D<double>& grid,
                         double dtau, Boundary boundary = Boundary::Dirichlet,
                         Symmetry symmetry = Symmetry::Free);

    void step(FieldPair<double>& fields);
    double dtau() const { return dtau_; }

private:
    void solve_dirichlet(FieldPair<double>& f);
    void solve_periodic(FieldPair<double>& f);
    void renormalize(FieldPair<double>& f) const;

    SystemParams<double> params_;
    Grid1D<double> grid_;
    double dtau_;
    Boundary boundary_;
    Symmetry symmetry_;
    Parity parity_;
    Field<double> trap_;
    Field<double> coupling_;
    Field<double> weights_;
    // Block-Thomas workspace: inverse pivots (symmetric 2x2) and the forward sweep.
    std::vector<double> g11_, g12_, g22_, y1_, y2_;
};

FieldPair<double> imaginary_time_step(const FieldPair<double>& fields,
                                      const SystemParams<double>& params,
                                      const CouplingProfile<double>& profile, double dtau,
                                      Boundary boundary = Boundary::Dirichlet);

/// Initial condition normalized to params.total_norm.
FieldPair<double> make_seed(SeedKind kind, const SystemParams<double>& params,
                            const Grid1D<double>& grid, std::uint64_t rng_seed = 0);

/// phi1 = TF envelope, phi2 = sign * phi1 / 2 * shape with shape = 1 for an
/// even profile and tanh(x / xi) (xi the healing length) for an odd one:
/// a start with the fewest nodes allowed by the parity, on either side of the
/// coupling sign. Normalized to params.total_norm.
FieldPair<double> low_node_seed(const SystemParams<double>& params, const Grid1D<double>& grid,
                                Parity parity, double sign);

/// Orders the components so that phi1 carries the larger |int phi dx| and
/// applies the global sign that makes int phi1 dx >= 0.
void canonicalize(FieldPair<double>& fields);

/// Relaxes from the configured seed (plus the low-node seeds when
/// config.multistart is set) and returns the lowest-energy converged state;
/// when no start converges, the result of the configured seed is returned.
GroundStateResult solve_ground_state(const SystemParams<double>& params,
                                     const CouplingProfile<double>& profile,
                                     const Grid1D<double>& grid, const SolverConfig& config);

/// Same relaxation from an explicit initial condition.
GroundStateResult relax(FieldPair<double> initial, const SystemParams<double>& params,
                        const CouplingProfile<double>& profile, const SolverConfig& config);

}  // namespace bico

#endif  // BICO_SOLVER_HPP
