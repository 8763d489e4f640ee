// Kink-count maps over the (A, alpha) plane at fixed g.

#ifndef BICO_SWEEP_HPP
#define BICO_SWEEP_HPP

#include "bico/kinks.hpp"
#include "bico/model.hpp"
#include "bico/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace bico {

/// Normalization of the wavenumber axis.
inline constexpr double kAlpha0 = 0.09248;

struct GridSpec {
    double x_max = 25;
    Eigen::Index n_points = 1024;
};

struct SweepSpec {
    double g = 0;
    Parity parity = Parity::Odd;
    std::vector<double> amplitudes;
    /// Wavenumbers as multiples of kAlpha0.
    std::vector<double> wavenumbers;
    double omega = 0.05;
    double total_norm = 2.41;
    SolverConfig solver;
    GridSpec grid;
    KinkThresholdConfig threshold;
    /// Mixed into every per-point RNG seed.
    std::uint64_t rng_seed = 0;

    /// 25 log-spaced amplitudes on [0.01, 1] and 25 wavenumbers on [1, 10] alpha0.
    static SweepSpec defaults();
    void validate() const;
};

std::vector<double> log_space(double lo, double hi, std::size_t n);
std::vector<double> lin_space(double lo, double hi, std::size_t n);

nlohmann::json to_json(const SweepSpec& spec);
/// Missing keys fall back to SweepSpec::defaults().
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

struct MapRow {
    double amplitude = 0;
    double alpha = 0;
    int kink_count = 0;
    bool converged = false;
    double energy = 0;
    double mu = 0;
    /// Empty unless the point failed outright.
    std::string error;
};

struct MapTable {
    std::vector<MapRow> rows;
    SweepSpec spec;
    std::string version;
    std::string timestamp;
};

/// Per-point seed; a pure function of (A, alpha, global seed).
std::uint64_t point_seed(double amplitude, double alpha, std::uint64_t global_seed);

struct PointResult {
    GroundStateResult ground_state;
    KinkReport kinks;
};

/// Solves one map point exactly as run_sweep does.
PointResult solve_point(const SweepSpec& spec, double amplitude, double alpha);

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Solves every (A, alpha) pair on `workers` threads. Rows come back sorted by
/// (A, alpha); a failing point is recorded with converged = false.
MapTable run_sweep(const SweepSpec& spec, unsigned workers = 1,
                   const SweepProgress& progress = {});

/// CSV columns: A, alpha, alpha_over_alpha0, kink_count, converged, energy, mu.
void write_map(const MapTable& table, const std::filesystem::path& path);

MapTable read_map(const std::filesystem::path& path);

std::string version_string();

}  // namespace bico

#endif  // BICO_SWEEP_HPP
