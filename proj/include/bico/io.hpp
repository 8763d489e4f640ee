// Profile and map files: CSV payload plus a JSON sidecar next to it.
//
// Profile CSV columns: x, phi1, phi2, omega (Omega(x), the coupling), one row
// per grid node, numbers written with 17 significant digits so that reading
// recovers every double exactly.

#ifndef BICO_IO_HPP
#define BICO_IO_HPP

#include "bico/model.hpp"
#include "bico/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace bico {

/// Malformed input file; the message names the file, line and offending column.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `profile.csv` -> `profile.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

nlohmann::json to_json(const SystemParams<double>& p);
nlohmann::json to_json(const CouplingProfile<double>& c);
nlohmann::json to_json(const SolverConfig& c);
nlohmann::json to_json(const Grid1D<double>& g);

SystemParams<double> system_params_from_json(const nlohmann::json& j);
SolverConfig solver_config_from_json(const nlohmann::json& j);

/// Writes the CSV and a sidecar holding `metadata`.
void write_profile_fields(const FieldPair<double>& fields, const CouplingProfile<double>& profile,
                          const std::filesystem::path& path, const nlohmann::json& metadata);

/// Solver output: sidecar carries parameters, mu, energy and convergence data.
void write_profile(const GroundStateResult& result, const SystemParams<double>& params,
                   const CouplingProfile<double>& profile, const std::filesystem::path& path,
                   const SolverConfig* config = nullptr);

struct ProfileData {
    FieldPair<double> fields;
    Field<double> coupling;
    /// Sidecar contents when the file exists next to the CSV.
    std::optional<nlohmann::json> metadata;
};

ProfileData read_profile(const std::filesystem::path& path);

/// Shortest exact decimal form with 17 significant digits.
std::string format_double(double v);

}  // namespace bico

#endif  // BICO_IO_HPP
