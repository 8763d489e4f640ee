#include "bico/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace bico {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path sidecar_path(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension(".json");
    return p;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const SystemParams<double>& p) {
    return {{"g", p.g}, {"omega", p.omega}, {"total_norm", p.total_norm}};
}

json to_json(const CouplingProfile<double>& c) {
    return {{"amplitude", c.signed_amplitude()},
            {"wavenumber", c.wavenumber()},
            {"parity", to_string(c.parity())}};
}

json to_json(const SolverConfig& c) {
    return {{"dtau", c.dtau},
            {"tau_max", c.tau_max},
            {"energy_tol", c.energy_tol},
            {"residual_tol", c.residual_tol},
            {"seed_kind", to_string(c.seed_kind)},
            {"rng_seed", c.rng_seed},
            {"check_interval", c.check_interval},
            {"symmetry", to_string(c.symmetry)},
            {"multistart", c.multistart}};
}

json to_json(const Grid1D<double>& g) {
    return {{"x_max", g.x_max()}, {"n_points", g.size()}};
}

SystemParams<double> system_params_from_json(const json& j) {
    SystemParams<double> p;
    p.g = j.value("g", p.g);
    p.omega = j.value("omega", p.omega);
    p.total_norm = j.value("total_norm", p.total_norm);
    p.validate();
    return p;
}

SolverConfig solver_config_from_json(const json& j) {
    SolverConfig c;
    c.dtau = j.value("dtau", c.dtau);
    c.tau_max = j.value("tau_max", c.tau_max);
    c.energy_tol = j.value("energy_tol", c.energy_tol);
    c.residual_tol = j.value("residual_tol", c.residual_tol);
    if (j.contains("seed_kind")) c.seed_kind = parse_seed_kind(j.at("seed_kind").get<std::string>());
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.check_interval = j.value("check_interval", c.check_interval);
    if (j.contains("symmetry")) c.symmetry = parse_symmetry(j.at("symmetry").get<std::string>());
    c.multistart = j.value("multistart", c.multistart);
    c.validate();
    return c;
}

namespace {

void write_sidecar(const fs::path& csv, const json& metadata) {
    std::ofstream out(sidecar_path(csv));
    if (!out) throw std::runtime_error("cannot open " + sidecar_path(csv).string() + " for writing");
    out << metadata.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + sidecar_path(csv).string());
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& cell, const fs::path& path, std::size_t line,
                    const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (cell.empty() || end != begin + cell.size() || errno == ERANGE || !std::isfinite(v))
        throw ParseError(path.string() + ":" + std::to_string(line) + ": column '" + column +
                         "': invalid number '" + cell + "'");
    return v;
}

}  // namespace

void write_profile_fields(const FieldPair<double>& fields, const CouplingProfile<double>& profile,
                          const fs::path& path, const json& metadata) {
    fields.check();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "x,phi1,phi2,omega\n";
    for (Eigen::Index i = 0; i < fields.grid.size(); ++i) {
        const double x = fields.grid[i];
        out << format_double(x) << ',' << format_double(fields.phi1[i]) << ','
            << format_double(fields.phi2[i]) << ',' << format_double(profile(x)) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
    write_sidecar(path, metadata);
}

void write_profile(const GroundStateResult& result, const SystemParams<double>& params,
                   const CouplingProfile<double>& profile, const fs::path& path,
                   const SolverConfig* config) {
    json trace = json::array();
    for (const auto& s : result.energy_trace) trace.push_back({s.tau, s.energy});
    json meta = {{"kind", "ground_state"},
                 {"system", to_json(params)},
                 {"coupling", to_json(profile)},
                 {"grid", to_json(result.fields.grid)},
                 {"mu", result.mu},
                 {"energy", result.energy},
                 {"residual", result.residual},
                 {"tau", result.tau},
                 {"iterations", result.iterations},
                 {"converged", result.converged},
                 {"energy_trace", std::move(trace)}};
    if (config) meta["solver"] = to_json(*config);
    write_profile_fields(result.fields, profile, path, meta);
}

ProfileData read_profile(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profile " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ":1: empty file");
    const auto header = split_csv(line);
    const std::vector<std::string> required = {"x", "phi1", "phi2", "omega"};
    std::vector<std::size_t> column(required.size());
    for (std::size_t k = 0; k < required.size(); ++k) {
        auto it = std::find(header.begin(), header.end(), required[k]);
        if (it == header.end())
            throw ParseError(path.string() + ":1: missing column '" + required[k] + "'");
        column[k] = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<double> xs, p1, p2, om;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " columns, found " +
                             std::to_string(cells.size()));
        xs.push_back(parse_number(cells[column[0]], path, lineno, "x"));
        p1.push_back(parse_number(cells[column[1]], path, lineno, "phi1"));
        p2.push_back(parse_number(cells[column[2]], path, lineno, "phi2"));
        om.push_back(parse_number(cells[column[3]], path, lineno, "omega"));
    }

    const auto n = static_cast<Eigen::Index>(xs.size());
    if (n < Grid1D<double>::kMinPoints)
        throw ParseError(path.string() + ": only " + std::to_string(n) + " data rows, need at least " +
                         std::to_string(Grid1D<double>::kMinPoints));
    const double x_max = xs.back();
    if (!(x_max > 0) || xs.front() != -x_max)
        throw ParseError(path.string() + ": x column must run from -x_max to x_max > 0");
    Grid1D<double> grid(x_max, n);
    const double tol = 1e-12 * x_max;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(grid[i] - xs[static_cast<std::size_t>(i)]) > tol)
            throw ParseError(path.string() + ":" + std::to_string(i + 2) +
                             ": x column is not a uniform grid symmetric about 0");

    const auto to_field = [](const std::vector<double>& v) {
        return Field<double>(Eigen::Map<const Field<double>>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    ProfileData data{FieldPair<double>(grid, to_field(p1), to_field(p2)), to_field(om), std::nullopt};

    const fs::path side = sidecar_path(path);
    if (fs::exists(side)) {
        std::ifstream js(side);
        try {
            data.metadata = json::parse(js);
        } catch (const json::parse_error& e) {
            throw ParseError(side.string() + ": " + e.what());
        }
    }
    return data;
}

}  // namespace bico
