#include "bico/sweep.hpp"
#include "bico/io.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#ifndef BICO_VERSION
#define BICO_VERSION "0.0.0"
#endif

namespace bico {

using nlohmann::json;
namespace fs = std::filesystem;

std::string version_string() { return BICO_VERSION; }

std::vector<double> log_space(double lo, double hi, std::size_t n) {
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t k = 0; k < n; ++k) out[k] = std::exp(a + (b - a) * double(k) / double(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> lin_space(double lo, double hi, std::size_t n) {
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = lo + (hi - lo) * double(k) / double(n - 1);
    out.back() = hi;
    return out;
}

SweepSpec SweepSpec::defaults() {
    SweepSpec s;
    s.amplitudes = log_space(0.01, 1.0, 25);
    s.wavenumbers = lin_space(1.0, 10.0, 25);
    return s;
}

void SweepSpec::validate() const {
    if (amplitudes.empty() || wavenumbers.empty())
        throw std::invalid_argument("sweep axes must be non-empty");
    for (double a : amplitudes)
        if (!(a > 0)) throw std::invalid_argument("sweep amplitudes must be positive");
    for (double w : wavenumbers)
        if (!(w > 0)) throw std::invalid_argument("sweep wavenumbers must be positive");
    if (!(omega >= 0)) throw std::invalid_argument("trap frequency must be non-negative");
    if (!(total_norm > 0)) throw std::invalid_argument("total norm must be positive");
    solver.validate();
    threshold.validate();
    make_grid(grid.x_max, grid.n_points);
}

namespace {

const char* to_string(ThresholdReference r) {
    return r == ThresholdReference::MaxPhi1 ? "max_phi1" : "absolute";
}

ThresholdReference parse_reference(const std::string& s) {
    if (s == "max_phi1") return ThresholdReference::MaxPhi1;
    if (s == "absolute") return ThresholdReference::AbsoluteValue;
    throw std::invalid_argument("unknown threshold reference '" + s + "' (expected max_phi1|absolute)");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

json to_json(const SweepSpec& s) {
    return {{"g", s.g},
            {"parity", to_string(s.parity)},
            {"amplitudes", s.amplitudes},
            {"wavenumbers", s.wavenumbers},
            {"omega", s.omega},
            {"total_norm", s.total_norm},
            {"solver", to_json(s.solver)},
            {"grid", {{"x_max", s.grid.x_max}, {"n_points", s.grid.n_points}}},
            {"threshold",
             {{"relative_threshold", s.threshold.relative_threshold},
              {"reference", to_string(s.threshold.reference)},
              {"absolute_value", s.threshold.absolute_value}}},
            {"rng_seed", s.rng_seed}};
}

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec s = SweepSpec::defaults();
    s.g = j.value("g", s.g);
    if (j.contains("parity")) s.parity = parse_parity(j.at("parity").get<std::string>());
    if (j.contains("amplitudes")) s.amplitudes = j.at("amplitudes").get<std::vector<double>>();
    if (j.contains("wavenumbers")) s.wavenumbers = j.at("wavenumbers").get<std::vector<double>>();
    s.omega = j.value("omega", s.omega);
    s.total_norm = j.value("total_norm", s.total_norm);
    if (j.contains("solver")) s.solver = solver_config_from_json(j.at("solver"));
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        s.grid.x_max = g.value("x_max", s.grid.x_max);
        s.grid.n_points = g.value("n_points", s.grid.n_points);
    }
    if (j.contains("threshold")) {
        const json& t = j.at("threshold");
        s.threshold.relative_threshold = t.value("relative_threshold", s.threshold.relative_threshold);
        if (t.contains("reference"))
            s.threshold.reference = parse_reference(t.at("reference").get<std::string>());
        s.threshold.absolute_value = t.value("absolute_value", s.threshold.absolute_value);
    }
    s.rng_seed = j.value("rng_seed", s.rng_seed);
    s.validate();
    return s;
}

std::uint64_t point_seed(double amplitude, double alpha, std::uint64_t global_seed) {
    std::uint64_t h = splitmix64(global_seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(amplitude));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(alpha));
    return h;
}

PointResult solve_point(const SweepSpec& spec, double amplitude, double alpha) {
    SystemParams<double> params{spec.g, spec.omega, spec.total_norm};
    CouplingProfile<double> profile(amplitude, alpha, spec.parity);
    SolverConfig config = spec.solver;
    config.rng_seed = point_seed(amplitude, alpha, spec.rng_seed);
    const auto grid = make_grid(spec.grid.x_max, spec.grid.n_points);
    PointResult out{solve_ground_state(params, profile, grid, config), {}};
    out.kinks = count_kinks(out.ground_state.fields, spec.parity, spec.threshold);
    return out;
}

MapTable run_sweep(const SweepSpec& spec, unsigned workers, const SweepProgress& progress) {
    spec.validate();
    struct Task {
        double amplitude, alpha;
    };
    std::vector<Task> tasks;
    for (double a : spec.amplitudes)
        for (double w : spec.wavenumbers) tasks.push_back({a, w * kAlpha0});

    std::vector<MapRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;

    const auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            MapRow row;
            row.amplitude = tasks[k].amplitude;
            row.alpha = tasks[k].alpha;
            try {
                const PointResult r = solve_point(spec, row.amplitude, row.alpha);
                row.kink_count = r.kinks.count;
                row.converged = r.ground_state.converged;
                row.energy = r.ground_state.energy;
                row.mu = r.ground_state.mu;
            } catch (const std::exception& e) {
                row.converged = false;
                row.kink_count = -1;
                row.energy = row.mu = std::nan("");
                row.error = e.what();
            }
            rows[k] = std::move(row);
            const std::size_t d = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(d, tasks.size());
            }
        }
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    std::sort(rows.begin(), rows.end(), [](const MapRow& a, const MapRow& b) {
        return a.amplitude != b.amplitude ? a.amplitude < b.amplitude : a.alpha < b.alpha;
    });
    return MapTable{std::move(rows), spec, version_string(), utc_timestamp()};
}

void write_map(const MapTable& table, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "A,alpha,alpha_over_alpha0,kink_count,converged,energy,mu\n";
    for (const MapRow& r : table.rows) {
        out << format_double(r.amplitude) << ',' << format_double(r.alpha) << ','
            << format_double(r.alpha / kAlpha0) << ',' << r.kink_count << ','
            << (r.converged ? 1 : 0) << ',' << format_double(r.energy) << ','
            << format_double(r.mu) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());

    json failures = json::array();
    for (const MapRow& r : table.rows)
        if (!r.error.empty()) failures.push_back({{"A", r.amplitude}, {"alpha", r.alpha}, {"error", r.error}});
    const json meta = {{"kind", "kink_map"},
                       {"spec", to_json(table.spec)},
                       {"alpha0", kAlpha0},
                       {"version", table.version},
                       {"timestamp", table.timestamp},
                       {"failures", failures}};
    std::ofstream side(sidecar_path(path));
    if (!side) throw std::runtime_error("cannot open " + sidecar_path(path).string() + " for writing");
    side << meta.dump(2) << '\n';
    if (!side) throw std::runtime_error("failed writing " + sidecar_path(path).string());
}

MapTable read_map(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "A,alpha,alpha_over_alpha0,kink_count,converged,energy,mu")
        throw ParseError(path.string() + ":1: unexpected map header");
    MapTable table;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7)
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 7 columns");
        try {
            MapRow r;
            r.amplitude = std::stod(cells[0]);
            r.alpha = std::stod(cells[1]);
            r.kink_count = std::stoi(cells[3]);
            r.converged = cells[4] == "1";
            r.energy = std::stod(cells[5]);
            r.mu = std::stod(cells[6]);
            table.rows.push_back(r);
        } catch (const std::exception&) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": invalid number");
        }
    }
    const fs::path side = sidecar_path(path);
    if (fs::exists(side)) {
        std::ifstream js(side);
        const json meta = json::parse(js);
        if (meta.contains("spec")) table.spec = sweep_spec_from_json(meta.at("spec"));
        table.version = meta.value("version", "");
        table.timestamp = meta.value("timestamp", "");
    }
    return table;
}

}  // namespace bico
