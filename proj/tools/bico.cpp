// Command-line front end: solve, uniform, tf, kinks, sweep.
//
// Exit codes: 0 success, 1 usage or input error, 2 numerical failure.
// BICO_LOG sets the log level (trace, debug, info, warn, error, off).

#include "bico/io.hpp"
#include "bico/kinks.hpp"
#include "bico/model.hpp"
#include "bico/solver.hpp"
#include "bico/sweep.hpp"
#include "bico/tf_approx.hpp"
#include "bico/uniform.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using namespace bico;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("bico");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* lvl = std::getenv("BICO_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

json state_json(const UniformState& s) {
    return {{"label", to_string(s.label)}, {"phi1", s.phi1},         {"phi2", s.phi2},
            {"mu", s.mu},                   {"h_density", s.h_density}, {"tie", s.tie}};
}

Parity infer_parity(const ProfileData& data) {
    if (data.metadata && data.metadata->contains("coupling"))
        return parse_parity(data.metadata->at("coupling").at("parity").get<std::string>());
    // Fall back to the symmetry of the sampled coupling column.
    const Field<double>& om = data.coupling;
    const double odd = (om + om.reverse()).cwiseAbs().maxCoeff();
    const double even = (om - om.reverse()).cwiseAbs().maxCoeff();
    return odd <= even ? Parity::Odd : Parity::Even;
}

struct SolveArgs {
    double g = 0, A = 0, alpha = 0.4624, omega = 0.05, norm = 2.41, xmax = 25, dtau = 1e-3,
           tau_max = 500;
    std::string parity = "odd", seed_kind = "tf", symmetry = "parity", out;
    Eigen::Index points = 1024;
    std::uint64_t rng_seed = 0;
    bool single_start = false;
};

int run_solve(const SolveArgs& a) {
    SystemParams<double> params{a.g, a.omega, a.norm};
    CouplingProfile<double> profile(a.A, a.alpha, parse_parity(a.parity));
    SolverConfig config;
    config.dtau = a.dtau;
    config.tau_max = a.tau_max;
    config.seed_kind = parse_seed_kind(a.seed_kind);
    config.symmetry = parse_symmetry(a.symmetry);
    config.rng_seed = a.rng_seed;
    config.multistart = !a.single_start;
    const auto grid = make_grid(a.xmax, a.points);
    spdlog::info("solving g={} A={} alpha={} parity={} on {} points", a.g, a.A, a.alpha, a.parity,
                 a.points);
    const GroundStateResult r = solve_ground_state(params, profile, grid, config);
    write_profile(r, params, profile, a.out, &config);
    const KinkReport k = count_kinks(r.fields, profile.parity());
    std::cout << json{{"converged", r.converged}, {"tau", r.tau},       {"energy", r.energy},
                      {"mu", r.mu},               {"residual", r.residual}, {"kink_count", k.count},
                      {"out", a.out}}
                     .dump(2)
              << '\n';
    if (!r.converged) {
        spdlog::error("no convergence by tau = {} (residual {:.3e})", r.tau, r.residual);
        return kNumerical;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Ground states of two-component condensates with sign-modulated linear coupling"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Imaginary-time ground state; writes a profile CSV");
    solve->add_option("--g", sa.g, "XPM coefficient")->required();
    solve->add_option("--A", sa.A, "coupling amplitude")->required();
    solve->add_option("--alpha", sa.alpha, "modulation wavenumber")->required();
    solve->add_option("--parity", sa.parity, "odd (sin) or even (cos)")
        ->check(CLI::IsMember({"odd", "even"}));
    solve->add_option("--omega", sa.omega, "trap frequency");
    solve->add_option("--norm", sa.norm, "total norm");
    solve->add_option("--xmax", sa.xmax, "domain half-width");
    solve->add_option("--points", sa.points, "grid points");
    solve->add_option("--dtau", sa.dtau, "imaginary-time step");
    solve->add_option("--tau-max", sa.tau_max, "imaginary-time horizon");
    solve->add_option("--seed-kind", sa.seed_kind, "initial condition")
        ->check(CLI::IsMember({"tf", "random", "constant"}));
    solve->add_option("--symmetry", sa.symmetry, "parity (default) or free relaxation")
        ->check(CLI::IsMember({"parity", "free"}));
    solve->add_option("--rng-seed", sa.rng_seed, "seed for --seed-kind random");
    solve->add_flag("--single-start", sa.single_start,
                    "relax from the --seed-kind start only (default also tries low-node starts)");
    solve->add_option("--out", sa.out, "profile CSV path")->required();

    double density = 1, ug = 0, uA = 0;
    bool oracle = false;
    std::size_t resolution = 1000000;
    auto* uniform = app.add_subcommand("uniform", "Uniform-state analytics as JSON");
    uniform->add_option("--density", density, "total density N")->required();
    uniform->add_option("--g", ug, "XPM coefficient")->required();
    uniform->add_option("--A", uA, "coupling constant")->required();
    uniform->add_flag("--oracle", oracle, "also run the brute-force minimizer");
    uniform->add_option("--resolution", resolution, "oracle scan resolution");

    double tg = 0, tA = 0, talpha = 0.4624, tmu = 0.16, tomega = 0.05, txmax = 25;
    Eigen::Index tpoints = 1024;
    std::string tparity = "odd", tout;
    auto* tf = app.add_subcommand("tf", "Sampled perturbative approximation");
    tf->add_option("--g", tg, "XPM coefficient")->required();
    tf->add_option("--A", tA, "coupling amplitude")->required();
    tf->add_option("--alpha", talpha, "modulation wavenumber")->required();
    tf->add_option("--parity", tparity, "odd or even")->check(CLI::IsMember({"odd", "even"}));
    tf->add_option("--mu", tmu, "chemical potential")->required();
    tf->add_option("--omega", tomega, "trap frequency");
    tf->add_option("--xmax", txmax, "domain half-width");
    tf->add_option("--points", tpoints, "grid points");
    tf->add_option("--out", tout, "profile CSV path")->required();

    std::string kin;
    double rel = 0.05, abs_thr = 0.02;
    std::string kparity;
    auto* kinks = app.add_subcommand("kinks", "Kink report for a profile CSV");
    kinks->add_option("--in", kin, "profile CSV")->required()->check(CLI::ExistingFile);
    auto* rel_opt = kinks->add_option("--rel-threshold", rel, "fraction of max|phi1|");
    auto* abs_opt = kinks->add_option("--abs-threshold", abs_thr, "absolute amplitude");
    rel_opt->excludes(abs_opt);
    kinks->add_option("--parity", kparity, "override the profile parity")
        ->check(CLI::IsMember({"odd", "even"}));

    std::string config_path, map_out;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t sweep_seed = 0;
    auto* sweep = app.add_subcommand("sweep", "Kink-count map over (A, alpha)");
    sweep->add_option("--config", config_path, "sweep spec JSON")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", map_out, "map CSV path")->required();
    sweep->add_option("--workers", workers, "worker threads");
    auto* seed_opt = sweep->add_option("--rng-seed", sweep_seed, "global RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve) return run_solve(sa);

        if (*uniform) {
            json out;
            out["ground_state"] = state_json(uniform_ground_state(density, ug, uA));
            out["symmetric"] = state_json(uniform_symmetric(density, ug, uA));
            const auto asym = uniform_asymmetric(density, ug, uA);
            if (const auto* s = std::get_if<UniformState>(&asym))
                out["asymmetric"] = state_json(*s);
            else
                out["asymmetric"] = {{"absent", to_string(std::get<AsymmetricAbsence>(asym))}};
            if (oracle) {
                const auto bf = uniform_brute_force(density, ug, uA, resolution);
                out["oracle"] = state_json(bf.state);
                out["oracle"]["theta"] = bf.theta;
                out["oracle"]["flat"] = bf.flat;
            }
            std::cout << out.dump(2) << '\n';
            return kOk;
        }

        if (*tf) {
            SystemParams<double> params{tg, tomega, 1.0};
            CouplingProfile<double> profile(tA, talpha, parse_parity(tparity));
            const auto grid = make_grid(txmax, tpoints);
            try {
                const TFApprox t = tf_pair(params, profile, tmu, grid);
                json meta = {{"kind", "tf_approximation"},
                             {"system", {{"g", tg}, {"omega", tomega}}},
                             {"coupling", to_json(profile)},
                             {"grid", to_json(grid)},
                             {"mu", tmu},
                             {"mu_eff", t.mu_eff},
                             {"support_radius", t.support_radius}};
                write_profile_fields(t.fields, profile, tout, meta);
                std::cout << json{{"mu_eff", t.mu_eff}, {"support_radius", t.support_radius}, {"out", tout}}.dump(2)
                          << '\n';
                return kOk;
            } catch (const SingularApproximation& e) {
                std::cout << json{{"singular", true}, {"locations", e.locations()}, {"message", e.what()}}.dump(2)
                          << '\n';
                spdlog::error("{}", e.what());
                return kNumerical;
            }
        }

        if (*kinks) {
            const ProfileData data = read_profile(kin);
            const Parity parity = kparity.empty() ? infer_parity(data) : parse_parity(kparity);
            KinkThresholdConfig cfg;
            if (*abs_opt) {
                cfg.reference = ThresholdReference::AbsoluteValue;
                cfg.absolute_value = abs_thr;
            } else {
                cfg.relative_threshold = rel;
            }
            const KinkReport r = count_kinks(data.fields, parity, cfg);
            std::cout << json{{"count", r.count},
                              {"positions", r.positions},
                              {"threshold_used", r.threshold_used},
                              {"parity", to_string(parity)},
                              {"parity_consistent", r.parity_consistent}}
                             .dump(2)
                      << '\n';
            return kOk;
        }

        if (*sweep) {
            std::ifstream in(config_path);
            SweepSpec spec = sweep_spec_from_json(json::parse(in));
            if (*seed_opt) spec.rng_seed = sweep_seed;
            spdlog::info("sweep: {} x {} points, g = {}, {} workers", spec.amplitudes.size(),
                         spec.wavenumbers.size(), spec.g, workers);
            const MapTable table = run_sweep(spec, workers, [](std::size_t d, std::size_t n) {
                spdlog::debug("sweep progress {}/{}", d, n);
            });
            write_map(table, map_out);
            std::size_t failed = 0;
            for (const auto& r : table.rows) failed += r.converged ? 0 : 1;
            std::cout << json{{"points", table.rows.size()}, {"not_converged", failed}, {"out", map_out}}.dump(2)
                      << '\n';
            return failed == 0 ? kOk : kNumerical;
        }
    } catch (const NumericalInstability& e) {
        spdlog::error("{}", e.what());
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
