#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bico/io.hpp"
#include "bico/sweep.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace bico;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "bico_test_io";
    fs::create_directories(dir);
    return dir / name;
}

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GroundStateResult fake_result(const Grid1D<double>& grid) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    GroundStateResult r{FieldPair<double>(grid), 0.2, 0.3, 1e-7, 12.5, 250, {{0.1, 0.5}, {0.2, 0.4}}, true};
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        r.fields.phi1[i] = nd(rng) * 1e-3 + 1.0 / 3;
        r.fields.phi2[i] = nd(rng) * 1e-300;
    }
    return r;
}

}  // namespace

TEST_CASE("profile round trip is bitwise exact") {
    const auto grid = make_grid(25.0, 1024);
    const GroundStateResult r = fake_result(grid);
    const SystemParams<double> params{0.5, 0.05, 2.41};
    const CouplingProfile<double> profile(0.1, 0.4624, Parity::Even);
    const fs::path path = scratch("profile.csv");
    SolverConfig cfg;
    write_profile(r, params, profile, path, &cfg);
    CHECK(count_lines(path) == 1025);
    CHECK(fs::exists(scratch("profile.json")));

    const ProfileData d = read_profile(path);
    CHECK(d.fields.grid == grid);
    CHECK((d.fields.phi1.array() == r.fields.phi1.array()).all());
    CHECK((d.fields.phi2.array() == r.fields.phi2.array()).all());
    CHECK((d.coupling.array() == profile.sample(grid).array()).all());
    REQUIRE(d.metadata);
    CHECK(d.metadata->at("energy").get<double>() == 0.3);
    CHECK(d.metadata->at("coupling").at("parity") == "even");
    CHECK(d.metadata->at("energy_trace").size() == 2);
    CHECK(solver_config_from_json(d.metadata->at("solver")).dtau == cfg.dtau);
    CHECK(system_params_from_json(d.metadata->at("system")).g == 0.5);
}

TEST_CASE("format_double keeps every bit") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 1000; ++k) {
        const double v = u(rng) * std::pow(10.0, k % 40 - 20);
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("malformed profiles name the problem") {
    const fs::path path = scratch("bad.csv");
    const auto write = [&](const std::string& body) {
        fs::remove(sidecar_path(path));
        std::ofstream(path) << body;
    };
    const auto message = [&] {
        try {
            read_profile(path);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };

    write("x,phi1,omega\n0,1,0\n");
    CHECK(message().find("missing column 'phi2'") != std::string::npos);

    std::string body = "x,phi1,phi2,omega\n";
    const auto grid = make_grid(5.0, 20);
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        body += format_double(grid[i]) + (i == 6 ? ",abc,0,0\n" : ",1,0,0\n");
    write(body);
    const std::string m = message();
    CHECK(m.find(":8:") != std::string::npos);
    CHECK(m.find("'phi1'") != std::string::npos);

    write("x,phi1,phi2,omega\n0,1,0,0\n1,1,0,0\n");
    CHECK(message().find("at least 16") != std::string::npos);

    body = "x,phi1,phi2,omega\n";
    for (int i = 0; i < 20; ++i) body += std::to_string(-i) + ",1,0,0\n";
    write(body);
    CHECK_FALSE(message().empty());

    CHECK_THROWS_AS(read_profile(scratch("does_not_exist.csv")), ParseError);
}

TEST_CASE("map files") {
    MapTable table;
    table.spec = SweepSpec::defaults();
    table.version = version_string();
    table.timestamp = "2000-01-01T00:00:00Z";
    for (double a : table.spec.amplitudes)
        for (double w : table.spec.wavenumbers)
            table.rows.push_back({a, w * kAlpha0, 1, true, 0.25, 0.17, ""});
    const fs::path path = scratch("map.csv");
    write_map(table, path);
    CHECK(count_lines(path) == 626);
    CHECK(read_all(path).rfind("A,alpha,alpha_over_alpha0,kink_count,converged,energy,mu\n", 0) == 0);

    const MapTable back = read_map(path);
    REQUIRE(back.rows.size() == 625);
    for (std::size_t k = 1; k < back.rows.size(); ++k) {
        const auto& p = back.rows[k - 1];
        const auto& q = back.rows[k];
        CHECK((p.amplitude < q.amplitude || (p.amplitude == q.amplitude && p.alpha < q.alpha)));
    }
    CHECK(back.rows[0].amplitude == 0.01);
    CHECK(back.rows[0].alpha == 1.0 * kAlpha0);
    CHECK(back.version == table.version);
    CHECK(back.spec.amplitudes == table.spec.amplitudes);
}
