#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sailroa/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sailroa/csv.hpp"
#include "sailroa/errors.hpp"
#include "sailroa/sdpa.hpp"

using namespace sailroa;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// reduced-fidelity cone config for fast command tests
const char* kQuickConfig = R"({
  "sail": {"kind": "cone", "base_radius": 1.0, "cone_angle_deg": 40.0},
  "mass": {"sail_mass": 0.01, "payload_mass": 0.01, "mast_length": 2.0},
  "damping": {"d11": 0.01, "d12": 0.01, "d22": 0.01},
  "z_setpoint": 10.0,
  "integrator": {"dt": 0.001, "t_end": 0.01},
  "rays": 32,
  "mesh": {"n_radial": 64, "n_azimuthal": 64},
  "roa": {"n_samples": 3000, "bisection_tol": 0.003}
})";

}  // namespace

TEST_CASE("config parsing applies defaults and validates") {
  const RunConfig c = parse_config_text(kQuickConfig);
  CHECK(c.sail.kind == "cone");
  CHECK(c.n_rays == 32);
  CHECK(c.dt == 0.001);
  CHECK(c.roa.n_samples == 3000);
  CHECK(c.mesh_radial == 64);
  CHECK(c.beam_fwhm == 0.0);  // defaults to the base radius downstream
  CHECK(c.dynamics_params().beam.fwhm() == doctest::Approx(1.0));
  CHECK(c.initial_state().position.z() == doctest::Approx(10.0));
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(parse_config_text(R"({"sail": {"kind": "cone"}, "bogus": 1})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"sail": {"kind": "cone", "radius": 1}})"),
                  ConfigError);
}

TEST_CASE("validation catches out-of-range fields") {
  CHECK_THROWS_AS(parse_config_text(R"({"sail": {"kind": "cone", "cone_angle_deg": 95}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"sail": {"kind": "cone", "cone_angle_deg": 0}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"integrator": {"dt": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"rays": 4})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
  CHECK_THROWS_AS(
      parse_config_text(R"({"sweep": {"parameter": "cone_angle", "values": [40]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config_text(R"({"sweep": {"parameter": "dt", "values": [1, 2]}})"),
      ConfigError);
}

TEST_CASE("print-config round trip") {
  const RunConfig c = parse_config_text(kQuickConfig);
  const std::string echoed = print_config(c);
  const RunConfig reparsed = parse_config_text(echoed);
  CHECK(print_config(reparsed) == echoed);

  // spherical-cap variant too
  const RunConfig cap = parse_config_text(
      R"({"sail": {"kind": "spherical_cap", "cap_base_radius": 0.5, "curvature_radius": 1.0},
          "sweep": {"parameter": "mast_length", "values": [2.3, 2.5]}})");
  CHECK(print_config(parse_config_text(print_config(cap))) == print_config(cap));
}

TEST_CASE("cmd_simulate writes the trajectory contract") {
  const RunConfig c = parse_config_text(kQuickConfig);
  const fs::path dir = fresh_dir("sailroa_test_sim");
  CHECK(cli::cmd_simulate(c, dir.string()) == cli::kExitOk);

  const CsvTable t = read_csv((dir / "trajectory.csv").string());
  REQUIRE(t.header.size() == 15);
  CHECK(t.header[0] == "t");
  CHECK(t.header[14] == "saturated");
  CHECK(t.rows.size() == 10);  // t_end/dt rows, one per step
  CHECK(fs::exists(dir / "states.svg"));
  fs::remove_all(dir);
}

TEST_CASE("cmd_linearize reports and writes matrices") {
  RunConfig c = parse_config_text(kQuickConfig);
  const fs::path dir = fresh_dir("sailroa_test_lin");
  CHECK(cli::cmd_linearize(c, dir.string()) == cli::kExitOk);
  const CsvTable a = read_csv((dir / "A.csv").string());
  CHECK(a.rows.size() == 8);
  CHECK(a.rows[0].size() == 8);
  // kinematic rows are a plain 0/1 selector pattern
  for (int j = 0; j < 8; ++j) {
    CHECK(std::abs(a.rows[0][j] - (j == 4 ? 1.0 : 0.0)) < 1e-7);
    CHECK(std::abs(a.rows[2][j] - (j == 7 ? 1.0 : 0.0)) < 1e-7);
  }
  CHECK(fs::exists(dir / "P.csv"));
  fs::remove_all(dir);
}

TEST_CASE("cmd_linearize without damping still reports") {
  RunConfig c = parse_config_text(kQuickConfig);
  c.d11 = c.d12 = c.d22 = 0.0;
  const fs::path dir = fresh_dir("sailroa_test_lin0");
  const int code = cli::cmd_linearize(c, dir.string());
  CHECK((code == cli::kExitOk || code == cli::kExitNotHurwitz));
  CHECK(fs::exists(dir / "A.csv"));  // report written either way
  fs::remove_all(dir);
}

TEST_CASE("cmd_roa emits projections, report, and optional SDPA export") {
  const RunConfig c = parse_config_text(kQuickConfig);
  const fs::path dir = fresh_dir("sailroa_test_roa");
  const fs::path sdpa = dir / "program.dat-s";
  CHECK(cli::cmd_roa(c, dir.string(), sdpa.string()) == cli::kExitOk);

  for (const char* name :
       {"projection_x_y", "projection_x_phi", "projection_theta_phi",
        "projection_y_theta"}) {
    CHECK(fs::exists(dir / (std::string(name) + ".csv")));
    CHECK(fs::exists(dir / (std::string(name) + ".svg")));
  }
  const CsvTable report = read_csv((dir / "roa_report.csv").string());
  CHECK(report.rows.size() == 4);

  const CsvTable cert = read_csv((dir / "roa_certificate.csv").string());
  REQUIRE(cert.rows.size() == 1);
  const int rho_col = cert.column("rho");
  REQUIRE(rho_col >= 0);
  CHECK(cert.rows[0][rho_col] > 0.0);

  const SdpaProblem parsed = read_sdpa(sdpa.string());
  CHECK(parsed.block_sizes == std::vector<int>{165, 9, -2});
  CHECK(parsed.num_constraints == 3003);
  fs::remove_all(dir);
}

TEST_CASE("cmd_roa reruns are byte-identical") {
  const RunConfig c = parse_config_text(kQuickConfig);
  const fs::path dir1 = fresh_dir("sailroa_test_det1");
  const fs::path dir2 = fresh_dir("sailroa_test_det2");
  REQUIRE(cli::cmd_roa(c, dir1.string()) == cli::kExitOk);
  REQUIRE(cli::cmd_roa(c, dir2.string()) == cli::kExitOk);
  for (const auto& entry : fs::directory_iterator(dir1)) {
    if (entry.path().extension() != ".csv") continue;
    const std::string name = entry.path().filename().string();
    CHECK(slurp(entry.path()) == slurp(dir2 / name));
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("cmd_sweep emits one metrics row per value") {
  RunConfig c = parse_config_text(kQuickConfig);
  SweepConfig sweep;
  sweep.parameter = "cone_angle";
  sweep.values = {40.0, 45.0};
  c.sweep = sweep;
  const fs::path dir = fresh_dir("sailroa_test_sweep");
  setenv("SAILROA_THREADS", "1", 1);
  CHECK(cli::cmd_sweep(c, dir.string()) == cli::kExitOk);
  unsetenv("SAILROA_THREADS");

  const CsvTable table = read_csv((dir / "sweep.csv").string());
  REQUIRE(table.rows.size() == 2);
  const int rho = table.column("rho");
  REQUIRE(rho >= 0);
  CHECK(table.rows[0][rho] > 0.0);
  CHECK(table.rows[1][rho] > 0.0);
  CHECK(fs::exists(dir / "overlay_theta_phi.svg"));
  CHECK(fs::exists(dir / "cone_angle=40" / "projection_x_y.csv"));
  fs::remove_all(dir);
}

TEST_CASE("cmd_sweep records per-value failures and keeps going") {
  // a spherical cap with a short mast is not levitation-stable; its row is
  // marked and the other value still completes
  RunConfig c = parse_config_text(R"({
    "sail": {"kind": "spherical_cap", "cap_base_radius": 0.5, "curvature_radius": 1.0},
    "mass": {"sail_mass": 0.01, "payload_mass": 0.01, "mast_length": 2.3},
    "rays": 32,
    "mesh": {"n_radial": 64, "n_azimuthal": 64},
    "roa": {"n_samples": 2000},
    "sweep": {"parameter": "mast_length", "values": [2.3, 0.2], "metrics": ["rho"]}
  })");
  const fs::path dir = fresh_dir("sailroa_test_sweep_fail");
  CHECK(cli::cmd_sweep(c, dir.string()) == cli::kExitOk);
  const CsvTable table = read_csv((dir / "sweep.csv").string());
  REQUIRE(table.rows.size() == 2);
  const int rho = table.column("rho");
  REQUIRE(rho >= 0);
  CHECK(table.column("spectral_abscissa") < 0);  // metrics subset honored
  CHECK(table.rows[0][rho] > 0.0);               // healthy value completed
  CHECK(std::isnan(table.rows[1][rho]));         // failed value recorded as nan
  fs::remove_all(dir);
}

TEST_CASE("cmd_sweep without a sweep block is a config error") {
  const RunConfig c = parse_config_text(kQuickConfig);
  const fs::path dir = fresh_dir("sailroa_test_sweep_missing");
  CHECK(cli::cmd_sweep(c, dir.string()) == cli::kExitConfig);
  fs::remove_all(dir);
}
