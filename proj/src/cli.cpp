#include "sailroa/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include "sailroa/csv.hpp"
#include "sailroa/errors.hpp"
#include "sailroa/roa.hpp"
#include "sailroa/stability.hpp"
#include "sailroa/svg.hpp"

namespace sailroa::cli {

namespace fs = std::filesystem;

namespace {

const char* kInternalNames[kInternalDim] = {"x",  "y",  "theta", "phi",
                                            "vx", "vy", "wx",    "wy"};

// projection planes reported for the ROA, in x_u indices
const std::pair<int, int> kPlanes[4] = {{0, 1}, {0, 3}, {2, 3}, {1, 2}};

struct RoaResult {
  LinearModel model;
  bool hurwitz = false;
  double abscissa = 0.0;
  Eigen::MatrixXd P;
  PolyVectorField field;
  RoaEstimate estimate;
  PlaneProjection projections[4];
};

/// Shared linearize -> taylor -> Lyapunov -> sampling-rho pipeline.
/// Throws NotHurwitzError / CertificationError upward.
RoaResult run_roa_pipeline(const RunConfig& config) {
  const DynamicsParams params = config.dynamics_params();

  RoaResult r;
  LinearizeOptions lin;
  lin.spin = config.roa.spin;
  r.model = linearize_internal(params, lin);
  std::tie(r.hurwitz, r.abscissa) = is_hurwitz(r.model.A);
  if (!r.hurwitz)
    throw NotHurwitzError("internal dynamics not Hurwitz (abscissa " +
                          format_g9(r.abscissa) + ")");

  TaylorOptions taylor_opt;
  taylor_opt.spin = config.roa.spin;
  taylor_opt.radius = config.roa.stencil_radius;
  r.field = taylor_expand_internal(params, 3, taylor_opt);

  const QuadraticLyapunov lyap =
      solve_lyapunov(r.model.A, Eigen::MatrixXd::Identity(kInternalDim, kInternalDim));
  r.P = lyap.P;

  RhoOptions rho_opt;
  rho_opt.n_samples = config.roa.n_samples;
  rho_opt.bisection_tol = config.roa.bisection_tol;
  rho_opt.rho_max = config.roa.rho_max;
  r.estimate = estimate_rho_sampling(lyap.P, r.field, rho_opt);

  for (int k = 0; k < 4; ++k)
    r.projections[k] =
        project_ellipsoid(lyap.P, r.estimate.rho, kPlanes[k].first, kPlanes[k].second);
  return r;
}

void write_projection_files(const RoaResult& r, const fs::path& dir) {
  for (int k = 0; k < 4; ++k) {
    const auto& proj = r.projections[k];
    const std::string ni = kInternalNames[proj.axis_i];
    const std::string nj = kInternalNames[proj.axis_j];
    const fs::path csv = dir / ("projection_" + ni + "_" + nj + ".csv");
    std::ofstream out(csv);
    out << ni << "," << nj << "\n";
    for (Eigen::Index c = 0; c < proj.boundary.cols(); ++c)
      out << format_g9(proj.boundary(0, c)) << "," << format_g9(proj.boundary(1, c))
          << "\n";
    out.close();
    plot_csv_regions({{csv.string(), "certified level set", "#e86aa0"}},
                     (dir / ("projection_" + ni + "_" + nj + ".svg")).string(),
                     "ROA projection " + ni + "-" + nj, ni, nj);
  }

  std::ofstream report(dir / "roa_report.csv");
  report << "plane,extent_axis1,extent_axis2\n";
  for (int k = 0; k < 4; ++k) {
    const auto& proj = r.projections[k];
    report << kInternalNames[proj.axis_i] << "-" << kInternalNames[proj.axis_j] << ","
           << format_g9(proj.extent_i) << "," << format_g9(proj.extent_j) << "\n";
  }
  report.close();

  std::ofstream cert(dir / "roa_certificate.csv");
  cert << "method,rho,n_samples,worst_vdot,levels_tested,possibly_unbounded\n";
  cert << r.estimate.method << "," << format_g9(r.estimate.rho) << ","
       << r.estimate.n_samples << "," << format_g9(r.estimate.worst_vdot) << ","
       << r.estimate.levels_tested << "," << (r.estimate.possibly_unbounded ? 1 : 0)
       << "\n";
}

int worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 2;
  if (const char* env = std::getenv("SAILROA_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<std::size_t>(n, jobs));
}

}  // namespace

int cmd_simulate(const RunConfig& config, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const DynamicsParams params = config.dynamics_params();
  const Trajectory traj = simulate(config.initial_state(), params, config.dt, config.t_end);

  const fs::path csv = fs::path(out_dir) / "trajectory.csv";
  write_trajectory_csv(csv.string(), traj);

  std::vector<PanelSpec> panels;
  for (const char* name : {"x", "y", "z", "psi", "theta", "phi", "vx", "vy", "vz",
                           "wx", "wy", "wz", "u"})
    panels.push_back({name, name});
  plot_csv_panels(csv.string(), (fs::path(out_dir) / "states.svg").string(), "t", panels);

  if (traj.status != Trajectory::Status::Ok) {
    std::cerr << "simulation failed at t = " << format_g9(traj.failure_time)
              << (traj.status == Trajectory::Status::ActuationLost
                      ? " (actuation lost)\n"
                      : " (non-finite state)\n");
    return kExitSimulation;
  }
  std::cout << "steps: " << traj.points.size() - 1 << "\n";
  std::cout << "settling time (|z - z_d| < 1%): "
            << (traj.settling_time >= 0.0 ? format_g9(traj.settling_time) : "never")
            << " s\n";
  std::cout << "final |(theta, phi)|: " << format_g9(traj.final_attitude_norm)
            << " rad\n";
  std::cout << "last saturated: "
            << (traj.last_saturated_time >= 0.0 ? format_g9(traj.last_saturated_time)
                                                : "never")
            << "\n";
  return kExitOk;
}

int cmd_linearize(const RunConfig& config, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const DynamicsParams params = config.dynamics_params();

  LinearizeOptions lin;
  lin.spin = config.roa.spin;
  const LinearModel model = linearize_internal(params, lin);
  write_matrix_csv((fs::path(out_dir) / "A.csv").string(), model.A);

  const auto [hurwitz, abscissa] = is_hurwitz(model.A);
  const double coeffs[8] = {model.a1, model.a2, model.a3, model.a4,
                            model.a5, model.a6, model.a7, model.a8};
  for (int k = 0; k < 8; ++k)
    std::cout << "A" << k + 1 << " = " << format_g9(coeffs[k]) << "\n";

  Eigen::EigenSolver<Eigen::MatrixXd> es(model.A, false);
  std::cout << "eigenvalues:\n";
  for (int k = 0; k < kInternalDim; ++k)
    std::cout << "  " << format_g9(es.eigenvalues()[k].real()) << " + "
              << format_g9(es.eigenvalues()[k].imag()) << "i\n";
  std::cout << "spectral abscissa: " << format_g9(abscissa) << "\n";
  std::cout << "hurwitz: " << (hurwitz ? "yes" : "no") << "\n";

  if (!hurwitz) return kExitNotHurwitz;

  const QuadraticLyapunov lyap =
      solve_lyapunov(model.A, Eigen::MatrixXd::Identity(kInternalDim, kInternalDim));
  write_matrix_csv((fs::path(out_dir) / "P.csv").string(), lyap.P);
  return kExitOk;
}

int cmd_roa(const RunConfig& config, const std::string& out_dir,
            const std::string& sdpa_export) {
  fs::create_directories(out_dir);
  RoaResult r;
  try {
    r = run_roa_pipeline(config);
  } catch (const NotHurwitzError& err) {
    std::cerr << err.what() << "\n";
    return kExitNotHurwitz;
  } catch (const CertificationError& err) {
    std::cerr << err.what() << "\n";
    return kExitCertification;
  }

  write_matrix_csv((fs::path(out_dir) / "A.csv").string(), r.model.A);
  write_matrix_csv((fs::path(out_dir) / "P.csv").string(), r.P);
  write_projection_files(r, out_dir);

  if (!sdpa_export.empty()) {
    const SosProgram program = assemble_sos(r.P, r.field, config.roa.multiplier_degree);
    export_sdpa(program, sdpa_export);
    std::cout << "sdpa export: " << sdpa_export << " (" << program.sdp.num_constraints
              << " constraints, gram " << program.gram_basis.size() << ", multiplier "
              << program.multiplier_basis.size() << ")\n";
  }

  std::cout << "rho: " << format_g9(r.estimate.rho)
            << (r.estimate.possibly_unbounded ? " (possibly unbounded)" : "") << "\n";
  for (int k = 0; k < 4; ++k) {
    const auto& proj = r.projections[k];
    std::cout << kInternalNames[proj.axis_i] << "-" << kInternalNames[proj.axis_j]
              << " extents: " << format_g9(proj.extent_i) << ", "
              << format_g9(proj.extent_j) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, const std::string& out_dir) {
  if (!config.sweep) {
    std::cerr << "sweep command requires a sweep block in the config\n";
    return kExitConfig;
  }
  fs::create_directories(out_dir);
  const SweepConfig& sweep = *config.sweep;

  struct Row {
    double value = 0.0;
    std::string status = "ok";
    bool hurwitz = false;
    double abscissa = std::numeric_limits<double>::quiet_NaN();
    double rho = std::numeric_limits<double>::quiet_NaN();
    double extents[4][2] = {};
    fs::path dir;
  };
  std::vector<Row> rows(sweep.values.size());

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= sweep.values.size()) return;
      Row& row = rows[idx];
      row.value = sweep.values[idx];
      row.dir = fs::path(out_dir) /
                (sweep.parameter + "=" + format_g9(row.value));
      fs::create_directories(row.dir);
      try {
        const RunConfig sub = with_parameter(config, sweep.parameter, row.value);
        const RoaResult r = run_roa_pipeline(sub);
        row.hurwitz = r.hurwitz;
        row.abscissa = r.abscissa;
        row.rho = r.estimate.rho;
        for (int k = 0; k < 4; ++k) {
          row.extents[k][0] = r.projections[k].extent_i;
          row.extents[k][1] = r.projections[k].extent_j;
        }
        write_projection_files(r, row.dir);
      } catch (const NotHurwitzError& err) {
        row.status = "not-hurwitz";
        row.hurwitz = false;
      } catch (const std::exception& err) {
        row.status = std::string("error: ") + err.what();
      }
    }
  };

  const int n_workers = worker_count(sweep.values.size());
  std::vector<std::thread> workers;
  for (int w = 0; w < n_workers; ++w) workers.emplace_back(work);
  for (auto& t : workers) t.join();

  const bool all_metrics = sweep.metrics.empty();
  auto wants = [&](const std::string& m) {
    return all_metrics ||
           std::find(sweep.metrics.begin(), sweep.metrics.end(), m) != sweep.metrics.end();
  };

  std::ofstream out(fs::path(out_dir) / "sweep.csv");
  out << sweep.parameter << ",status";
  if (wants("hurwitz")) out << ",hurwitz";
  if (wants("spectral_abscissa")) out << ",spectral_abscissa";
  if (wants("rho")) out << ",rho";
  if (wants("extents"))
    for (auto [i, j] : kPlanes)
      out << ",ext_" << kInternalNames[i] << kInternalNames[j] << "_" << kInternalNames[i]
          << ",ext_" << kInternalNames[i] << kInternalNames[j] << "_" << kInternalNames[j];
  out << "\n";
  for (const Row& row : rows) {
    out << format_g9(row.value) << "," << row.status;
    if (wants("hurwitz")) out << "," << (row.hurwitz ? 1 : 0);
    if (wants("spectral_abscissa")) out << "," << format_g9(row.abscissa);
    if (wants("rho")) out << "," << format_g9(row.rho);
    if (wants("extents"))
      for (int k = 0; k < 4; ++k)
        out << "," << format_g9(row.extents[k][0]) << "," << format_g9(row.extents[k][1]);
    out << "\n";
  }
  out.close();

  // two-case overlays in the style of the reported projections
  if (sweep.values.size() == 2 && rows[0].status == "ok" && rows[1].status == "ok") {
    for (auto [i, j] : kPlanes) {
      const std::string ni = kInternalNames[i];
      const std::string nj = kInternalNames[j];
      const std::string file = "projection_" + ni + "_" + nj + ".csv";
      plot_csv_regions(
          {{(rows[0].dir / file).string(),
            sweep.parameter + " = " + format_g9(rows[0].value), "#e86aa0"},
           {(rows[1].dir / file).string(),
            sweep.parameter + " = " + format_g9(rows[1].value), "#7ec8e3"}},
          (fs::path(out_dir) / ("overlay_" + ni + "_" + nj + ".svg")).string(),
          "ROA projection " + ni + "-" + nj, ni, nj);
    }
  }

  for (const Row& row : rows)
    if (row.status != "ok")
      std::cerr << sweep.parameter << " = " << format_g9(row.value) << ": " << row.status
                << "\n";
  return kExitOk;
}

}  // namespace sailroa::cli
