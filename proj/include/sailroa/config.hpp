#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sailroa/dynamics.hpp"

namespace sailroa {

struct SailConfig {
  std::string kind = "cone";  // cone | polynomial | spherical_cap
  double base_radius = 1.0;
  double cone_angle_deg = 40.0;
  Eigen::Matrix<double, 5, 1> coefficients = Eigen::Matrix<double, 5, 1>::Zero();
  double cap_base_radius = 0.5;
  double curvature_radius = 1.0;
};

struct InitialConfig {
  double x = 0.0, y = 0.0;
  double z = -1.0;  // negative: start at the levitation setpoint
  double yaw_deg = 0.0, pitch_deg = 0.0, roll_deg = 0.0;
  double vx = 0.0, vy = 0.0, vz = 0.0;
  double wx = 0.0, wy = 0.0, wz = 0.0;
};

struct RoaConfig {
  int n_samples = 20000;
  double bisection_tol = 1e-3;
  double rho_max = 1e6;
  double stencil_radius = 0.1;
  int multiplier_degree = 2;
  double spin = 0.0;
};

struct SweepConfig {
  std::string parameter;  // cone_angle | mast_length
  std::vector<double> values;
  std::vector<std::string> metrics;  // empty: all
};

/// Angles are degrees in the file and radians internally.
struct RunConfig {
  SailConfig sail;
  MassModel mass;
  double beam_fwhm = 0.0;  // 0: beam FWHM defaults to the sail base radius
  double d11 = 0.01, d12 = 0.01, d22 = 0.01;
  double z_setpoint = 10.0;
  double dt = 1e-3;
  double t_end = 60.0;
  int n_rays = 100;
  int mesh_radial = 200;
  int mesh_azimuthal = 200;
  InitialConfig initial;
  RoaConfig roa;
  std::string output_dir = "out";
  std::optional<SweepConfig> sweep;

  SailShape shape() const;
  DynamicsParams dynamics_params() const;
  VehicleState initial_state() const;
};

/// Parses and validates; unknown keys are rejected. Throws ConfigError.
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Normalized echo; parse(print(c)) reproduces an identical RunConfig.
std::string print_config(const RunConfig& config);

/// Applies a sweep parameter value to a copy of the base config.
RunConfig with_parameter(const RunConfig& base, const std::string& parameter,
                         double value);

}  // namespace sailroa
