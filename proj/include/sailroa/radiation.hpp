#pragma once

#include <Eigen/Dense>

#include "sailroa/geometry.hpp"

namespace sailroa {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Radially symmetric Gaussian beam fixed on the inertial origin, aimed +z.
struct BeamProfile {
  double total_power = 0.0;               // P0, W
  double sigma = 1.0;                     // m
  Eigen::Vector3d axis{0.0, 0.0, 1.0};    // unit, inertial

  double fwhm() const { return 2.0 * sigma * std::sqrt(2.0 * std::log(2.0)); }
  static BeamProfile from_fwhm(double total_power, double fwhm);
};

/// Beam power flux at inertial transverse position (x, y), W/m^2.
double beam_flux(double x, double y, const BeamProfile& beam);

/// x-y'-z'' convention: roll phi about x, pitch theta about the new y,
/// yaw psi about the twice-rotated z. Stored unwrapped.
struct EulerAngles {
  double yaw = 0.0;    // psi
  double pitch = 0.0;  // theta
  double roll = 0.0;   // phi
};

/// Body-to-inertial rotation, R = R_x(phi) R_y(theta) R_z(psi).
Eigen::Matrix3d rotation_body_to_inertial(const EulerAngles& angles);

/// L mapping body angular velocity to Euler-angle rates (psi_dot, theta_dot,
/// phi_dot), consistent with d/dt R = R [omega_b]x. Throws SingularityError
/// within 1e-6 rad of pitch = +-pi/2.
Eigen::Matrix3d euler_rate_matrix(const EulerAngles& angles);

struct ForceTorque {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();        // N, inertial
  Eigen::Vector3d torque_body = Eigen::Vector3d::Zero();  // N m, body frame
  Eigen::Vector3d force_per_watt = Eigen::Vector3d::Zero();        // G, N/W
  Eigen::Vector3d torque_body_per_watt = Eigen::Vector3d::Zero();  // N m / W
  int rays_hit = 0;
  int warnings = 0;  // intersection solves that failed to converge
};

/// Radiation pressure on a fully reflective sail from an n_rays x n_rays grid
/// over the square of side 3w centered on the sail's transverse offset.
/// Single specular bounce; rays with b.n <= 0 or missing the sail contribute
/// nothing. Force scales exactly linearly with total beam power.
ForceTorque force_torque(const Eigen::Vector3d& position, const EulerAngles& attitude,
                         const SailShape& shape, const MassProperties& props,
                         const BeamProfile& beam, int n_rays);

}  // namespace sailroa
