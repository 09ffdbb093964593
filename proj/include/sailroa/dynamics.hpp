#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "sailroa/geometry.hpp"
#include "sailroa/radiation.hpp"

namespace sailroa {

inline constexpr double kGravityZ = -9.8;  // m/s^2

using Vector12 = Eigen::Matrix<double, 12, 1>;

/// 12-state rigid-body state. Serialization order is fixed:
/// (x, y, z, psi, theta, phi, vx, vy, vz, wx, wy, wz).
struct VehicleState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();   // m, inertial
  Eigen::Vector3d angles = Eigen::Vector3d::Zero();     // psi, theta, phi (rad)
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();   // m/s, inertial
  Eigen::Vector3d omega_body = Eigen::Vector3d::Zero(); // rad/s, body frame

  Vector12 to_vector() const;
  static VehicleState from_vector(const Vector12& v);
  EulerAngles euler() const { return EulerAngles{angles[0], angles[1], angles[2]}; }
  bool all_finite() const;
};

struct DynamicsParams {
  SailShape shape;
  MassProperties props;
  BeamProfile beam;                        // total_power is set by the controller
  Eigen::Matrix3d damping = Eigen::Matrix3d::Zero();  // kg/s, translational
  double z_setpoint = 10.0;                // m
  int n_rays = 100;
  double kp = 1.0;                         // position-error gain
  double kd = 1.0;                         // velocity gain
};

/// Damping matrix from the three configured entries: diagonal dissipative,
/// off-diagonal skew (D21 = -D12), all z couplings zero.
Eigen::Matrix3d damping_matrix(double d11, double d12, double d22);

struct ControlOutput {
  double power = 0.0;    // u = P0, W
  bool saturated = false;
  double gz = 0.0;       // N/W at the current pose
};

/// Levitation feedback u = (-M / G_z) (g_z + kp (z - z_d) + kd v_z), clamped
/// to u >= 0. Throws ActuationLostError when G_z <= 1e-12.
ControlOutput levitation_control(double z, double vz, const DynamicsParams& params,
                                 double gz_per_watt);

/// Full 12-state derivative at beam power u. Power 0 skips the ray trace.
Vector12 state_derivative(const VehicleState& state, const DynamicsParams& params,
                          double u);

/// Classical fixed-step RK4 update for a generic derivative field.
template <typename F>
Vector12 rk4_step(const Vector12& y, double dt, F&& deriv) {
  const Vector12 k1 = deriv(y);
  const Vector12 k2 = deriv((y + 0.5 * dt * k1).eval());
  const Vector12 k3 = deriv((y + 0.5 * dt * k2).eval());
  const Vector12 k4 = deriv((y + dt * k3).eval());
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

using ControlPolicy =
    std::function<ControlOutput(const VehicleState&, double gz_per_watt)>;

/// Closed-loop RK4 step: the control policy is re-evaluated at each of the
/// four stages, sharing one ray trace per stage between control and forces.
VehicleState rk4_step(const VehicleState& state, const DynamicsParams& params,
                      double dt, const ControlPolicy& policy);

struct TrajectoryPoint {
  double t = 0.0;
  VehicleState state;
  double u = 0.0;
  bool saturated = false;
};

struct Trajectory {
  enum class Status { Ok, ActuationLost, NonFinite };

  std::vector<TrajectoryPoint> points;
  Status status = Status::Ok;
  double failure_time = -1.0;

  // convergence diagnostics
  double settling_time = -1.0;        // |z - z_d| < 1% z_d from here on; -1 if never
  double final_attitude_norm = 0.0;   // |(theta, phi)| at the last sample
  double last_saturated_time = -1.0;
};

/// Closed-loop rollout under levitation_control, recording every step.
Trajectory simulate(const VehicleState& initial, const DynamicsParams& params,
                    double dt, double t_end);

}  // namespace sailroa
