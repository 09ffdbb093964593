#include "sailroa/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "sailroa/errors.hpp"

namespace sailroa {

Vector12 VehicleState::to_vector() const {
  Vector12 v;
  v << position, angles, velocity, omega_body;
  return v;
}

VehicleState VehicleState::from_vector(const Vector12& v) {
  VehicleState s;
  s.position = v.segment<3>(0);
  s.angles = v.segment<3>(3);
  s.velocity = v.segment<3>(6);
  s.omega_body = v.segment<3>(9);
  return s;
}

bool VehicleState::all_finite() const { return to_vector().allFinite(); }

Eigen::Matrix3d damping_matrix(double d11, double d12, double d22) {
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  d(0, 0) = d11;
  d(0, 1) = d12;
  d(1, 0) = -d12;
  d(1, 1) = d22;
  return d;
}

ControlOutput levitation_control(double z, double vz, const DynamicsParams& params,
                                 double gz_per_watt) {
  if (gz_per_watt <= 1e-12)
    throw ActuationLostError("levitation_control: G_z <= 0, sail out of beam or inverted");
  ControlOutput out;
  out.gz = gz_per_watt;
  const double e = z - params.z_setpoint;
  const double raw = -params.props.total_mass / gz_per_watt *
                     (kGravityZ + params.kp * e + params.kd * vz);
  out.power = std::max(raw, 0.0);
  out.saturated = raw < 0.0;
  return out;
}

namespace {

Vector12 assemble_rates(const VehicleState& s, const DynamicsParams& params,
                        const Eigen::Vector3d& force, const Eigen::Vector3d& torque_body) {
  const double mass = params.props.total_mass;
  const Eigen::Matrix3d rate = euler_rate_matrix(s.euler());

  Vector12 dot;
  dot.segment<3>(0) = s.velocity;
  dot.segment<3>(3) = rate * s.omega_body;
  dot.segment<3>(6) = force / mass + Eigen::Vector3d(0.0, 0.0, kGravityZ) -
                      (params.damping * s.velocity) / mass;
  const Eigen::Matrix3d& inertia = params.props.inertia;
  dot.segment<3>(9) = inertia.ldlt().solve(
      -s.omega_body.cross(inertia * s.omega_body) + torque_body);
  return dot;
}

struct StepResult {
  VehicleState next;
  ControlOutput first_stage;
};

// One closed-loop RK4 step; one ray trace per stage, shared between the
// control evaluation and the applied force/torque.
StepResult closed_loop_step(const VehicleState& state, const DynamicsParams& params,
                            double dt, const ControlPolicy& policy) {
  ControlOutput first{};
  bool captured = false;
  auto deriv = [&](const Vector12& y) {
    const VehicleState s = VehicleState::from_vector(y);
    const ForceTorque ft = force_torque(s.position, s.euler(), params.shape,
                                        params.props, params.beam, params.n_rays);
    const ControlOutput ctrl = policy(s, ft.force_per_watt.z());
    if (!captured) {
      first = ctrl;
      captured = true;
    }
    return assemble_rates(s, params, ctrl.power * ft.force_per_watt,
                          ctrl.power * ft.torque_body_per_watt);
  };
  StepResult out;
  out.next = VehicleState::from_vector(rk4_step(state.to_vector(), dt, deriv));
  out.first_stage = first;
  return out;
}

}  // namespace

Vector12 state_derivative(const VehicleState& state, const DynamicsParams& params,
                          double u) {
  if (u == 0.0)
    return assemble_rates(state, params, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
  const ForceTorque ft = force_torque(state.position, state.euler(), params.shape,
                                      params.props, params.beam, params.n_rays);
  return assemble_rates(state, params, u * ft.force_per_watt,
                        u * ft.torque_body_per_watt);
}

VehicleState rk4_step(const VehicleState& state, const DynamicsParams& params,
                      double dt, const ControlPolicy& policy) {
  return closed_loop_step(state, params, dt, policy).next;
}

Trajectory simulate(const VehicleState& initial, const DynamicsParams& params,
                    double dt, double t_end) {
  if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate: t_end must be > 0");

  const ControlPolicy policy = [&params](const VehicleState& s, double gz) {
    return levitation_control(s.position.z(), s.velocity.z(), params, gz);
  };

  Trajectory traj;
  const auto n_steps = static_cast<long>(std::llround(t_end / dt));
  traj.points.reserve(n_steps);

  // one row per step: the pre-step state and the control applied over the step
  VehicleState state = initial;
  for (long k = 0; k < n_steps; ++k) {
    const double t = k * dt;
    TrajectoryPoint pt;
    pt.t = t;
    pt.state = state;
    try {
      const StepResult step = closed_loop_step(state, params, dt, policy);
      pt.u = step.first_stage.power;
      pt.saturated = step.first_stage.saturated;
      traj.points.push_back(pt);
      if (pt.saturated) traj.last_saturated_time = t;
      state = step.next;
    } catch (const ActuationLostError&) {
      traj.points.push_back(pt);
      traj.status = Trajectory::Status::ActuationLost;
      traj.failure_time = t;
      break;
    } catch (const SingularityError&) {
      traj.points.push_back(pt);
      traj.status = Trajectory::Status::ActuationLost;
      traj.failure_time = t;
      break;
    }
    if (!state.all_finite()) {
      traj.status = Trajectory::Status::NonFinite;
      traj.failure_time = t + dt;
      break;
    }
  }

  if (traj.status == Trajectory::Status::Ok && !traj.points.empty()) {
    const double band = 0.01 * std::abs(params.z_setpoint);
    double settle = -1.0;
    for (auto it = traj.points.rbegin(); it != traj.points.rend(); ++it) {
      if (std::abs(it->state.position.z() - params.z_setpoint) < band)
        settle = it->t;
      else
        break;
    }
    traj.settling_time = settle;
    const auto& last = traj.points.back().state;
    traj.final_attitude_norm = std::hypot(last.angles[1], last.angles[2]);
  }
  return traj;
}

}  // namespace sailroa
