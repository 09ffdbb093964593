#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sailroa/dynamics.hpp"

#include <cmath>

#include "sailroa/errors.hpp"

using namespace sailroa;

namespace {

const double kAlpha40 = 40.0 * M_PI / 180.0;

DynamicsParams sail_params(int n_rays = 32, int mesh = 64) {
  DynamicsParams p;
  p.shape = SailShape::cone(1.0, kAlpha40);
  p.props = mass_properties(p.shape, MassModel{0.01, 0.01, 2.0}, mesh, mesh);
  p.beam = BeamProfile::from_fwhm(0.0, 1.0);
  p.damping = damping_matrix(0.01, 0.01, 0.01);
  p.z_setpoint = 10.0;
  p.n_rays = n_rays;
  return p;
}

}  // namespace

TEST_CASE("state vector round trip keeps the fixed ordering") {
  VehicleState s;
  s.position = {1, 2, 3};
  s.angles = {4, 5, 6};
  s.velocity = {7, 8, 9};
  s.omega_body = {10, 11, 12};
  const Vector12 v = s.to_vector();
  for (int k = 0; k < 12; ++k) CHECK(v[k] == k + 1);
  CHECK(VehicleState::from_vector(v).to_vector() == v);
}

TEST_CASE("damping matrix layout") {
  const Eigen::Matrix3d d = damping_matrix(0.01, 0.01, 0.01);
  CHECK(d(0, 0) == 0.01);
  CHECK(d(0, 1) == 0.01);
  CHECK(d(1, 0) == -0.01);
  CHECK(d(1, 1) == 0.01);
  CHECK(d.row(2).norm() == 0.0);
  CHECK(d.col(2).norm() == 0.0);
  // dissipation is strictly positive on every translational direction
  for (double a = 0.0; a < 6.3; a += 0.37) {
    const Eigen::Vector3d v(std::cos(a), std::sin(a), 0.0);
    CHECK(v.dot(d * v) == doctest::Approx(0.01).epsilon(1e-12));
  }
}

TEST_CASE("levitation control law") {
  auto params = sail_params();
  const double gz = 6.0e-9;

  SUBCASE("hover power balances gravity") {
    const auto c = levitation_control(10.0, 0.0, params, gz);
    CHECK(c.power == doctest::Approx(0.02 * 9.8 / gz).epsilon(1e-12));
    CHECK_FALSE(c.saturated);
  }
  SUBCASE("clamp boundary at e = +9.8") {
    const auto c = levitation_control(10.0 + 9.8, 0.0, params, gz);
    CHECK(c.power == 0.0);
    CHECK_FALSE(c.saturated);  // raw power is exactly zero, clamp not binding
  }
  SUBCASE("beam cannot pull") {
    const auto c = levitation_control(30.0, 0.0, params, gz);
    CHECK(c.power == 0.0);
    CHECK(c.saturated);
  }
  SUBCASE("lost actuation") {
    CHECK_THROWS_AS(levitation_control(10.0, 0.0, params, 0.0), ActuationLostError);
    CHECK_THROWS_AS(levitation_control(10.0, 0.0, params, 1e-13), ActuationLostError);
  }
}

TEST_CASE("free fall at zero power") {
  auto params = sail_params();
  params.damping.setZero();
  VehicleState s;
  s.position = {0, 0, 10};
  const Vector12 dot = state_derivative(s, params, 0.0);
  CHECK(dot.segment<3>(0).norm() == 0.0);
  CHECK(dot.segment<3>(3).norm() == 0.0);
  CHECK(dot[6] == 0.0);
  CHECK(dot[7] == 0.0);
  CHECK(dot[8] == doctest::Approx(-9.8).epsilon(1e-15));
  CHECK(dot.segment<3>(9).norm() == 0.0);
}

TEST_CASE("principal-axis spin is torque free") {
  auto params = sail_params();
  VehicleState s;
  s.position = {0, 0, 10};
  s.omega_body = {0, 0, 2.0};
  const Vector12 dot = state_derivative(s, params, 0.0);
  CHECK(dot.segment<3>(9).norm() < 1e-14);
}

TEST_CASE("gyroscopic rates match the hand-evaluated cross product") {
  // J = diag(1,2,3), w = (0.1, 0, 1): J^{-1}(-w x Jw) = (0, 0.1, 0)
  auto params = sail_params();
  params.props.inertia = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  VehicleState s;
  s.position = {0, 0, 10};
  s.omega_body = {0.1, 0.0, 1.0};
  const Vector12 dot = state_derivative(s, params, 0.0);
  CHECK(dot[9] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(dot[10] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(dot[11] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("rk4 against the exponential-decay oracle") {
  // v_dot = -v: one step of dt = 0.1 from 1 gives 0.9048375 (RK4 truncation)
  auto decay = [](const Vector12& y) { return (-y).eval(); };
  Vector12 y = Vector12::Zero();
  y[8] = 1.0;
  const Vector12 next = rk4_step(y, 0.1, decay);
  CHECK(next[8] == doctest::Approx(0.9048375).epsilon(1e-7));

  SUBCASE("global error shrinks ~16x when dt halves") {
    auto integrate = [&](double dt) {
      Vector12 state = y;
      const int n = static_cast<int>(std::llround(1.0 / dt));
      for (int k = 0; k < n; ++k) state = rk4_step(state, dt, decay);
      return std::abs(state[8] - std::exp(-1.0));
    };
    const double ratio = integrate(0.1) / integrate(0.05);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
  }
}

TEST_CASE("zero derivative field is a fixed point") {
  auto zero = [](const Vector12&) { return Vector12::Zero().eval(); };
  Vector12 y;
  y << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
  CHECK(rk4_step(y, 0.25, zero) == y);
}

TEST_CASE("free rigid body conserves energy and spin component") {
  auto params = sail_params();
  params.damping.setZero();
  params.props.inertia = Eigen::Vector3d(0.03, 0.03, 0.005).asDiagonal();

  VehicleState s;
  s.position = {0, 0, 10};
  s.velocity = {0.1, -0.2, 0.3};
  s.omega_body = {0.4, -0.1, 2.0};

  auto energy = [&](const VehicleState& st) {
    const double m = params.props.total_mass;
    return 0.5 * m * st.velocity.squaredNorm() + m * 9.8 * st.position.z() +
           0.5 * st.omega_body.dot(params.props.inertia * st.omega_body);
  };
  auto deriv = [&](const Vector12& y) {
    return state_derivative(VehicleState::from_vector(y), params, 0.0);
  };

  const double e0 = energy(s);
  const double wz0 = s.omega_body.z();
  Vector12 y = s.to_vector();
  for (int k = 0; k < 1000; ++k) y = rk4_step(y, 1e-3, deriv);
  const VehicleState end = VehicleState::from_vector(y);
  CHECK(std::abs(energy(end) - e0) < 1e-10 * std::abs(e0));
  // symmetric top: the z spin rate stays put (up to roundoff in the cross term)
  CHECK(std::abs(end.omega_body.z() - wz0) < 1e-13);
}

TEST_CASE("hover equilibrium is invariant") {
  auto params = sail_params();
  VehicleState s;
  s.position = {0, 0, 10};
  const auto traj = simulate(s, params, 0.01, 10.0);
  REQUIRE(traj.status == Trajectory::Status::Ok);
  for (const auto& pt : traj.points) {
    CHECK(std::abs(pt.state.position.z() - 10.0) < 1e-6);
    CHECK(pt.state.position.head<2>().norm() < 1e-6);
    CHECK(pt.state.angles.norm() < 1e-6);
    CHECK(pt.state.velocity.norm() < 1e-6);
  }
}

TEST_CASE("actuated-subsystem Lyapunov function decreases") {
  auto params = sail_params();
  VehicleState s;
  s.position = {0, 0, 10.5};
  s.velocity = {0, 0, 0.3};
  auto va = [&](const VehicleState& st) {
    const double e = st.position.z() - params.z_setpoint;
    return 0.5 * e * e + 0.5 * st.velocity.z() * st.velocity.z();
  };
  const auto traj = simulate(s, params, 0.005, 5.0);
  REQUIRE(traj.status == Trajectory::Status::Ok);
  CHECK(traj.last_saturated_time < 0.0);
  double prev = va(traj.points.front().state);
  for (std::size_t k = 1; k < traj.points.size(); ++k) {
    const double cur = va(traj.points[k].state);
    CHECK(cur <= prev + 1e-9);
    // strict decrease while v_z is away from zero
    if (std::abs(traj.points[k - 1].state.velocity.z()) > 1e-3) CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("row-count contract: one row per step") {
  auto params = sail_params(16, 24);
  VehicleState s;
  s.position = {0, 0, 10};
  const auto traj = simulate(s, params, 0.001, 0.01);
  CHECK(traj.points.size() == 10);
  CHECK(traj.points.front().t == 0.0);
  CHECK(traj.points.back().t == doctest::Approx(0.009));
}

TEST_CASE("edge-on start fails loudly, not with NaNs") {
  auto params = sail_params();
  VehicleState s;
  s.position = {0, 0, 10};
  s.angles = {0.0, 0.0, M_PI / 2.0};  // sail edge-on to the beam
  const auto traj = simulate(s, params, 0.002, 3.0);
  CHECK(traj.status != Trajectory::Status::Ok);
  CHECK(traj.failure_time >= 0.0);
  for (const auto& pt : traj.points) CHECK(pt.state.all_finite());
}

TEST_CASE("closed-loop rollout is deterministic") {
  auto params = sail_params(24, 32);
  VehicleState s;
  s.position = {0.02, 0, 10};
  s.angles = {0, 0.05, -0.03};
  const auto a = simulate(s, params, 0.005, 1.0);
  const auto b = simulate(s, params, 0.005, 1.0);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    CHECK(a.points[k].state.to_vector() == b.points[k].state.to_vector());
    CHECK(a.points[k].u == b.points[k].u);
  }
}

TEST_CASE("simulate argument guards") {
  auto params = sail_params(16, 24);
  VehicleState s;
  s.position = {0, 0, 10};
  CHECK_THROWS_AS(simulate(s, params, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(simulate(s, params, 0.01, 0.0), std::invalid_argument);
}
