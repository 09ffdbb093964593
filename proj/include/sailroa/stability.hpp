#pragma once

#include <Eigen/Dense>

#include <utility>

#include "sailroa/dynamics.hpp"
#include "sailroa/polynomial.hpp"

namespace sailroa {

using Vector8 = Eigen::Matrix<double, 8, 1>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Internal-dynamics state order: x_u = (x, y, theta, phi, vx, vy, wx, wy).
/// Yaw and z-spin are excluded; the z-spin rate enters as a fixed parameter.
inline constexpr int kInternalDim = 8;

/// Hover beam power u* = 9.8 M / G_z at the upright centered pose.
double hover_power(const DynamicsParams& params);

/// Reduced 8-state derivative with the beam power held at u_star
/// (psi = 0, z = z_d, vz = 0, wz = spin).
Vector8 internal_derivative(const DynamicsParams& params, const Vector8& xu,
                            double u_star, double spin = 0.0);

struct LinearModel {
  Matrix8 A = Matrix8::Zero();
  // named coefficients of the linearized internal dynamics
  double a1 = 0.0;  // (1/M) dFx/dx
  double a2 = 0.0;  // (1/M) dFx/dtheta
  double a3 = 0.0;  // (1/Jx) dtaux/dy
  double a4 = 0.0;  // (1/Jx) dtaux/dphi
  double a5 = 0.0;  // ((Jx - Jz)/Jx) wz
  double a6 = 0.0;  // -D11/M
  double a7 = 0.0;  // -D22/M
  double a8 = 0.0;  // -D12/M
};

struct LinearizeOptions {
  double spin = 0.0;        // wz held fixed during linearization, rad/s
  double step = 1e-6;       // central-difference step, m or rad
  bool live_power = false;  // re-solve hover power at each probe pose
};

/// Central finite differences of the internal dynamics about x_u = 0, with a
/// step-halving plateau check. Throws LinearizationError when the residual
/// between step sizes stays above tolerance.
LinearModel linearize_internal(const DynamicsParams& params,
                               const LinearizeOptions& options = {});

/// (flag, spectral abscissa); flag is true iff max Re(lambda) < -1e-9.
std::pair<bool, double> is_hurwitz(const Eigen::Ref<const Eigen::MatrixXd>& A);

struct QuadraticLyapunov {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
};

/// Unique symmetric P with P A + A^T P = -Q, via the vectorized linear
/// system. Requires A Hurwitz and Q symmetric positive definite.
QuadraticLyapunov solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                 const Eigen::Ref<const Eigen::MatrixXd>& Q);

struct TaylorOptions {
  double spin = 0.0;
  double radius = 0.1;        // stencil radius in state units
  double max_residual = 0.1;  // relative fit residual allowed per component
  bool live_power = false;
};

/// Degree-3 polynomial model of the internal dynamics about the origin:
/// linear block from linearize_internal, higher orders from a least-squares
/// fit of the exact derivative on a deterministic stencil.
PolyVectorField taylor_expand_internal(const DynamicsParams& params, int degree = 3,
                                       const TaylorOptions& options = {});

}  // namespace sailroa
