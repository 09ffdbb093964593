#include "sailroa/stability.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "sailroa/errors.hpp"
#include "sailroa/lowdisc.hpp"

namespace sailroa {

double hover_power(const DynamicsParams& params) {
  const ForceTorque ft =
      force_torque(Eigen::Vector3d(0.0, 0.0, params.z_setpoint), EulerAngles{},
                   params.shape, params.props, params.beam, params.n_rays);
  const double gz = ft.force_per_watt.z();
  if (gz <= 1e-12)
    throw ActuationLostError("hover_power: G_z <= 0 at the upright pose");
  return -kGravityZ * params.props.total_mass / gz;
}

Vector8 internal_derivative(const DynamicsParams& params, const Vector8& xu,
                            double u_star, double spin) {
  const Eigen::Vector3d position(xu[0], xu[1], params.z_setpoint);
  const EulerAngles attitude{0.0, xu[2], xu[3]};
  const Eigen::Vector3d omega(xu[6], xu[7], spin);

  const ForceTorque ft = force_torque(position, attitude, params.shape, params.props,
                                      params.beam, params.n_rays);
  const Eigen::Vector3d force = u_star * ft.force_per_watt;
  const Eigen::Vector3d torque = u_star * ft.torque_body_per_watt;

  const double mass = params.props.total_mass;
  const Eigen::Matrix3d rate = euler_rate_matrix(attitude);
  const Eigen::Vector3d alpha_dot = rate * omega;  // (psi_dot, theta_dot, phi_dot)

  const Eigen::Vector3d v(xu[4], xu[5], 0.0);
  const Eigen::Vector3d v_dot = force / mass - (params.damping * v) / mass;

  const Eigen::Matrix3d& inertia = params.props.inertia;
  const Eigen::Vector3d omega_dot =
      inertia.ldlt().solve(-omega.cross(inertia * omega) + torque);

  Vector8 f;
  f << xu[4], xu[5], alpha_dot[1], alpha_dot[2], v_dot[0], v_dot[1], omega_dot[0],
      omega_dot[1];
  return f;
}

namespace {

double live_hover_power(const DynamicsParams& params, const Vector8& xu) {
  const ForceTorque ft = force_torque(Eigen::Vector3d(xu[0], xu[1], params.z_setpoint),
                                      EulerAngles{0.0, xu[2], xu[3]}, params.shape,
                                      params.props, params.beam, params.n_rays);
  const double gz = ft.force_per_watt.z();
  if (gz <= 1e-12) throw ActuationLostError("live hover power: G_z <= 0");
  return -kGravityZ * params.props.total_mass / gz;
}

Matrix8 finite_difference_jacobian(const DynamicsParams& params, double u_star,
                                   const LinearizeOptions& opt, double step) {
  Matrix8 A;
  for (int j = 0; j < kInternalDim; ++j) {
    Vector8 xp = Vector8::Zero();
    Vector8 xm = Vector8::Zero();
    xp[j] = step;
    xm[j] = -step;
    const double up = opt.live_power ? live_hover_power(params, xp) : u_star;
    const double um = opt.live_power ? live_hover_power(params, xm) : u_star;
    const Vector8 fp = internal_derivative(params, xp, up, opt.spin);
    const Vector8 fm = internal_derivative(params, xm, um, opt.spin);
    A.col(j) = (fp - fm) / (2.0 * step);
  }
  return A;
}

}  // namespace

LinearModel linearize_internal(const DynamicsParams& params,
                               const LinearizeOptions& options) {
  const double u_star = hover_power(params);

  // Step-halving plateau check. A ray flipping across the sail rim inside the
  // probe interval shows up as a large disagreement; shift the step and retry.
  double step = options.step;
  Matrix8 A;
  bool converged = false;
  for (int attempt = 0; attempt < 4 && !converged; ++attempt) {
    A = finite_difference_jacobian(params, u_star, options, step);
    const Matrix8 A2 = finite_difference_jacobian(params, u_star, options, 2.0 * step);
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    const double residual = (A - A2).cwiseAbs().maxCoeff();
    if (residual <= 1e-4 * scale)
      converged = true;
    else
      step *= 1.9;
  }
  if (!converged)
    throw LinearizationError(
        "linearize_internal: finite-difference residual failed the plateau check");

  LinearModel model;
  model.A = A;
  model.a1 = A(4, 0);
  model.a2 = A(4, 2);
  model.a3 = A(6, 1);
  model.a4 = A(6, 3);
  model.a5 = A(6, 7);
  model.a6 = A(4, 4);
  model.a7 = A(5, 5);
  model.a8 = A(4, 5);
  return model;
}

std::pair<bool, double> is_hurwitz(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  if (!A.allFinite()) throw std::invalid_argument("is_hurwitz: matrix has non-finite entries");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("is_hurwitz: eigenvalue solver did not converge");
  const double abscissa = solver.eigenvalues().real().maxCoeff();
  return {abscissa < -1e-9, abscissa};
}

QuadraticLyapunov solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                 const Eigen::Ref<const Eigen::MatrixXd>& Q) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || Q.rows() != n || Q.cols() != n)
    throw std::invalid_argument("solve_lyapunov: dimension mismatch");
  if (!Q.isApprox(Q.transpose(), 1e-12))
    throw std::invalid_argument("solve_lyapunov: Q must be symmetric");
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument("solve_lyapunov: Q must be positive definite");
  }
  const auto [hurwitz, abscissa] = is_hurwitz(A);
  if (!hurwitz)
    throw NotHurwitzError("solve_lyapunov: A is not Hurwitz (abscissa " +
                          std::to_string(abscissa) + "), P would not be unique PD");

  // vec(PA) + vec(A^T P) = (A^T (x) I + I (x) A^T) vec(P) = -vec(Q)
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) {
        system(i + n * j, i + n * k) += A(k, j);  // P A
        system(i + n * j, k + n * j) += A(k, i);  // A^T P
      }

  Eigen::VectorXd rhs(n * n);
  for (Eigen::Index j = 0; j < n; ++j) rhs.segment(n * j, n) = -Q.col(j);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const Eigen::VectorXd vec_p = lu.solve(rhs);
  if (!vec_p.allFinite())
    throw std::runtime_error("solve_lyapunov: singular vectorized system");

  Eigen::MatrixXd P(n, n);
  for (Eigen::Index j = 0; j < n; ++j) P.col(j) = vec_p.segment(n * j, n);
  P = 0.5 * (P + P.transpose()).eval();

  const double residual = (P * A + A.transpose() * P + Q).norm();
  if (residual > 1e-10 * Q.norm())
    throw std::runtime_error("solve_lyapunov: residual " + std::to_string(residual) +
                             " exceeds tolerance");
  QuadraticLyapunov out;
  out.P = P;
  out.Q = Q;
  return out;
}

PolyVectorField taylor_expand_internal(const DynamicsParams& params, int degree,
                                       const TaylorOptions& options) {
  if (degree < 2 || degree > 3)
    throw std::invalid_argument("taylor_expand_internal: degree must be 2 or 3");

  LinearizeOptions lin_opt;
  lin_opt.spin = options.spin;
  lin_opt.live_power = options.live_power;
  const LinearModel linear = linearize_internal(params, lin_opt);
  const double u_star = hover_power(params);

  // The velocity and rate coordinates enter the reduced field linearly
  // (damping, spin-fixed gyroscopics) and the Euler-rate rows have closed
  // trigonometric series, so only the pose block (x, y, theta, phi) needs a
  // sampled fit of the ray-traced force and torque.
  constexpr int kPoseDim = 4;
  std::vector<Exponents> pose_basis;  // degree 2..degree in the pose block
  for (const auto& e : monomials_up_to(kPoseDim, degree))
    if (total_degree(e) >= 2) pose_basis.push_back(e);
  const int n_basis = static_cast<int>(pose_basis.size());

  int max_level_count = 0;
  for (int d = 2; d <= degree; ++d) {
    int count = 0;
    for (const auto& e : pose_basis)
      if (total_degree(e) == d) ++count;
    max_level_count = std::max(max_level_count, count);
  }
  const int n_directions = 2 * max_level_count;

  std::vector<Eigen::Vector4d> points;
  const double r = options.radius;
  for (int i = 0; i < kPoseDim; ++i) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[i] = r;
    points.push_back(e);
    points.push_back(-e);
  }
  for (long i = 1; i <= n_directions; ++i) {
    const Eigen::VectorXd dir = halton_sphere_direction(i, kPoseDim);
    for (double rad : {r, 0.7 * r, 0.45 * r}) points.push_back(rad * dir.head<4>());
  }

  const int n_points = static_cast<int>(points.size());
  Eigen::MatrixXd design(n_points, n_basis);
  Eigen::MatrixXd rhs(n_points, kInternalDim);
  Eigen::MatrixXd full(n_points, kInternalDim);  // derivative scale per component
  for (int s = 0; s < n_points; ++s) {
    const Eigen::Vector4d& pose = points[s];
    for (int m = 0; m < n_basis; ++m) {
      double v = 1.0;
      for (int k = 0; k < kPoseDim; ++k)
        for (int p = 0; p < pose_basis[m][k]; ++p) v *= pose[k];
      design(s, m) = v;
    }
    Vector8 x = Vector8::Zero();
    x.head<4>() = pose;
    const double u = options.live_power ? live_hover_power(params, x) : u_star;
    const Vector8 f = internal_derivative(params, x, u, options.spin);
    full.row(s) = f.transpose();
    rhs.row(s) = (f - linear.A * x).transpose();
  }

  // column scaling for conditioning
  Eigen::VectorXd col_scale(n_basis);
  for (int m = 0; m < n_basis; ++m)
    col_scale[m] = std::max(design.col(m).cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::MatrixXd scaled = design * col_scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  if (qr.rank() < n_basis)
    throw ExpansionError("taylor_expand_internal: rank-deficient sampling stencil");
  const Eigen::MatrixXd coeffs =
      col_scale.cwiseInverse().asDiagonal() * qr.solve(rhs);

  // fit-quality check: residual against the derivative scale of each component
  const Eigen::MatrixXd fit_residual = design * coeffs - rhs;
  for (int c = 4; c < kInternalDim; ++c) {
    const double scale = full.col(c).norm();
    if (scale < 1e-12 * n_points) continue;  // identically-zero component
    const double rel = fit_residual.col(c).norm() / scale;
    if (rel > options.max_residual)
      throw ExpansionError("taylor_expand_internal: component " + std::to_string(c) +
                           " fit residual " + std::to_string(rel) + " above tolerance");
  }

  PolyVectorField field;
  field.n_vars = kInternalDim;
  for (int c = 0; c < kInternalDim; ++c) {
    Polynomiald p(kInternalDim);
    for (int j = 0; j < kInternalDim; ++j) {
      if (linear.A(c, j) == 0.0) continue;
      Exponents e(kInternalDim, 0);
      e[j] = 1;
      p.add_term(e, linear.A(c, j));
    }
    field.components.push_back(std::move(p));
  }

  // kinematic rows: exact series of the Euler-rate map at psi = 0
  // (theta_dot = wy is already linear; phi_dot = wx / cos(theta))
  if (degree >= 3) {
    Exponents theta2_wx(kInternalDim, 0);
    theta2_wx[2] = 2;
    theta2_wx[6] = 1;
    field.components[3].add_term(theta2_wx, 0.5);
  }

  // pose-driven force and torque nonlinearities from the sampled fit
  for (int c = 4; c < kInternalDim; ++c)
    for (int m = 0; m < n_basis; ++m) {
      Exponents e(kInternalDim, 0);
      for (int k = 0; k < kPoseDim; ++k) e[k] = pose_basis[m][k];
      field.components[c].add_term(e, coeffs(m, c));
    }
  return field;
}

}  // namespace sailroa
