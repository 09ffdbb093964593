#include "sailroa/roa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "sailroa/errors.hpp"
#include "sailroa/lowdisc.hpp"

namespace sailroa {

Polynomiald vdot_polynomial(const Eigen::Ref<const Eigen::MatrixXd>& P,
                            const PolyVectorField& f) {
  const int n = f.n_vars;
  if (P.rows() != n || P.cols() != n)
    throw std::invalid_argument("vdot_polynomial: P dimension does not match field");

  Polynomiald vdot(n);
  for (int i = 0; i < n; ++i) {
    Polynomiald grad_i(n);  // dV/dx_i = 2 sum_j P(i,j) x_j
    for (int j = 0; j < n; ++j) {
      if (P(i, j) == 0.0) continue;
      Exponents e(n, 0);
      e[j] = 1;
      grad_i.add_term(e, 2.0 * P(i, j));
    }
    vdot += grad_i * f.components[i];
  }
  return vdot;
}

namespace {

struct ShellSampler {
  Eigen::MatrixXd unit_points;  // columns: points with x'Px = 1
  CompiledPolynomial vdot;
  std::vector<CompiledPolynomial> vdot_grad;
  Eigen::MatrixXd P;

  double refine_worst(Eigen::VectorXd x, double rho, int steps) const {
    // projected gradient ascent of Vdot on the shell {x'Px = rho}
    double best = vdot.eval(x);
    for (int k = 0; k < steps; ++k) {
      Eigen::VectorXd g(x.size());
      for (int i = 0; i < x.size(); ++i) g[i] = vdot_grad[i].eval(x);
      const Eigen::VectorXd normal = P * x;  // gradient of V
      const double nn = normal.squaredNorm();
      if (nn < 1e-300) break;
      Eigen::VectorXd tangent = g - (g.dot(normal) / nn) * normal;
      const double tn = tangent.norm();
      if (tn < 1e-300) break;
      x += (0.05 * x.norm() / tn) * tangent;
      const double v = x.dot(P * x);
      if (!(v > 0.0)) break;
      x *= std::sqrt(rho / v);
      best = std::max(best, vdot.eval(x));
    }
    return best;
  }

  // max Vdot over the sampled shell {x'Px = rho}, gradient-refined
  double worst_vdot(double rho, int refine_steps) const {
    const double scale = std::sqrt(rho);
    double worst = -std::numeric_limits<double>::infinity();
    Eigen::Index worst_col = 0;
    Eigen::VectorXd x(unit_points.rows());
    for (Eigen::Index c = 0; c < unit_points.cols(); ++c) {
      x = scale * unit_points.col(c);
      const double v = vdot.eval(x);
      if (v > worst) {
        worst = v;
        worst_col = c;
      }
    }
    if (refine_steps > 0)
      worst = std::max(worst,
                       refine_worst(scale * unit_points.col(worst_col), rho, refine_steps));
    return worst;
  }
};

}  // namespace

RoaEstimate estimate_rho_sampling(const Eigen::Ref<const Eigen::MatrixXd>& P,
                                  const PolyVectorField& f, const RhoOptions& options) {
  const int n = f.n_vars;
  if (P.rows() != n || P.cols() != n)
    throw std::invalid_argument("estimate_rho_sampling: P dimension mismatch");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("estimate_rho_sampling: P must be positive definite");
  const Eigen::MatrixXd p_inv_sqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();

  ShellSampler sampler;
  sampler.P = P;
  const Polynomiald vdot_poly = vdot_polynomial(P, f);
  sampler.vdot = CompiledPolynomial(vdot_poly);
  for (int i = 0; i < n; ++i)
    sampler.vdot_grad.emplace_back(vdot_poly.derivative(i));
  sampler.unit_points.resize(n, options.n_samples);
  for (int c = 0; c < options.n_samples; ++c)
    sampler.unit_points.col(c) = p_inv_sqrt * halton_sphere_direction(c + 1, n);

  RoaEstimate out;
  out.P = P;
  out.method = "sampling";
  out.n_samples = options.n_samples;

  auto accepted = [&](double rho, double& margin) {
    ++out.levels_tested;
    margin = sampler.worst_vdot(rho, options.refine_steps);
    return margin < 0.0;
  };

  double margin = 0.0;
  if (accepted(options.rho_max, margin)) {
    out.rho = options.rho_max;
    out.possibly_unbounded = true;
    out.worst_vdot = margin;
    return out;
  }

  // geometric descent to the first surviving level
  double hi = options.rho_max;  // rejected
  double lo = -1.0;             // accepted, to find
  double lo_margin = 0.0;
  for (double rho = options.rho_max / 4.0; rho > options.rho_max * 1e-30;
       rho /= 4.0) {
    if (accepted(rho, margin)) {
      lo = rho;
      lo_margin = margin;
      break;
    }
    hi = rho;
  }
  if (lo < 0.0)
    throw CertificationError(
        "estimate_rho_sampling: no level survives refutation down to the minimum rho");

  while ((hi - lo) / lo > options.bisection_tol) {
    const double mid = std::sqrt(hi * lo);
    if (accepted(mid, margin)) {
      lo = mid;
      lo_margin = margin;
    } else {
      hi = mid;
    }
  }

  out.rho = lo;
  out.worst_vdot = lo_margin;
  return out;
}

namespace {

Exponents product(const Exponents& a, const Exponents& b) {
  Exponents e(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) e[k] = a[k] + b[k];
  return e;
}

}  // namespace

SosProgram assemble_sos(const Eigen::Ref<const Eigen::MatrixXd>& P,
                        const PolyVectorField& f, int multiplier_degree) {
  const int n = f.n_vars;
  if (P.rows() != n || P.cols() != n)
    throw std::invalid_argument("assemble_sos: P dimension mismatch");
  if (f.degree() > 3)
    throw std::invalid_argument("assemble_sos: field degree must be <= 3");
  if (multiplier_degree < 0)
    throw std::invalid_argument("assemble_sos: multiplier degree must be >= 0");

  SosProgram prog;
  prog.n_vars = n;
  prog.multiplier_degree = multiplier_degree;

  // V = x'Px, p = x'x
  Polynomiald V(n), p(n);
  for (int i = 0; i < n; ++i) {
    Exponents sq(n, 0);
    sq[i] = 2;
    p.add_term(sq, 1.0);
    for (int j = 0; j < n; ++j) {
      if (P(i, j) == 0.0) continue;
      Exponents e(n, 0);
      e[i] += 1;
      e[j] += 1;
      V.add_term(e, P(i, j));
    }
  }
  const Polynomiald vdot = vdot_polynomial(P, f);
  const Polynomiald pV = p * V;

  if (multiplier_degree % 2 != 0)
    prog.notes += "odd multiplier degree rounded down to " +
                  std::to_string(multiplier_degree - multiplier_degree % 2) +
                  " for the Gram basis; ";
  const int mult_basis_degree = multiplier_degree / 2;

  int constraint_degree = std::max(pV.degree(), 2 * mult_basis_degree + vdot.degree());
  if (constraint_degree % 2 != 0) {
    prog.notes += "odd constraint degree " + std::to_string(constraint_degree) +
                  " rounded up for the Gram basis; ";
    ++constraint_degree;
  }
  const int basis_degree = constraint_degree / 2;

  prog.gram_basis = monomials_up_to(n, basis_degree);
  prog.multiplier_basis = monomials_up_to(n, mult_basis_degree);
  prog.constraint_monomials = monomials_up_to(n, constraint_degree);

  std::map<Exponents, int, GradedLex> row_of;
  for (std::size_t r = 0; r < prog.constraint_monomials.size(); ++r) {
    auto [it, inserted] = row_of.emplace(prog.constraint_monomials[r], static_cast<int>(r) + 1);
    if (!inserted)
      throw std::logic_error("assemble_sos: duplicate monomial in constraint index");
  }

  const int gram_size = static_cast<int>(prog.gram_basis.size());
  const int mult_size = static_cast<int>(prog.multiplier_basis.size());

  SdpaProblem& sdp = prog.sdp;
  sdp.num_constraints = static_cast<int>(prog.constraint_monomials.size());
  sdp.block_sizes = {gram_size, mult_size, -2};
  sdp.rhs.assign(sdp.num_constraints, 0.0);
  for (const auto& [e, c] : pV.terms()) sdp.rhs[row_of.at(e) - 1] = c;

  // accumulate entries per (matrix, block, i, j)
  std::map<std::tuple<int, int, int, int>, double> acc;

  // objective F0: maximize rho = rho_plus - rho_minus
  acc[{0, 3, 1, 1}] += 1.0;
  acc[{0, 3, 2, 2}] += -1.0;

  // constraint Gram block: coefficient of mu collects Gram[a,b] with m_a m_b = mu
  for (int a = 0; a < gram_size; ++a)
    for (int b = a; b < gram_size; ++b) {
      const int row = row_of.at(product(prog.gram_basis[a], prog.gram_basis[b]));
      acc[{row, 1, a + 1, b + 1}] += 1.0;
    }

  // multiplier block: + s(x) Vdot contribution moved to the left-hand side
  for (int a = 0; a < mult_size; ++a)
    for (int b = a; b < mult_size; ++b) {
      const Exponents ab = product(prog.multiplier_basis[a], prog.multiplier_basis[b]);
      for (const auto& [e, c] : vdot.terms()) {
        const int row = row_of.at(product(ab, e));
        acc[{row, 2, a + 1, b + 1}] += c;
      }
    }

  // rho block: + rho * p_mu on the left-hand side
  for (const auto& [e, c] : p.terms()) {
    const int row = row_of.at(e);
    acc[{row, 3, 1, 1}] += c;
    acc[{row, 3, 2, 2}] += -c;
  }

  for (const auto& [key, value] : acc) {
    if (value == 0.0) continue;
    const auto [mat, blk, i, j] = key;
    sdp.entries.push_back(SdpaEntry{mat, blk, i, j, value});
  }
  return prog;
}

void export_sdpa(const SosProgram& program, const std::string& path) {
  if (program.sdp.num_constraints == 0 || program.sdp.entries.empty())
    throw std::invalid_argument("export_sdpa: empty program");
  write_sdpa(program.sdp, path);
}

PlaneProjection project_ellipsoid(const Eigen::Ref<const Eigen::MatrixXd>& P,
                                  double rho, int axis_i, int axis_j, int n_points) {
  const Eigen::Index n = P.rows();
  if (axis_i == axis_j || axis_i < 0 || axis_j < 0 || axis_i >= n || axis_j >= n)
    throw std::invalid_argument("project_ellipsoid: invalid axis pair");
  if (!(rho > 0.0)) throw std::invalid_argument("project_ellipsoid: rho must be > 0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("project_ellipsoid: P must be positive definite");

  const Eigen::MatrixXd p_inv = P.inverse();
  Eigen::Matrix2d block;
  block << p_inv(axis_i, axis_i), p_inv(axis_i, axis_j),
           p_inv(axis_j, axis_i), p_inv(axis_j, axis_j);
  const double det = block.determinant();
  if (!(det > 1e-14 * block.diagonal().prod()))
    throw std::runtime_error("project_ellipsoid: near-singular projection block");

  PlaneProjection out;
  out.axis_i = axis_i;
  out.axis_j = axis_j;
  out.shadow = block.inverse();
  out.shadow = 0.5 * (out.shadow + out.shadow.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es2(out.shadow);
  out.semi_major = std::sqrt(rho / es2.eigenvalues().minCoeff());
  out.semi_minor = std::sqrt(rho / es2.eigenvalues().maxCoeff());
  out.extent_i = std::sqrt(rho * p_inv(axis_i, axis_i));
  out.extent_j = std::sqrt(rho * p_inv(axis_j, axis_j));

  out.boundary.resize(2, n_points);
  for (int k = 0; k < n_points; ++k) {
    const double t = 2.0 * M_PI * k / n_points;
    const Eigen::Vector2d d(std::cos(t), std::sin(t));
    const double r = std::sqrt(rho / d.dot(out.shadow * d));
    out.boundary.col(k) = r * d;
  }
  return out;
}

}  // namespace sailroa
