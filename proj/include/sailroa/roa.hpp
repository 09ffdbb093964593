#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "sailroa/polynomial.hpp"
#include "sailroa/sdpa.hpp"

namespace sailroa {

/// V-dot along f for V = x'Px: the polynomial 2 x'P f(x).
Polynomiald vdot_polynomial(const Eigen::Ref<const Eigen::MatrixXd>& P,
                            const PolyVectorField& f);

struct RhoOptions {
  int n_samples = 20000;        // shell points per candidate level
  double bisection_tol = 1e-3;  // relative width of the final bracket
  double rho_max = 1e6;         // levels at the cap report possibly_unbounded
  int refine_steps = 50;        // gradient-ascent refinements of the worst point
};

/// Largest sublevel set {x'Px <= rho} surviving shell refutation. The result
/// is an outer-bounded estimate: refutation-complete in the sample limit, not
/// a formal certificate.
struct RoaEstimate {
  Eigen::MatrixXd P;
  double rho = 0.0;
  std::string method = "sampling";  // or "sos-sdp"
  bool possibly_unbounded = false;
  int n_samples = 0;
  double worst_vdot = 0.0;  // refutation margin on the accepted shell (< 0)
  int levels_tested = 0;
  std::string sdpa_path;    // set when method == "sos-sdp"
};

RoaEstimate estimate_rho_sampling(const Eigen::Ref<const Eigen::MatrixXd>& P,
                                  const PolyVectorField& f,
                                  const RhoOptions& options = {});

/// S-procedure program for max rho s.t. p(x)(V(x)-rho) - s(x) Vdot(x) is SOS
/// with p(x) = x'x and s(x) itself SOS, assembled as a standard-form SDP
/// (one Gram block per SOS constraint, rho split into a diagonal block).
struct SosProgram {
  int n_vars = 0;
  int multiplier_degree = 2;
  std::vector<Exponents> gram_basis;        // constraint Gram monomials
  std::vector<Exponents> multiplier_basis;  // s(x) Gram monomials
  std::vector<Exponents> constraint_monomials;  // one equality per monomial
  SdpaProblem sdp;
  std::string notes;
};

SosProgram assemble_sos(const Eigen::Ref<const Eigen::MatrixXd>& P,
                        const PolyVectorField& f, int multiplier_degree = 2);

/// Writes the assembled program in SDPA sparse format (.dat-s).
void export_sdpa(const SosProgram& program, const std::string& path);

/// Exact shadow of {x'Px <= rho} on coordinates (i, j): the ellipse
/// y'Sy <= rho with S the inverse of the (i,j) block of P^{-1}.
struct PlaneProjection {
  int axis_i = 0;
  int axis_j = 1;
  Eigen::Matrix2d shadow = Eigen::Matrix2d::Identity();  // S
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double extent_i = 0.0;  // max |y_i| over the ellipse
  double extent_j = 0.0;
  Eigen::Matrix2Xd boundary;  // sampled boundary, one column per point
};

PlaneProjection project_ellipsoid(const Eigen::Ref<const Eigen::MatrixXd>& P,
                                  double rho, int axis_i, int axis_j,
                                  int n_points = 256);

}  // namespace sailroa
