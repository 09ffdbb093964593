#include "sailroa/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sailroa/errors.hpp"

namespace sailroa {

BeamProfile BeamProfile::from_fwhm(double total_power, double fwhm) {
  if (!(fwhm > 0.0)) throw std::invalid_argument("BeamProfile: FWHM must be > 0");
  BeamProfile b;
  b.total_power = total_power;
  b.sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  return b;
}

double beam_flux(double x, double y, const BeamProfile& beam) {
  const double s2 = beam.sigma * beam.sigma;
  return beam.total_power / (2.0 * M_PI * s2) * std::exp(-(x * x + y * y) / (2.0 * s2));
}

Eigen::Matrix3d rotation_body_to_inertial(const EulerAngles& a) {
  return (Eigen::AngleAxisd(a.roll, Eigen::Vector3d::UnitX()) *
          Eigen::AngleAxisd(a.pitch, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(a.yaw, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

Eigen::Matrix3d euler_rate_matrix(const EulerAngles& a) {
  if (std::abs(a.pitch) >= M_PI / 2.0 - 1e-6)
    throw SingularityError("euler_rate_matrix: pitch within 1e-6 rad of gimbal lock");
  const double cp = std::cos(a.yaw);
  const double sp = std::sin(a.yaw);
  const double ct = std::cos(a.pitch);
  const double tt = std::tan(a.pitch);
  Eigen::Matrix3d L;
  // rows: psi_dot, theta_dot, phi_dot; columns: omega_x, omega_y, omega_z
  L << -tt * cp, tt * sp, 1.0,
       sp, cp, 0.0,
       cp / ct, -sp / ct, 0.0;
  return L;
}

namespace {

// First intersection of a body-frame ray with the sail surface
// z = g_s(rho) - cm_offset, rho <= base_radius.
class Intersector {
 public:
  Intersector(const SailShape& shape, double cm_offset)
      : shape_(shape), cm_(cm_offset), base_r_(shape.base_radius) {
    if (shape.kind == ShapeKind::SphericalCap) {
      path_ = Path::Cap;
      const double R = shape.curvature_radius;
      const double q = std::sqrt(R * R - base_r_ * base_r_);
      cap_center_z_ = -(q + cm_);
      cap_r2_ = R * R;
      cap_q_ = q;
      z_lo_ = -cm_;
      z_hi_ = (R - q) - cm_;
      slope_max_ = base_r_ / q;
    } else if (shape.coefficients.tail<3>().isZero(0.0)) {
      path_ = std::abs(shape.coefficients[1]) < 1e-14 ? Path::Flat : Path::Linear;
      lin_k_ = shape.coefficients[1] / base_r_;
      lin_z0_ = shape.coefficients[0] - cm_;
      z_lo_ = std::min(lin_z0_, lin_z0_ + lin_k_ * base_r_);
      z_hi_ = std::max(lin_z0_, lin_z0_ + lin_k_ * base_r_);
      slope_max_ = std::abs(lin_k_);
    } else {
      path_ = Path::Generic;
      z_lo_ = std::numeric_limits<double>::infinity();
      z_hi_ = -z_lo_;
      slope_max_ = 0.0;
      constexpr int kSamples = 512;
      for (int i = 0; i <= kSamples; ++i) {
        const double r = base_r_ * i / kSamples;
        const double z = sweep_height(shape, r) - cm_;
        z_lo_ = std::min(z_lo_, z);
        z_hi_ = std::max(z_hi_, z);
        slope_max_ = std::max(slope_max_, std::abs(sweep_slope(shape, r)));
      }
      const double pad = 1e-6 * std::max(1.0, z_hi_ - z_lo_);
      z_lo_ -= pad;
      z_hi_ += pad;
    }
  }

  // Returns true on a hit; t is the smallest ray parameter (meters, unit d).
  bool first_hit(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double& t,
                 int& warnings) const {
    switch (path_) {
      case Path::Flat: return hit_flat(o, d, t);
      case Path::Linear: return hit_linear(o, d, t);
      case Path::Cap: return hit_cap(o, d, t);
      case Path::Generic: return hit_generic(o, d, t, warnings);
    }
    return false;
  }

 private:
  enum class Path { Flat, Linear, Cap, Generic };

  double rho_at(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double t) const {
    const double x = o.x() + t * d.x();
    const double y = o.y() + t * d.y();
    return std::hypot(x, y);
  }

  bool hit_flat(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double& t) const {
    if (std::abs(d.z()) < 1e-14) return false;
    const double tc = (lin_z0_ - o.z()) / d.z();
    if (rho_at(o, d, tc) > base_r_) return false;
    t = tc;
    return true;
  }

  bool hit_linear(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double& t) const {
    // (o_z - z0 + t d_z)^2 = k^2 rho(t)^2
    const double a0 = o.z() - lin_z0_;
    const double k2 = lin_k_ * lin_k_;
    const double dxy2 = d.x() * d.x() + d.y() * d.y();
    const double oxy2 = o.x() * o.x() + o.y() * o.y();
    const double odxy = o.x() * d.x() + o.y() * d.y();
    const double qa = d.z() * d.z() - k2 * dxy2;
    const double qb = 2.0 * (a0 * d.z() - k2 * odxy);
    const double qc = a0 * a0 - k2 * oxy2;

    double roots[2];
    int n_roots = 0;
    if (std::abs(qa) < 1e-14) {
      if (std::abs(qb) < 1e-14) return false;
      roots[n_roots++] = -qc / qb;
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc < 0.0) return false;
      const double sq = std::sqrt(disc);
      roots[n_roots++] = (-qb - sq) / (2.0 * qa);
      roots[n_roots++] = (-qb + sq) / (2.0 * qa);
      if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    }
    const double tol = 1e-12 * std::max(1.0, base_r_);
    for (int i = 0; i < n_roots; ++i) {
      const double tc = roots[i];
      const double rho = rho_at(o, d, tc);
      if (rho > base_r_ + tol) continue;
      // squaring admits the mirror branch; keep roots with k*rho sign
      if ((a0 + tc * d.z()) * lin_k_ < -tol * std::abs(lin_k_)) continue;
      t = tc;
      return true;
    }
    return false;
  }

  bool hit_cap(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double& t) const {
    const Eigen::Vector3d oc(o.x(), o.y(), o.z() - cap_center_z_);
    const double b = d.dot(oc);
    const double c = oc.squaredNorm() - cap_r2_;
    const double disc = b * b - c;
    if (disc < 0.0) return false;
    const double sq = std::sqrt(disc);
    const double tol = 1e-12 * std::max(1.0, base_r_);
    for (double tc : {-b - sq, -b + sq}) {
      if (oc.z() + tc * d.z() < cap_q_ - tol) continue;  // lower hemisphere / rim
      if (rho_at(o, d, tc) > base_r_ + tol) continue;
      t = tc;
      return true;
    }
    return false;
  }

  double height_gap(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double t) const {
    const double rho = std::min(rho_at(o, d, t), base_r_);
    return (o.z() + t * d.z()) - (sweep_height(shape_, rho) - cm_);
  }

  bool hit_generic(const Eigen::Vector3d& o, const Eigen::Vector3d& d, double& t,
                   int& warnings) const {
    // window in t: inside the bounding cylinder and the surface z-range
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();

    const double dxy2 = d.x() * d.x() + d.y() * d.y();
    if (dxy2 > 1e-28) {
      const double odxy = o.x() * d.x() + o.y() * d.y();
      const double oxy2 = o.x() * o.x() + o.y() * o.y();
      const double disc = odxy * odxy - dxy2 * (oxy2 - base_r_ * base_r_);
      if (disc < 0.0) return false;
      const double sq = std::sqrt(disc);
      t0 = (-odxy - sq) / dxy2;
      t1 = (-odxy + sq) / dxy2;
    } else if (o.x() * o.x() + o.y() * o.y() > base_r_ * base_r_) {
      return false;
    }

    if (std::abs(d.z()) > 1e-14) {
      double ta = (z_lo_ - o.z()) / d.z();
      double tb = (z_hi_ - o.z()) / d.z();
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    } else if (o.z() < z_lo_ || o.z() > z_hi_) {
      return false;
    }
    if (!(t0 < t1)) return false;

    double ga = height_gap(o, d, t0);
    const bool monotone = std::abs(d.z()) > slope_max_ * std::sqrt(dxy2);
    const int scan = monotone ? 1 : 32;
    double ta = t0;
    for (int s = 1; s <= scan; ++s) {
      const double tb = t0 + (t1 - t0) * s / scan;
      const double gb = height_gap(o, d, tb);
      if ((ga <= 0.0 && gb > 0.0) || (ga > 0.0 && gb <= 0.0)) {
        // bisect to 1e-10 m along the ray
        double lo = ta, hi = tb, glo = ga;
        int iters = 0;
        while (hi - lo > 1e-10 && ++iters < 80) {
          const double mid = 0.5 * (lo + hi);
          const double gm = height_gap(o, d, mid);
          if ((glo <= 0.0) == (gm <= 0.0)) {
            lo = mid;
            glo = gm;
          } else {
            hi = mid;
          }
        }
        if (iters >= 80) ++warnings;
        t = 0.5 * (lo + hi);
        return rho_at(o, d, t) <= base_r_ + 1e-9;
      }
      ta = tb;
      ga = gb;
    }
    return false;
  }

  const SailShape& shape_;
  double cm_;
  double base_r_;
  Path path_ = Path::Generic;
  double z_lo_ = 0.0, z_hi_ = 0.0;
  double slope_max_ = 0.0;
  double lin_k_ = 0.0, lin_z0_ = 0.0;          // linear sweep
  double cap_center_z_ = 0.0, cap_r2_ = 0.0, cap_q_ = 0.0;  // spherical cap
};

}  // namespace

ForceTorque force_torque(const Eigen::Vector3d& position, const EulerAngles& attitude,
                         const SailShape& shape, const MassProperties& props,
                         const BeamProfile& beam, int n_rays) {
  if (n_rays < 16)
    throw std::invalid_argument("force_torque: ray grid must be at least 16 per side");
  if (!(beam.sigma > 0.0)) throw std::invalid_argument("force_torque: beam sigma must be > 0");
  if (beam.total_power < 0.0)
    throw std::invalid_argument("force_torque: beam power must be >= 0");

  const Eigen::Vector3d axis = beam.axis.normalized();
  const Eigen::Matrix3d rot = rotation_body_to_inertial(attitude);
  const Eigen::Matrix3d rot_t = rot.transpose();
  const Eigen::Vector3d d_body = rot_t * axis;

  const double w = beam.fwhm();
  const double half = 1.5 * w;
  const double cell = 3.0 * w / n_rays;
  const double cell_area = cell * cell;
  const double inv_two_pi_s2 = 1.0 / (2.0 * M_PI * beam.sigma * beam.sigma);
  const double inv_2s2 = 1.0 / (2.0 * beam.sigma * beam.sigma);

  const Intersector isect(shape, props.cm_offset);

  ForceTorque out;
  Eigen::Vector3d g_sum = Eigen::Vector3d::Zero();
  Eigen::Vector3d tau_sum = Eigen::Vector3d::Zero();

  for (int i = 0; i < n_rays; ++i) {
    const double xr = position.x() - half + (i + 0.5) * cell;
    for (int j = 0; j < n_rays; ++j) {
      const double yr = position.y() - half + (j + 0.5) * cell;
      const Eigen::Vector3d o_body =
          rot_t * (Eigen::Vector3d(xr, yr, 0.0) - position);
      double t;
      if (!isect.first_hit(o_body, d_body, t, out.warnings)) continue;

      const Eigen::Vector3d hit = o_body + t * d_body;
      const double rho = std::hypot(hit.x(), hit.y());
      Eigen::Vector3d n_body;
      if (rho < 1e-12) {
        n_body = Eigen::Vector3d::UnitZ();
      } else {
        const double slope = sweep_slope(shape, std::min(rho, shape.base_radius));
        n_body = Eigen::Vector3d(-slope * hit.x() / rho, -slope * hit.y() / rho, 1.0);
        n_body.normalize();
      }
      const double cosine = d_body.dot(n_body);
      if (cosine <= 0.0) continue;

      // per unit total power: flux * cell / c, doubled for specular reflection
      const double flux_unit = inv_two_pi_s2 * std::exp(-(xr * xr + yr * yr) * inv_2s2);
      const double scale = 2.0 * flux_unit * cell_area * cosine / kSpeedOfLight;
      g_sum += scale * (rot * n_body);
      tau_sum += scale * hit.cross(n_body);
      ++out.rays_hit;
    }
  }

  out.force_per_watt = g_sum;
  out.torque_body_per_watt = tau_sum;
  out.force = beam.total_power * g_sum;
  out.torque_body = beam.total_power * tau_sum;
  return out;
}

}  // namespace sailroa
