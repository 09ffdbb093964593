#include "sailroa/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sailroa {

SailShape SailShape::flat_disc(double base_radius) {
  SailShape s;
  s.kind = ShapeKind::Polynomial;
  s.base_radius = base_radius;
  return s;
}

SailShape SailShape::cone(double base_radius, double cone_angle_rad) {
  if (!(cone_angle_rad >= 0.0) || cone_angle_rad >= M_PI / 2.0)
    throw std::invalid_argument("cone: angle must lie in [0, pi/2)");
  SailShape s;
  s.kind = ShapeKind::Polynomial;
  s.base_radius = base_radius;
  const double t = base_radius * std::tan(cone_angle_rad);
  s.coefficients << t, -t, 0.0, 0.0, 0.0;
  return s;
}

SailShape SailShape::polynomial(double base_radius,
                                const Eigen::Matrix<double, 5, 1>& coefficients) {
  SailShape s;
  s.kind = ShapeKind::Polynomial;
  s.base_radius = base_radius;
  s.coefficients = coefficients;
  return s;
}

SailShape SailShape::spherical_cap(double cap_base_radius, double curvature_radius) {
  if (!(cap_base_radius > 0.0) || !(cap_base_radius < curvature_radius))
    throw std::invalid_argument("spherical_cap: requires 0 < a < R");
  SailShape s;
  s.kind = ShapeKind::SphericalCap;
  s.base_radius = cap_base_radius;
  s.curvature_radius = curvature_radius;
  return s;
}

namespace {

void check_domain(const SailShape& shape, double x) {
  const double slack = 1e-12 * std::max(1.0, shape.base_radius);
  if (x < -slack || x > shape.base_radius + slack)
    throw std::domain_error("sweep_height: x = " + std::to_string(x) +
                            " outside [0, " + std::to_string(shape.base_radius) + "]");
}

}  // namespace

double sweep_height(const SailShape& shape, double x) {
  check_domain(shape, x);
  x = std::clamp(x, 0.0, shape.base_radius);
  if (shape.kind == ShapeKind::SphericalCap) {
    const double R = shape.curvature_radius;
    return std::sqrt(R * R - x * x) - std::sqrt(R * R - shape.base_radius * shape.base_radius);
  }
  const double u = x / shape.base_radius;
  const auto& c = shape.coefficients;
  return c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * c[4])));
}

double sweep_slope(const SailShape& shape, double x) {
  check_domain(shape, x);
  x = std::clamp(x, 0.0, shape.base_radius);
  if (shape.kind == ShapeKind::SphericalCap) {
    const double R = shape.curvature_radius;
    return -x / std::sqrt(R * R - x * x);
  }
  const double R = shape.base_radius;
  const double u = x / R;
  const auto& c = shape.coefficients;
  return (c[1] + u * (2.0 * c[2] + u * (3.0 * c[3] + u * 4.0 * c[4]))) / R;
}

double SurfaceMesh::total_area() const {
  double a = 0.0;
  for (const auto& e : elements) a += e.area;
  return a;
}

SurfaceMesh build_mesh(const SailShape& shape, int n_radial, int n_azimuthal) {
  if (n_radial < 2 || n_azimuthal < 2)
    throw std::invalid_argument("build_mesh: resolution must be >= 2 per axis");

  const double R = shape.base_radius;
  const double dtheta = 2.0 * M_PI / n_azimuthal;

  SurfaceMesh mesh;
  mesh.elements.reserve(static_cast<std::size_t>(n_radial) * n_azimuthal);

  for (int i = 0; i < n_radial; ++i) {
    const double r0 = R * i / n_radial;
    const double r1 = R * (i + 1) / n_radial;
    const double rc = 0.5 * (r0 + r1);
    const double z = sweep_height(shape, rc);
    const double slope = sweep_slope(shape, rc);
    if (!std::isfinite(slope))
      throw std::runtime_error("build_mesh: non-finite surface slope at radius " +
                               std::to_string(rc));
    const double slant = std::sqrt(1.0 + slope * slope);
    const double band_area = 0.5 * (r1 * r1 - r0 * r0) * dtheta * slant;
    const double inv_norm = 1.0 / slant;
    for (int j = 0; j < n_azimuthal; ++j) {
      const double theta = (j + 0.5) * dtheta;
      const double ct = std::cos(theta);
      const double st = std::sin(theta);
      SurfaceElement e;
      e.centroid = Eigen::Vector3d(rc * ct, rc * st, z);
      e.normal = Eigen::Vector3d(-slope * ct * inv_norm, -slope * st * inv_norm, inv_norm);
      e.area = band_area;
      mesh.elements.push_back(e);
    }
  }
  return mesh;
}

MassProperties mass_properties(const SailShape& shape, const MassModel& mass,
                               int n_radial, int n_azimuthal) {
  if (!(mass.sail_mass > 0.0)) throw std::invalid_argument("mass_properties: sail_mass must be > 0");
  if (mass.payload_mass < 0.0) throw std::invalid_argument("mass_properties: payload_mass must be >= 0");
  if (mass.mast_length < 0.0) throw std::invalid_argument("mass_properties: mast_length must be >= 0");

  const SurfaceMesh mesh = build_mesh(shape, n_radial, n_azimuthal);
  const double density = mass.sail_mass / mesh.total_area();

  MassProperties props;
  props.total_mass = mass.sail_mass + mass.payload_mass;

  double moment_z = 0.0;
  for (const auto& e : mesh.elements) moment_z += density * e.area * e.centroid.z();
  moment_z += mass.payload_mass * (-mass.mast_length);
  props.cm_offset = moment_z / props.total_mass;

  const Eigen::Vector3d cm(0.0, 0.0, props.cm_offset);
  Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  auto accumulate = [&J](double m, const Eigen::Vector3d& p) {
    J += m * (p.squaredNorm() * Eigen::Matrix3d::Identity() - p * p.transpose());
  };
  for (const auto& e : mesh.elements) accumulate(density * e.area, e.centroid - cm);
  accumulate(mass.payload_mass, Eigen::Vector3d(0.0, 0.0, -mass.mast_length) - cm);
  props.inertia = J;
  return props;
}

}  // namespace sailroa
