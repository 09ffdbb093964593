#pragma once

#include <Eigen/Dense>

#include <vector>

namespace sailroa {

enum class ShapeKind { Polynomial, SphericalCap };

/// Sweep-curve parameterization of the sail surface of revolution
/// z = g_s(sqrt(x^2 + y^2)) for radius in [0, base_radius].
struct SailShape {
  ShapeKind kind = ShapeKind::Polynomial;
  double base_radius = 1.0;                          // R (polynomial) or a (cap)
  Eigen::Matrix<double, 5, 1> coefficients =         // c0..c4, polynomial kind
      Eigen::Matrix<double, 5, 1>::Zero();
  double curvature_radius = 1.0;                     // R, spherical-cap kind

  static SailShape flat_disc(double base_radius);
  static SailShape cone(double base_radius, double cone_angle_rad);
  static SailShape polynomial(double base_radius,
                              const Eigen::Matrix<double, 5, 1>& coefficients);
  static SailShape spherical_cap(double cap_base_radius, double curvature_radius);
};

/// Height g_s(x) of the sweep curve. Throws std::domain_error outside
/// [0, base_radius].
double sweep_height(const SailShape& shape, double x);

/// Slope g_s'(x) of the sweep curve on the same domain.
double sweep_slope(const SailShape& shape, double x);

struct SurfaceElement {
  Eigen::Vector3d centroid;  // base-centered body coordinates, m
  Eigen::Vector3d normal;    // unit, oriented with n.z > 0
  double area = 0.0;         // m^2, includes the slant factor
};

struct SurfaceMesh {
  std::vector<SurfaceElement> elements;
  double total_area() const;
};

/// Tiles the surface of revolution with a polar grid of n_radial x n_azimuthal
/// elements. Element areas use the exact annulus-sector footprint times the
/// slant factor sqrt(1 + g_s'^2) at the centroid radius.
SurfaceMesh build_mesh(const SailShape& shape, int n_radial, int n_azimuthal);

struct MassModel {
  double sail_mass = 0.01;     // kg
  double payload_mass = 0.01;  // kg
  double mast_length = 2.0;    // m
};

struct MassProperties {
  double total_mass = 0.0;  // kg
  double cm_offset = 0.0;   // CM z position relative to the sail base center, m
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();  // about the CM, body axes
};

/// Sail mass spread uniformly per unit area over the mesh; payload is a point
/// mass a mast length below the base center; the mast itself is massless.
MassProperties mass_properties(const SailShape& shape, const MassModel& mass,
                               int n_radial, int n_azimuthal);

}  // namespace sailroa
