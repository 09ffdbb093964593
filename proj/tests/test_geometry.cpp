#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sailroa/geometry.hpp"

#include <cmath>
#include <random>

using namespace sailroa;

namespace {

const double kAlpha45 = M_PI / 4.0;
const double kAlpha40 = 40.0 * M_PI / 180.0;

}  // namespace

TEST_CASE("sweep height of the 45-degree cone") {
  const auto cone = SailShape::cone(1.0, kAlpha45);
  CHECK(sweep_height(cone, 0.0) == doctest::Approx(1.0).epsilon(1e-12));  // h = 1
  CHECK(sweep_height(cone, 1.0) == doctest::Approx(0.0).epsilon(1e-12));  // rim on base
  CHECK(sweep_height(cone, 0.25) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("sweep height of the spherical cap") {
  const auto cap = SailShape::spherical_cap(0.5, 1.0);
  // apex height 1 - sqrt(1 - 0.25) = 0.1339...
  CHECK(sweep_height(cap, 0.0) == doctest::Approx(1.0 - std::sqrt(0.75)).epsilon(1e-12));
  CHECK(sweep_height(cap, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sweep height domain errors") {
  const auto cone = SailShape::cone(1.0, kAlpha45);
  CHECK_THROWS_AS(sweep_height(cone, -0.1), std::domain_error);
  CHECK_THROWS_AS(sweep_height(cone, 1.2), std::domain_error);
  const auto cap = SailShape::spherical_cap(0.5, 1.0);
  CHECK_THROWS_AS(sweep_height(cap, 0.7), std::domain_error);  // base radius is a
}

TEST_CASE("conical sweep is exactly linear") {
  const auto cone = SailShape::cone(1.3, kAlpha40);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.3);
  for (int k = 0; k < 50; ++k) {
    const double x1 = dist(rng);
    const double x2 = dist(rng);
    const double lhs = sweep_height(cone, x1) + sweep_height(cone, x2);
    const double rhs = 2.0 * sweep_height(cone, 0.5 * (x1 + x2));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("flat disc mesh: normals and area") {
  const auto disc = SailShape::flat_disc(1.0);
  const auto mesh = build_mesh(disc, 40, 40);
  for (const auto& e : mesh.elements) {
    CHECK(e.normal.x() == 0.0);
    CHECK(e.normal.y() == 0.0);
    CHECK(e.normal.z() == doctest::Approx(1.0).epsilon(1e-15));
  }
  // annulus-sector footprints tile the disc exactly
  CHECK(mesh.total_area() == doctest::Approx(M_PI).epsilon(1e-3));
}

TEST_CASE("mesh normals are unit length") {
  for (const auto& shape :
       {SailShape::cone(1.0, kAlpha40), SailShape::spherical_cap(0.5, 1.0)}) {
    const auto mesh = build_mesh(shape, 24, 24);
    for (const auto& e : mesh.elements)
      CHECK(std::abs(e.normal.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("cone normals have z-component cos(alpha)") {
  // oracle: normalize the gradient of z - g_s(r); n_z = 1/sqrt(1 + tan^2 a)
  const auto cone = SailShape::cone(1.0, kAlpha40);
  const double expected = 1.0 / std::sqrt(1.0 + std::tan(kAlpha40) * std::tan(kAlpha40));
  const auto mesh = build_mesh(cone, 30, 30);
  for (const auto& e : mesh.elements)
    CHECK(e.normal.z() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(std::cos(kAlpha40)).epsilon(1e-15));
}

TEST_CASE("mesh area converges to analytic surface areas") {
  // cone lateral area = pi R^2 sec(alpha); cap zone area = 2 pi R h
  const auto cone = SailShape::cone(1.0, kAlpha40);
  const double cone_area = M_PI / std::cos(kAlpha40);
  const auto cap = SailShape::spherical_cap(0.5, 1.0);
  const double cap_area = 2.0 * M_PI * 1.0 * (1.0 - std::sqrt(0.75));

  // constant slant makes the cone sum exact at every resolution
  CHECK(build_mesh(cone, 25, 25).total_area() ==
        doctest::Approx(cone_area).epsilon(1e-12));
  CHECK(build_mesh(cone, 200, 200).total_area() ==
        doctest::Approx(cone_area).epsilon(1e-12));

  double prev_cap = -1.0;
  for (int n : {25, 50, 100, 200}) {
    const double err_cap = std::abs(build_mesh(cap, n, n).total_area() - cap_area);
    if (prev_cap >= 0.0) CHECK(err_cap < prev_cap / 1.5);  // at least linear in 1/n
    prev_cap = err_cap;
  }
}

TEST_CASE("mass properties: totals and centers") {
  const auto cone = SailShape::cone(1.0, kAlpha40);
  const MassModel mm{0.01, 0.01, 2.0};
  const auto props = mass_properties(cone, mm, 100, 100);
  CHECK(props.total_mass == doctest::Approx(0.02).epsilon(1e-15));

  // payload-free: CM stays within the sail's height span
  const auto sail_only = mass_properties(cone, MassModel{0.01, 0.0, 0.0}, 100, 100);
  CHECK(sail_only.total_mass == doctest::Approx(0.01));
  const double h = sweep_height(cone, 0.0);
  CHECK(sail_only.cm_offset > 0.0);
  CHECK(sail_only.cm_offset < h);
  // uniform cone surface: centroid height h/3
  CHECK(sail_only.cm_offset == doctest::Approx(h / 3.0).epsilon(1e-3));
}

TEST_CASE("flat disc inertia matches the thin-disc oracle") {
  const auto disc = SailShape::flat_disc(1.0);
  const auto props = mass_properties(disc, MassModel{0.01, 0.0, 0.0}, 200, 200);
  CHECK(props.inertia(2, 2) == doctest::Approx(0.5 * 0.01).epsilon(5e-3));
  // perpendicular-axis check for the planar lamina
  CHECK(props.inertia(0, 0) + props.inertia(1, 1) ==
        doctest::Approx(props.inertia(2, 2)).epsilon(1e-9));
}

TEST_CASE("inertia is diagonal and axisymmetric") {
  for (const auto& shape :
       {SailShape::cone(1.0, kAlpha40), SailShape::spherical_cap(0.5, 1.0)}) {
    const auto props = mass_properties(shape, MassModel{0.01, 0.01, 2.0}, 80, 80);
    const Eigen::Matrix3d& j = props.inertia;
    CHECK(std::abs(j(0, 1)) < 1e-12 * j(0, 0));
    CHECK(std::abs(j(0, 2)) < 1e-12 * j(0, 0));
    CHECK(std::abs(j(1, 2)) < 1e-12 * j(0, 0));
    CHECK(std::abs(j(0, 0) - j(1, 1)) < 1e-9 * j(0, 0));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(j);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("inertia converges at least linearly") {
  // cone lateral surface about its axis: J_z = m R^2 / 2, independent of alpha
  const auto cone = SailShape::cone(1.0, kAlpha40);
  const MassModel mm{0.01, 0.0, 0.0};
  double prev = -1.0;
  for (int n : {25, 50, 100, 200}) {
    const double err =
        std::abs(mass_properties(cone, mm, n, n).inertia(2, 2) - 0.5 * 0.01);
    if (prev >= 0.0) CHECK(err < prev / 1.5);
    prev = err;
  }
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(SailShape::cone(1.0, M_PI / 2.0), std::invalid_argument);
  CHECK_THROWS_AS(SailShape::spherical_cap(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SailShape::spherical_cap(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(SailShape::flat_disc(1.0), 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(mass_properties(SailShape::flat_disc(1.0), MassModel{0.0, 0.0, 0.0},
                                  10, 10),
                  std::invalid_argument);
}
