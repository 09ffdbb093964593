#pragma once

#include <Eigen/Dense>

namespace sailroa {

/// Van der Corput radical inverse of index in the given base (index >= 1).
double halton(long index, int base);

/// Deterministic quasi-uniform direction on the unit sphere in R^dim,
/// built from Halton points through Box-Muller. dim <= 16.
Eigen::VectorXd halton_sphere_direction(long index, int dim);

}  // namespace sailroa
