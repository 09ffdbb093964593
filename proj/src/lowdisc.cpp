#include "sailroa/lowdisc.hpp"

#include <cmath>
#include <stdexcept>

namespace sailroa {

double halton(long index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

Eigen::VectorXd halton_sphere_direction(long index, int dim) {
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19,
                                    23, 29, 31, 37, 41, 43, 47, 53};
  if (dim < 1 || dim > 16)
    throw std::invalid_argument("halton_sphere_direction: dim must be in [1, 16]");

  Eigen::VectorXd g(dim);
  for (int k = 0; k < dim; k += 2) {
    const double u1 = std::max(halton(index, kPrimes[k]), 1e-12);
    const double u2 = halton(index, kPrimes[k + 1 < dim ? k + 1 : k]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    g[k] = r * std::cos(2.0 * M_PI * u2);
    if (k + 1 < dim) g[k + 1] = r * std::sin(2.0 * M_PI * u2);
  }
  const double n = g.norm();
  if (n < 1e-12) {
    g.setZero();
    g[0] = 1.0;
    return g;
  }
  return g / n;
}

}  // namespace sailroa
