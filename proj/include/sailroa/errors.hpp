#pragma once

#include <stdexcept>
#include <string>

namespace sailroa {

/// Euler-angle kinematics evaluated too close to gimbal lock.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Beam can no longer push the sail (G_z at or below zero).
struct ActuationLostError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHurwitzError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite-difference residual failed the step-halving plateau check.
struct LinearizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Polynomial fit residual above tolerance.
struct ExpansionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sailroa
