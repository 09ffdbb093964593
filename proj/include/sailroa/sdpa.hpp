#pragma once

#include <string>
#include <vector>

namespace sailroa {

/// One coefficient of constraint matrix F_matrix (0 = objective F0),
/// upper-triangle convention, 1-based indices within the block.
struct SdpaEntry {
  int matrix = 0;
  int block = 1;
  int i = 1;
  int j = 1;
  double value = 0.0;

  friend bool operator==(const SdpaEntry&, const SdpaEntry&) = default;
};

/// Semidefinite program in SDPA form: the file encodes
///   (P) min c'x  s.t.  X = sum_k x_k F_k - F0 >= 0
/// whose dual is max <F0, Y> s.t. <F_k, Y> = c_k, Y >= 0.
struct SdpaProblem {
  int num_constraints = 0;
  std::vector<int> block_sizes;  // negative size = diagonal block
  std::vector<double> rhs;       // c, one per constraint
  std::vector<SdpaEntry> entries;
};

/// Writes sparse SDPA format (.dat-s), deterministic entry ordering.
void write_sdpa(const SdpaProblem& problem, const std::string& path);

/// Reads a sparse SDPA file written by write_sdpa (plain whitespace layout,
/// comment lines starting with '*' or '"' are skipped).
SdpaProblem read_sdpa(const std::string& path);

}  // namespace sailroa
