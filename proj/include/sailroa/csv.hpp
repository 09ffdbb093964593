#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "sailroa/dynamics.hpp"

namespace sailroa {

/// Fixed file format: floating point with 9 significant digits.
std::string format_g9(double v);

/// Header `t,x,y,z,psi,theta,phi,vx,vy,vz,wx,wy,wz,u,saturated`, one row per
/// recorded step.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

/// Row-major matrix dump with a leading header row c0,c1,...
void write_matrix_csv(const std::string& path, const Eigen::Ref<const Eigen::MatrixXd>& m);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
  std::vector<double> values(int col) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace sailroa
