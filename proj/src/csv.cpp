#include "sailroa/csv.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sailroa {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
  out << "t,x,y,z,psi,theta,phi,vx,vy,vz,wx,wy,wz,u,saturated\n";
  for (const auto& pt : trajectory.points) {
    const Vector12 v = pt.state.to_vector();
    out << format_g9(pt.t);
    for (int k = 0; k < 12; ++k) out << ',' << format_g9(v[k]);
    out << ',' << format_g9(pt.u) << ',' << (pt.saturated ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("write_trajectory_csv: write failure on " + path);
}

void write_matrix_csv(const std::string& path, const Eigen::Ref<const Eigen::MatrixXd>& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_csv: cannot open " + path);
  for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << "c" << j;
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_g9(m(i, j));
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_matrix_csv: write failure on " + path);
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> CsvTable::values(int col) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(col));
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);
  {
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());  // text cell
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace sailroa
