#include "sailroa/sdpa.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sailroa {

void write_sdpa(const SdpaProblem& problem, const std::string& path) {
  if (problem.num_constraints <= 0 || problem.entries.empty())
    throw std::invalid_argument("write_sdpa: refusing to write an empty program");
  if (static_cast<int>(problem.rhs.size()) != problem.num_constraints)
    throw std::invalid_argument("write_sdpa: rhs size does not match constraint count");

  std::vector<SdpaEntry> entries = problem.entries;
  std::sort(entries.begin(), entries.end(), [](const SdpaEntry& a, const SdpaEntry& b) {
    return std::tie(a.matrix, a.block, a.i, a.j) < std::tie(b.matrix, b.block, b.i, b.j);
  });

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_sdpa: cannot open " + path);

  char buf[64];
  out << problem.num_constraints << "\n";
  out << problem.block_sizes.size() << "\n";
  for (std::size_t k = 0; k < problem.block_sizes.size(); ++k)
    out << problem.block_sizes[k] << (k + 1 < problem.block_sizes.size() ? " " : "\n");
  for (int k = 0; k < problem.num_constraints; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", problem.rhs[k]);
    out << buf << (k + 1 < problem.num_constraints ? " " : "\n");
  }
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    out << e.matrix << " " << e.block << " " << e.i << " " << e.j << " " << buf << "\n";
  }
  if (!out) throw std::runtime_error("write_sdpa: write failure on " + path);
}

SdpaProblem read_sdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_sdpa: cannot open " + path);

  auto next_data_line = [&in](std::string& line) -> bool {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const char c = line[0];
      if (c == '*' || c == '"') continue;
      return true;
    }
    return false;
  };

  SdpaProblem p;
  std::string line;
  if (!next_data_line(line)) throw std::runtime_error("read_sdpa: missing header");
  p.num_constraints = std::stoi(line);

  if (!next_data_line(line)) throw std::runtime_error("read_sdpa: missing block count");
  const int n_blocks = std::stoi(line);

  if (!next_data_line(line)) throw std::runtime_error("read_sdpa: missing block sizes");
  {
    std::istringstream ss(line);
    int b;
    while (ss >> b) p.block_sizes.push_back(b);
    if (static_cast<int>(p.block_sizes.size()) != n_blocks)
      throw std::runtime_error("read_sdpa: block structure length mismatch");
  }

  if (!next_data_line(line)) throw std::runtime_error("read_sdpa: missing objective row");
  {
    std::istringstream ss(line);
    double v;
    while (ss >> v) p.rhs.push_back(v);
    if (static_cast<int>(p.rhs.size()) != p.num_constraints)
      throw std::runtime_error("read_sdpa: objective row length mismatch");
  }

  while (next_data_line(line)) {
    std::istringstream ss(line);
    SdpaEntry e;
    if (!(ss >> e.matrix >> e.block >> e.i >> e.j >> e.value))
      throw std::runtime_error("read_sdpa: malformed entry line: " + line);
    p.entries.push_back(e);
  }
  return p;
}

}  // namespace sailroa
