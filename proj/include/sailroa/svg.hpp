#pragma once

#include <string>
#include <vector>

namespace sailroa {

/// Plots are rendered from already-emitted CSV data so every figure is
/// reproducible downstream from the flat files alone.

struct PanelSpec {
  std::string title;
  std::string y_column;
};

/// Multi-panel line plot: one panel per named column, shared x column.
void plot_csv_panels(const std::string& csv_path, const std::string& svg_path,
                     const std::string& x_column, const std::vector<PanelSpec>& panels,
                     int columns_per_row = 4);

struct RegionSpec {
  std::string csv_path;  // columns named by x_column/y_column below
  std::string label;
  std::string fill;      // SVG color
};

/// Filled closed-curve overlay, one region per CSV (boundary point lists).
void plot_csv_regions(const std::vector<RegionSpec>& regions, const std::string& svg_path,
                      const std::string& title, const std::string& x_column,
                      const std::string& y_column);

}  // namespace sailroa
