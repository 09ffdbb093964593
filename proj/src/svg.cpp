#include "sailroa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sailroa/csv.hpp"

namespace sailroa {

namespace {

struct Frame {
  double x_min, x_max, y_min, y_max;  // data range
  double px, py, pw, ph;              // pixel box

  double X(double x) const { return px + (x - x_min) / (x_max - x_min) * pw; }
  double Y(double y) const { return py + ph - (y - y_min) / (y_max - y_min) * ph; }
};

void pad_range(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1e-9, std::abs(lo) * 0.05 + 1e-9);
    lo -= pad;
    hi += pad;
    return;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void axes(std::ofstream& out, const Frame& f, const std::string& title) {
  out << "<rect x='" << f.px << "' y='" << f.py << "' width='" << f.pw
      << "' height='" << f.ph << "' fill='none' stroke='#888' stroke-width='1'/>\n";
  out << "<text x='" << f.px + f.pw / 2 << "' y='" << f.py - 5
      << "' font-size='11' text-anchor='middle' font-family='sans-serif'>" << title
      << "</text>\n";
  out << "<text x='" << f.px - 4 << "' y='" << f.py + 9
      << "' font-size='9' text-anchor='end' font-family='sans-serif'>" << fmt(f.y_max)
      << "</text>\n";
  out << "<text x='" << f.px - 4 << "' y='" << f.py + f.ph
      << "' font-size='9' text-anchor='end' font-family='sans-serif'>" << fmt(f.y_min)
      << "</text>\n";
  out << "<text x='" << f.px << "' y='" << f.py + f.ph + 12
      << "' font-size='9' font-family='sans-serif'>" << fmt(f.x_min) << "</text>\n";
  out << "<text x='" << f.px + f.pw << "' y='" << f.py + f.ph + 12
      << "' font-size='9' text-anchor='end' font-family='sans-serif'>" << fmt(f.x_max)
      << "</text>\n";
}

}  // namespace

void plot_csv_panels(const std::string& csv_path, const std::string& svg_path,
                     const std::string& x_column, const std::vector<PanelSpec>& panels,
                     int columns_per_row) {
  const CsvTable table = read_csv(csv_path);
  const int xc = table.column(x_column);
  if (xc < 0) throw std::runtime_error("plot_csv_panels: missing column " + x_column);
  const std::vector<double> xs = table.values(xc);
  if (xs.empty()) throw std::runtime_error("plot_csv_panels: no data in " + csv_path);

  const int n = static_cast<int>(panels.size());
  const int cols = std::min(columns_per_row, n);
  const int rows = (n + cols - 1) / cols;
  const double pw = 220, ph = 130, mx = 56, my = 34;
  const double width = cols * (pw + mx) + 20;
  const double height = rows * (ph + my) + 20;

  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("plot_csv_panels: cannot open " + svg_path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
      << height << "'>\n<rect width='100%' height='100%' fill='white'/>\n";

  for (int p = 0; p < n; ++p) {
    const int yc = table.column(panels[p].y_column);
    if (yc < 0)
      throw std::runtime_error("plot_csv_panels: missing column " + panels[p].y_column);
    const std::vector<double> ys = table.values(yc);

    Frame f;
    f.x_min = *std::min_element(xs.begin(), xs.end());
    f.x_max = *std::max_element(xs.begin(), xs.end());
    f.y_min = *std::min_element(ys.begin(), ys.end());
    f.y_max = *std::max_element(ys.begin(), ys.end());
    pad_range(f.x_min, f.x_max);
    pad_range(f.y_min, f.y_max);
    f.px = 20 + mx + (p % cols) * (pw + mx);
    f.py = 20 + (p / cols) * (ph + my);
    f.pw = pw;
    f.ph = ph;

    axes(out, f, panels[p].title);
    out << "<polyline fill='none' stroke='#1f6fb4' stroke-width='1.2' points='";
    const std::size_t stride = std::max<std::size_t>(1, xs.size() / 2000);
    for (std::size_t k = 0; k < xs.size(); k += stride)
      out << fmt(f.X(xs[k])) << "," << fmt(f.Y(ys[k])) << " ";
    out << fmt(f.X(xs.back())) << "," << fmt(f.Y(ys.back()));
    out << "'/>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("plot_csv_panels: write failure on " + svg_path);
}

void plot_csv_regions(const std::vector<RegionSpec>& regions, const std::string& svg_path,
                      const std::string& title, const std::string& x_column,
                      const std::string& y_column) {
  if (regions.empty()) throw std::invalid_argument("plot_csv_regions: no regions");

  std::vector<std::vector<double>> all_x, all_y;
  Frame f;
  f.x_min = f.y_min = std::numeric_limits<double>::infinity();
  f.x_max = f.y_max = -f.x_min;
  for (const auto& region : regions) {
    const CsvTable table = read_csv(region.csv_path);
    const int xc = table.column(x_column);
    const int yc = table.column(y_column);
    if (xc < 0 || yc < 0)
      throw std::runtime_error("plot_csv_regions: missing columns in " + region.csv_path);
    all_x.push_back(table.values(xc));
    all_y.push_back(table.values(yc));
    for (double v : all_x.back()) {
      f.x_min = std::min(f.x_min, v);
      f.x_max = std::max(f.x_max, v);
    }
    for (double v : all_y.back()) {
      f.y_min = std::min(f.y_min, v);
      f.y_max = std::max(f.y_max, v);
    }
  }
  pad_range(f.x_min, f.x_max);
  pad_range(f.y_min, f.y_max);
  f.px = 70;
  f.py = 40;
  f.pw = 420;
  f.ph = 420;

  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("plot_csv_regions: cannot open " + svg_path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='560' height='520'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n";
  axes(out, f, title);
  out << "<text x='" << f.px + f.pw / 2 << "' y='" << f.py + f.ph + 26
      << "' font-size='11' text-anchor='middle' font-family='sans-serif'>" << x_column
      << "</text>\n";
  out << "<text x='" << f.px - 44 << "' y='" << f.py + f.ph / 2
      << "' font-size='11' text-anchor='middle' font-family='sans-serif' transform='rotate(-90 "
      << f.px - 44 << " " << f.py + f.ph / 2 << ")'>" << y_column << "</text>\n";

  for (std::size_t r = 0; r < regions.size(); ++r) {
    out << "<polygon fill='" << regions[r].fill
        << "' fill-opacity='0.45' stroke='" << regions[r].fill << "' stroke-width='1' points='";
    for (std::size_t k = 0; k < all_x[r].size(); ++k)
      out << fmt(f.X(all_x[r][k])) << "," << fmt(f.Y(all_y[r][k])) << " ";
    out << "'/>\n";
    out << "<rect x='" << f.px + 8 << "' y='" << f.py + 8 + 18 * r
        << "' width='12' height='12' fill='" << regions[r].fill << "' fill-opacity='0.45'/>\n";
    out << "<text x='" << f.px + 24 << "' y='" << f.py + 18 + 18 * r
        << "' font-size='11' font-family='sans-serif'>" << regions[r].label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("plot_csv_regions: write failure on " + svg_path);
}

}  // namespace sailroa
