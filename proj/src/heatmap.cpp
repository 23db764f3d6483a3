#include "biphoton/heatmap.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace biphoton {

namespace {

struct Rgb { double r, g, b; };

// Heat gradient stops at u = i/5.
constexpr std::array<Rgb, 6> stops = {{{0, 0, 0},
                                       {64, 0, 96},
                                       {160, 16, 64},
                                       {224, 80, 16},
                                       {255, 176, 32},
                                       {255, 255, 224}}};

Rgb colormap(double u) {
  if (u <= 0.0) return stops.front();
  if (u >= 1.0) return stops.back();
  double x = u * 5.0;
  int i = static_cast<int>(x);
  double f = x - i;
  const Rgb& a = stops[i];
  const Rgb& b = stops[i + 1];
  return {a.r + f * (b.r - a.r), a.g + f * (b.g - a.g), a.b + f * (b.b - a.b)};
}

}  // namespace

void render_heatmap(const Eigen::MatrixXd& grid, const std::string& path,
                    const HeatmapAnnotations& notes) {
  if (!grid.allFinite()) throw std::invalid_argument("heatmap input must be finite");
  const Eigen::Index rows = grid.rows(), cols = grid.cols();
  if (rows < 1 || cols < 1) throw std::invalid_argument("heatmap input is empty");
  double vmax = grid.maxCoeff();
  double scale = vmax > 0.0 ? 1.0 / vmax : 0.0;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "P6\n" << cols << ' ' << rows << "\n255\n";
  std::string row(static_cast<size_t>(cols) * 3, '\0');
  for (Eigen::Index r = rows - 1; r >= 0; --r) {  // row 0 at the bottom
    for (Eigen::Index c = 0; c < cols; ++c) {
      Rgb px = colormap(grid(r, c) * scale);
      row[3 * c + 0] = static_cast<char>(static_cast<unsigned char>(px.r + 0.5));
      row[3 * c + 1] = static_cast<char>(static_cast<unsigned char>(px.g + 0.5));
      row[3 * c + 2] = static_cast<char>(static_cast<unsigned char>(px.b + 0.5));
    }
    out.write(row.data(), row.size());
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");

  std::ofstream sidecar(path + ".axes.txt");
  if (!sidecar) throw std::runtime_error("cannot open '" + path + ".axes.txt' for writing");
  char buf[128];
  sidecar << "image: " << path << " (" << cols << " x " << rows << ", P6)\n";
  std::snprintf(buf, sizeof(buf), "vertical axis (bottom to top): %s [%s] %.17g .. %.17g\n",
                notes.axis1_name.c_str(), notes.axis1_unit.c_str(), notes.axis1_min,
                notes.axis1_max);
  sidecar << buf;
  std::snprintf(buf, sizeof(buf), "horizontal axis (left to right): %s [%s] %.17g .. %.17g\n",
                notes.axis2_name.c_str(), notes.axis2_unit.c_str(), notes.axis2_min,
                notes.axis2_max);
  sidecar << buf;
  sidecar << "colormap: heat (black, purple, red, orange, yellow, white), linear in intensity\n";
  if (!notes.config_json.empty()) sidecar << "config: " << notes.config_json << '\n';
}

}  // namespace biphoton
