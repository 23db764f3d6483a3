#pragma once

#include <string>

#include <Eigen/Core>

namespace biphoton {

struct HeatmapAnnotations {
  std::string axis1_name, axis1_unit;
  std::string axis2_name, axis2_unit;
  double axis1_min = 0.0, axis1_max = 0.0;
  double axis2_min = 0.0, axis2_max = 0.0;
  std::string config_json;
};

// Binary portable pixmap (P6) of a real grid: row 0 of the matrix is the
// bottom row of the image, columns run left to right. Intensity is mapped
// linearly from [0, max] onto the built-in heat colormap (black - purple -
// red - orange - yellow - white, see docs/file-formats.md). Axis annotations
// go to "<path>.axes.txt".
void render_heatmap(const Eigen::MatrixXd& grid, const std::string& path,
                    const HeatmapAnnotations& notes = {});

}  // namespace biphoton
