#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "biphoton/config.hpp"

namespace biphoton {

// Swept parameter descriptor. Allowed names: pump_angle_fwhm (deg),
// collection_fwhm (deg), crystal_length (mm), theta_pm (deg),
// pump_wavelength (nm), chirp_nm_per_fwhm, chirp_sign.
struct SweepParameter {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 0;

  Eigen::VectorXd values() const;
  void validate() const;
};

enum class SweepFidelity { Fast, Full };  // fast: 64x64 grid, 9x9 angles

struct SweepSpec {
  SweepParameter x, y;
  SourceConfig base;
  SweepFidelity fidelity = SweepFidelity::Fast;
  int threads = 1;
};

struct SweepResult {
  Eigen::VectorXd x_values, y_values;
  Eigen::MatrixXd purity;          // purity(i, j) at (x_i, y_j); NaN for failed cells
  Eigen::MatrixXd schmidt_number;
  SweepFidelity fidelity = SweepFidelity::Fast;
};

const std::vector<std::string>& sweep_parameter_names();
void apply_sweep_parameter(SourceConfig& config, const std::string& name, double value);

// Evaluates purity/K of the angle-integrated amplitude over the 2-D parameter
// grid. Cells are independent; reduction is by cell index so the result is
// identical for any worker count. Per-cell failures become NaN, not aborts.
SweepResult run_sweep(const SweepSpec& spec);

}  // namespace biphoton
