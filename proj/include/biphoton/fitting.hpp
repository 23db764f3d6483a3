#pragma once

#include <optional>

#include <Eigen/Core>

namespace biphoton {

// y ~ amplitude * exp(-(x - centre)^2 / (2 width^2)) + offset
struct GaussianFit {
  double amplitude = 0.0;
  double centre = 0.0;
  double width = 0.0;       // standard deviation, > 0
  double offset = 0.0;
  double rms_residual = 0.0;
  bool converged = false;

  double fwhm() const;      // 2 sqrt(2 ln 2) * width
};

// Damped Gauss-Newton least squares, initialized from the moments of
// max(y - min(y), 0). Deterministic iteration schedule.
GaussianFit fit_gaussian(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// FWHM of a sampled peak by linear interpolation between the grid points
// crossing half maximum. nullopt when the peak sits on the boundary or a
// crossing is missing on either side.
std::optional<double> interpolated_fwhm(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Weighted first moment.
double centroid(const Eigen::VectorXd& x, const Eigen::VectorXd& w);

}  // namespace biphoton
