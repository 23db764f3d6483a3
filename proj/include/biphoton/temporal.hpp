#pragma once

#include <Eigen/Core>

#include "biphoton/jsa.hpp"

namespace biphoton {

struct JointTemporal {
  Eigen::VectorXd t_e;        // s, uniform, zero at the array centre
  Eigen::VectorXd t_o;
  Eigen::MatrixXcd values;    // envelope amplitude in the pump frame
  int pad_factor = 4;
  // Carrier frequencies removed before the transform (grid-centre samples).
  double carrier_e = 0.0, carrier_o = 0.0;
  double spacing_e() const { return t_e(1) - t_e(0); }
  double spacing_o() const { return t_o(1) - t_o(0); }
};

// Centred 2-D Fourier transform of the amplitude with zero-padding
// (factor 4); scaled so that sum|f~|^2 dt_e dt_o = sum|F|^2 dw_e dw_o.
JointTemporal to_temporal(const JointAmplitude& F, int pad_factor = 4);

// Inverse of to_temporal, back onto the original grid (padding trimmed).
JointAmplitude from_temporal(const JointTemporal& T, const FrequencyGrid& grid);

struct TemporalDurations {
  double fwhm_e = 0.0;        // s
  double fwhm_o = 0.0;
};

// Interpolated marginal FWHMs of |f~|^2.
TemporalDurations temporal_marginal_duration(const JointTemporal& T);

// Normalized covariance of (t_e, t_o) under |f~|^2; 0 for an untilted
// distribution, approaching +-1 for strong temporal correlation.
double temporal_correlation(const JointTemporal& T);

}  // namespace biphoton
