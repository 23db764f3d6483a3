#pragma once

#include <Eigen/Core>

#include "biphoton/jsa.hpp"

namespace biphoton {

struct SchmidtResult {
  Eigen::VectorXd singular_values;     // d_j, descending, >= 0
  Eigen::VectorXd schmidt_magnitudes;  // lambda_j = d_j^2, sum = 1
  double schmidt_number = 0.0;         // K = 1 / sum lambda_j^2
  double purity = 0.0;                 // P = sum lambda_j^2 = 1/K
  Eigen::MatrixXcd modes_e;            // columns: e-ray Schmidt modes
  Eigen::MatrixXcd modes_o;            // rows: o-ray Schmidt modes (V^dagger)
  bool input_was_normalized = true;
};

// Full SVD F = U D V^dagger of the amplitude matrix. Non-normalized input is
// normalized first (flagged in the result).
SchmidtResult decompose(const JointAmplitude& F);
SchmidtResult decompose(const Eigen::MatrixXcd& values);

// SVD of the square root of a non-negative intensity grid (flat-phase
// assumption used for measured distributions).
SchmidtResult k_no_phase(const Eigen::MatrixXd& intensity);

// Trace-route purity Tr((F F^dagger)^2), cross-checked against the SVD route.
double purity(const JointAmplitude& F);
double schmidt_number(const JointAmplitude& F);

}  // namespace biphoton
