#include "biphoton/schmidt.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace biphoton {

SchmidtResult decompose(const Eigen::MatrixXcd& values) {
  if (!values.allFinite())
    throw std::invalid_argument("decompose: non-finite entries");
  Eigen::MatrixXcd F = values;
  double norm2 = F.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("decompose: all-zero amplitude");

  SchmidtResult r;
  r.input_was_normalized = std::abs(norm2 - 1.0) <= 1e-10;
  if (!r.input_was_normalized) F /= std::sqrt(norm2);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(F, Eigen::ComputeThinU | Eigen::ComputeThinV);
  r.singular_values = svd.singularValues();
  r.schmidt_magnitudes = r.singular_values.array().square();
  double total = r.schmidt_magnitudes.sum();
  r.schmidt_magnitudes /= total;  // guards SVD roundoff at the 1e-15 level
  r.purity = r.schmidt_magnitudes.array().square().sum();
  r.schmidt_number = 1.0 / r.purity;
  r.modes_e = svd.matrixU();
  r.modes_o = svd.matrixV().adjoint();
  return r;
}

SchmidtResult decompose(const JointAmplitude& F) {
  F.validate();
  return decompose(F.values);
}

SchmidtResult k_no_phase(const Eigen::MatrixXd& intensity) {
  if (!intensity.allFinite())
    throw std::invalid_argument("k_no_phase: non-finite entries");
  if (intensity.minCoeff() < 0.0)
    throw std::invalid_argument("k_no_phase: intensity must be non-negative");
  if (!(intensity.maxCoeff() > 0.0))
    throw std::invalid_argument("k_no_phase: all-zero grid");
  Eigen::MatrixXcd amp = intensity.array().sqrt().matrix().cast<std::complex<double>>();
  return decompose(amp);
}

double purity(const JointAmplitude& F) {
  F.validate();
  Eigen::MatrixXcd values = F.values;
  double norm2 = values.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("purity: all-zero amplitude");
  values /= std::sqrt(norm2);
  Eigen::MatrixXcd rho = values * values.adjoint();
  double p = (rho * rho).trace().real();
  double svd_route = decompose(values).purity;
  if (std::abs(p - svd_route) > 1e-8)
    throw std::runtime_error("purity: trace route disagrees with the SVD route");
  return p;
}

double schmidt_number(const JointAmplitude& F) { return decompose(F).schmidt_number; }

}  // namespace biphoton
