#include "biphoton/fitting.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace biphoton {

double GaussianFit::fwhm() const { return 2.0 * std::sqrt(2.0 * std::log(2.0)) * width; }

GaussianFit fit_gaussian(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size() || x.size() < 5)
    throw std::invalid_argument("fit_gaussian needs >= 5 samples");
  const Eigen::Index n = x.size();

  GaussianFit p;
  p.offset = y.minCoeff();
  Eigen::VectorXd w = (y.array() - p.offset).cwiseMax(0.0);
  double wsum = w.sum();
  if (wsum <= 0.0) throw std::invalid_argument("fit_gaussian: flat input");
  p.centre = (x.array() * w.array()).sum() / wsum;
  double var = ((x.array() - p.centre).square() * w.array()).sum() / wsum;
  p.width = std::sqrt(std::max(var, 1e-300));
  p.amplitude = y.maxCoeff() - p.offset;

  Eigen::Vector4d beta(p.amplitude, p.centre, p.width, p.offset);
  auto residual = [&](const Eigen::Vector4d& b, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double u = (x(i) - b(1)) / b(2);
      double g = std::exp(-0.5 * u * u);
      r(i) = b(0) * g + b(3) - y(i);
      if (J) {
        (*J)(i, 0) = g;
        (*J)(i, 1) = b(0) * g * u / b(2);
        (*J)(i, 2) = b(0) * g * u * u / b(2);
        (*J)(i, 3) = 1.0;
      }
    }
  };

  Eigen::VectorXd r(n);
  Eigen::MatrixXd J(n, 4);
  residual(beta, r, &J);
  double cost = r.squaredNorm();
  double damping = 1e-6;
  for (int iter = 0; iter < 60; ++iter) {
    Eigen::Matrix4d H = J.transpose() * J;
    H.diagonal().array() += damping * H.diagonal().array().maxCoeff();
    Eigen::Vector4d step = H.ldlt().solve(J.transpose() * r);
    Eigen::Vector4d trial = beta - step;
    if (!(std::abs(trial(2)) > 0.0)) trial(2) = beta(2);
    Eigen::VectorXd rt(n);
    residual(trial, rt, nullptr);
    double ct = rt.squaredNorm();
    if (ct < cost) {
      double rel = std::abs(cost - ct) / (cost + 1e-300);
      beta = trial;
      cost = ct;
      damping = std::max(damping / 4.0, 1e-12);
      residual(beta, r, &J);
      if (rel < 1e-14 || step.cwiseAbs().maxCoeff() < 1e-14) break;
    } else {
      damping *= 8.0;
      if (damping > 1e12) break;
    }
  }
  p.amplitude = beta(0);
  p.centre = beta(1);
  p.width = std::abs(beta(2));
  p.offset = beta(3);
  p.rms_residual = std::sqrt(cost / double(n));
  p.converged = std::isfinite(cost);
  return p;
}

std::optional<double> interpolated_fwhm(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = y.size();
  if (n < 3 || x.size() != n) return std::nullopt;
  Eigen::Index ipk;
  double ymax = y.maxCoeff(&ipk);
  if (ymax <= 0.0 || ipk == 0 || ipk == n - 1) return std::nullopt;
  double half = 0.5 * ymax;

  Eigen::Index l = ipk;
  while (l > 0 && y(l) >= half) --l;
  if (y(l) >= half) return std::nullopt;
  double xl = x(l) + (x(l + 1) - x(l)) * (half - y(l)) / (y(l + 1) - y(l));

  Eigen::Index rr = ipk;
  while (rr < n - 1 && y(rr) >= half) ++rr;
  if (y(rr) >= half) return std::nullopt;
  double xr = x(rr - 1) + (x(rr) - x(rr - 1)) * (half - y(rr - 1)) / (y(rr) - y(rr - 1));
  return xr - xl;
}

double centroid(const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
  double s = w.sum();
  if (s == 0.0) throw std::invalid_argument("centroid of zero weight");
  return (x.array() * w.array()).sum() / s;
}

}  // namespace biphoton
