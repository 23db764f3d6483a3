#include "biphoton/interference.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace biphoton {

void ReducedState::validate() const {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  if (omega.size() != rho.rows())
    throw std::invalid_argument("frequency axis does not match the density matrix");
  if (!rho.allFinite()) throw std::invalid_argument("non-finite density matrix");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10)
    throw std::invalid_argument("density matrix trace must be 1");
}

double ReducedState::purity() const { return (rho * rho).trace().real(); }

ReducedState reduce(const JointAmplitude& F, RayKind which) {
  F.validate();
  Eigen::MatrixXcd vals = F.values;
  double n2 = vals.squaredNorm();
  if (!(n2 > 0.0)) throw std::invalid_argument("reduce: all-zero amplitude");
  vals /= std::sqrt(n2);
  ReducedState r;
  if (which == RayKind::Extraordinary) {
    r.omega = F.grid.omega_e;
    r.rho = vals * vals.adjoint();
  } else {
    r.omega = F.grid.omega_o;
    r.rho = (vals.adjoint() * vals).transpose();
  }
  r.rho /= r.rho.trace().real();
  // exact symmetrization keeps downstream Hermiticity checks tight
  r.rho = 0.5 * (r.rho + r.rho.adjoint()).eval();
  return r;
}

namespace {

void check_common_axis(const ReducedState& r1, const ReducedState& r2) {
  r1.validate();
  r2.validate();
  if (r1.omega.size() != r2.omega.size() ||
      (r1.omega - r2.omega).cwiseAbs().maxCoeff() > 1e-9 * std::abs(r1.omega(0)))
    throw std::invalid_argument("states live on different frequency axes");
}

}  // namespace

double visibility(const ReducedState& r1, const ReducedState& r2) {
  check_common_axis(r1, r2);
  return (r1.rho * r2.rho).trace().real();
}

double operational_distance(const ReducedState& r1, const ReducedState& r2) {
  check_common_axis(r1, r2);
  return (r1.rho - r2.rho).squaredNorm();
}

double purity_bound(double vis) {
  if (!(vis >= 0.0 && vis <= 1.0))
    throw std::invalid_argument("visibility must lie in [0, 1]");
  return vis;
}

DipCurve dip_curve(const ReducedState& r1, const ReducedState& r2,
                   const Eigen::VectorXd& delays) {
  check_common_axis(r1, r2);
  if (delays.size() < 5) throw std::invalid_argument("need at least 5 delay samples");
  const Eigen::Index n = r1.omega.size();

  // Tr[rho1 D rho2 D^dag] = sum_{mn} rho1_mn rho2_nm e^{i(w_n - w_m) tau}
  Eigen::MatrixXcd H = r1.rho.cwiseProduct(r2.rho.transpose());

  DipCurve out;
  out.delays = delays;
  out.coincidence.resize(delays.size());
  for (Eigen::Index k = 0; k < delays.size(); ++k) {
    double tau = delays(k);
    Eigen::VectorXcd ph(n);
    for (Eigen::Index m = 0; m < n; ++m) ph(m) = std::polar(1.0, r1.omega(m) * tau);
    std::complex<double> overlap = ph.conjugate().transpose() * H * ph;
    out.coincidence(k) = 0.5 * (1.0 - overlap.real());
  }

  // Fit the inverted curve as a peak: Cmax - C = A exp(...) + off maps onto
  // C = a (1 - V exp(...)) with a = Cmax - off and V = A/a.
  double cmax = out.coincidence.maxCoeff();
  Eigen::VectorXd depth = (cmax - out.coincidence.array()).matrix();
  out.fit = fit_gaussian(delays, depth);
  out.baseline = cmax - out.fit.offset;
  out.fitted_visibility = out.baseline > 0.0 ? out.fit.amplitude / out.baseline : 0.0;
  out.fitted_fwhm = out.fit.fwhm();
  out.fitted_centre = out.fit.centre;
  return out;
}

HeraldingEfficiency heralding_efficiency(double rate_coincidence, double rate_trigger,
                                         double eta_q, bool fbs_correction) {
  if (!(rate_trigger > 0.0)) throw std::invalid_argument("trigger rate must be > 0");
  if (rate_coincidence < 0.0) throw std::invalid_argument("coincidence rate must be >= 0");
  if (rate_coincidence > rate_trigger)
    throw std::invalid_argument("coincidence rate exceeds trigger rate");
  if (!(eta_q > 0.0 && eta_q <= 1.0))
    throw std::invalid_argument("detector quantum efficiency must lie in (0, 1]");
  HeraldingEfficiency h;
  h.eta_d = rate_coincidence / rate_trigger;
  if (fbs_correction) h.eta_d *= 2.0;
  if (h.eta_d > 1.0)
    throw std::invalid_argument("detection efficiency exceeds unity after FBS correction");
  h.eta_h = eta_q * h.eta_d;
  h.eta_corrected = h.eta_d / eta_q;
  return h;
}

}  // namespace biphoton
