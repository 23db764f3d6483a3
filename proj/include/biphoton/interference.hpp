#pragma once

#include <Eigen/Core>

#include "biphoton/fitting.hpp"
#include "biphoton/jsa.hpp"

namespace biphoton {

// Heralded single-photon reduced density operator over a frequency axis.
struct ReducedState {
  Eigen::VectorXd omega;      // rad/s
  Eigen::MatrixXcd rho;       // Hermitian PSD, unit trace

  void validate() const;
  double purity() const;      // Tr(rho^2)
};

// Partial trace of the pair state: rho_e = F F^dagger, rho_o = (F^dagger F)^T,
// renormalized to unit trace.
ReducedState reduce(const JointAmplitude& F, RayKind which);

// HOMI visibility V = Tr(rho1 rho2) for states on a common axis.
double visibility(const ReducedState& r1, const ReducedState& r2);

// O = ||rho1 - rho2||_F^2; 0 for identical states, 2 for distinguishable pure ones.
double operational_distance(const ReducedState& r1, const ReducedState& r2);

// Mean-purity lower bound implied by a measured visibility (the O = 0 case).
double purity_bound(double visibility);

struct DipCurve {
  Eigen::VectorXd delays;       // s
  Eigen::VectorXd coincidence;  // C(tau) in [0, 1/2]
  GaussianFit fit;              // raw fit of the inverted curve max(C) - C(tau)
  // Parameters of C = baseline*(1 - V exp(-(tau-t0)^2/2w^2)) mapped from it:
  double fitted_visibility = 0.0;
  double fitted_fwhm = 0.0;     // s
  double fitted_centre = 0.0;   // s
  double baseline = 0.0;
};

// Coincidence probability C(tau) = (1 - Tr[rho1 D(tau) rho2 D(tau)^dagger])/2
// with D(tau) = diag(e^{i w_m tau}); reduces to (1 - V)/2 at tau = 0.
// A four-parameter Gaussian dip (baseline, visibility, width, centre) is
// fitted to the curve.
DipCurve dip_curve(const ReducedState& r1, const ReducedState& r2,
                   const Eigen::VectorXd& delays);

struct HeraldingEfficiency {
  double eta_d = 0.0;          // detection efficiency R_C/R_T (doubled if fbs-corrected)
  double eta_h = 0.0;          // eta_q * eta_d
  double eta_corrected = 0.0;  // eta_d / eta_q, the detector-corrected ratio
};

// R_C, R_T in counts/s; eta_q in (0, 1]. fbs_correction doubles the measured
// detection efficiency to undo the 50:50 fibre beamsplitter loss.
HeraldingEfficiency heralding_efficiency(double rate_coincidence, double rate_trigger,
                                         double eta_q, bool fbs_correction);

}  // namespace biphoton
