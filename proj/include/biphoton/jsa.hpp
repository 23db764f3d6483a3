#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "biphoton/dispersion.hpp"

namespace biphoton {

struct PumpSpec {
  double omega0 = 0.0;        // pump central angular frequency, rad/s
  double sigma = 0.0;         // amplitude bandwidth, rad/s
  double sigma_angular = 0.0; // amplitude angular width (sigma_L), rad
  double chirp_rate = 0.0;    // q, rad/s per radian, signed (0 = no chirp)
  int chirp_sign = +1;        // +1 positive chirp (q <= 0), -1 negative; metadata

  double degenerate_omega() const { return 0.5 * omega0; }
  void validate() const;
};

struct CollectionSpec {
  double sigma_angular = 0.0; // amplitude acceptance width (sigma_F), rad
  int n_angles = 11;          // quadrature points per angular axis, odd
  double span_widths = 2.5;   // quadrature half-range in amplitude widths

  void validate() const;      // sigma_F > 0, n_angles odd >= 1
};

struct FrequencyGrid {
  Eigen::VectorXd omega_e;    // rad/s, uniform ascending
  Eigen::VectorXd omega_o;

  // n points covering [center - span/2, center + span/2] in wavelength,
  // uniform in angular frequency between the converted endpoints.
  static FrequencyGrid centered(int n, double span_nm, double center_nm);
  void validate() const;
  double spacing_e() const { return omega_e(1) - omega_e(0); }
  double spacing_o() const { return omega_o(1) - omega_o(0); }
  bool same_axes(const FrequencyGrid& other, double rel_tol = 1e-12) const;
};

struct JointAmplitude {
  FrequencyGrid grid;
  Eigen::MatrixXcd values;    // values(m, n) = f(omega_e[m], omega_o[n])
  bool normalized = false;

  void normalize();           // sum |F|^2 = 1
  Eigen::MatrixXd intensity() const;
  void validate() const;      // finite entries, shape matches grid
};

// Pump envelope of the chirped focused pump,
// alpha = exp[-((we+wo - 2(w0/2 + q*dp))/sigma)^2] * exp[-(dp/sigma_L)^2].
// Real, in (0, 1]. With sigma_angular == 0 the angular factor is dropped
// (collapsed plane-wave limit, dp must be 0).
double pump_envelope(const PumpSpec& p, double omega_e, double omega_o, double delta_p);

// Perfect transverse phasematching: the o-ray angle
// delta_o = arcsin[(k_ex(w_p,dp) - k_ex(w_e,de))/k_o(w_o)], w_p = w_e + w_o.
// nullopt when the arcsin argument leaves [-1, 1] (dark combination).
std::optional<double> solve_transverse(const CrystalSpec& crystal, double delta_p,
                                       double delta_e, double omega_e, double omega_o);

// Longitudinal mismatch with the transverse condition folded in; angles to
// the optic axis are theta_mu = theta_pm - orientation_sign * delta_mu.
std::optional<double> delta_kz(const CrystalSpec& crystal, double omega_e, double omega_o,
                               double delta_p, double delta_e);

// phi = exp(i dkz L/2) sinc(dkz L/2); 0 when transverse phasematching has no solution.
std::complex<double> phasematching(const CrystalSpec& crystal, double omega_e,
                                   double omega_o, double delta_p, double delta_e);

// Single plane-wave pair of angles, F = alpha * phi, unnormalized.
JointAmplitude jsa_planewave(const FrequencyGrid& grid, const CrystalSpec& crystal,
                             const PumpSpec& pump, double delta_p = 0.0, double delta_e = 0.0);

// Angle-integrated amplitude: uniform-weight rectangle quadrature of
// alpha * phi * gF^2(de) over n_angles x n_angles points spanning
// +-span_widths amplitude widths in dp and de; result normalized.
// With exact_filter the paired-collection weight gF(de)*gF(do) is used
// instead of the small-angle reduction gF^2(de).
JointAmplitude jsa_integrated(const FrequencyGrid& grid, const CrystalSpec& crystal,
                              const PumpSpec& pump, const CollectionSpec& coll,
                              int threads = 1, bool exact_filter = false);

namespace detail {
// Reversal hook for the quadrature-order invariance test.
JointAmplitude jsa_integrated_impl(const FrequencyGrid& grid, const CrystalSpec& crystal,
                                   const PumpSpec& pump, const CollectionSpec& coll,
                                   int threads, bool exact_filter, bool reverse_order);
}

struct Marginals {
  Eigen::VectorXd m_e;        // sum over the other photon of |F|^2
  Eigen::VectorXd m_o;
  double fwhm_e_nm = 0.0;     // interpolated FWHM converted at the centroid
  double fwhm_o_nm = 0.0;
};

// Requires normalized input; throws "grid too narrow" when a marginal peaks
// on the boundary.
Marginals marginals(const JointAmplitude& F);

enum class RidgeMode { Argmax, GaussianFit };

// Central e-ray wavelength (nm) per o-ray slice of an intensity distribution.
// Argmax: parabolic interpolation of log intensity through the 3 points
// around the slice maximum. GaussianFit: per-slice least-squares Gaussian
// (amplitude, centre, width, offset) by damped Gauss-Newton from moments.
// Slices with total weight below 1e-6 of the heaviest slice are absent.
std::vector<std::optional<double>> ridge(const Eigen::VectorXd& omega_e,
                                         const Eigen::MatrixXd& intensity, RidgeMode mode);
std::vector<std::optional<double>> ridge(const JointAmplitude& F, RidgeMode mode);

// Slice centres in the units of the supplied axis (used directly by the
// measured-data pipeline, where axes are wavelengths in nm).
std::vector<std::optional<double>> ridge_axis_units(const Eigen::VectorXd& axis,
                                                    const Eigen::MatrixXd& intensity,
                                                    RidgeMode mode);

}  // namespace biphoton
