#pragma once

#include <array>
#include <optional>
#include <string>

namespace biphoton {

enum class RayKind { Ordinary, Extraordinary };

// Dispersion data for a uniaxial crystal. Principal indices follow
//   n^2(l) = c0 + c1/(l^2 - c2) + c3*l^2/(l^2 - c4) + c5*l^2,   l in um.
// This form covers the usual rational Sellmeier fits (KDP) as well as the
// polynomial-tail fits (BBO) with c3 = 0.
struct SellmeierSet {
  std::string name;
  std::array<double, 6> no_coeffs{};
  std::array<double, 6> ne_coeffs{};
  double min_wavelength_nm = 0.0;
  double max_wavelength_nm = 0.0;

  // Throws std::out_of_range outside the valid range; never extrapolates.
  double index_squared(RayKind principal, double omega) const;
};

// Built-in coefficient sets. KDP is the Zernike (1964) fit, valid 200-1500 nm.
SellmeierSet kdp_sellmeier();
SellmeierSet bbo_sellmeier();
SellmeierSet sellmeier_by_name(const std::string& name);

struct CrystalSpec {
  SellmeierSet sellmeier;
  double length = 0.0;             // m
  double theta_pm = 0.0;           // rad, z-axis to optic axis
  int orientation_sign = +1;       // +1/-1, sense of delta relative to the optic axis

  void validate() const;           // L > 0, 0 < theta_pm < pi/2, sign in {-1,+1}
};

// Principal o-index, or the exact uniaxial angle-dependent e-index
// 1/n_e(theta)^2 = cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2.
// theta is required iff ray == Extraordinary.
double refractive_index(const SellmeierSet& s, RayKind ray, double omega,
                        std::optional<double> theta = std::nullopt);

// k = n(omega, theta) * omega / c
double wavevector_magnitude(const SellmeierSet& s, RayKind ray, double omega,
                            std::optional<double> theta = std::nullopt);

// v_g = (dk/domega)^-1 at fixed theta. dk/domega is a 5-point central
// difference with step 1e10 rad/s, cross-checked against the half step.
double group_velocity(const SellmeierSet& s, RayKind ray, double omega,
                      std::optional<double> theta = std::nullopt);

// Collinear type-II phasematching angle: k_e(w_p,theta) = k_e(w_e,theta) + k_o(w_o).
// Requires energy conservation 1/lp = 1/le + 1/lo to 1e-9 relative.
// Throws std::runtime_error when no root exists in (0, pi/2).
double solve_collinear_pm_angle(const SellmeierSet& s, double lambda_pump_m,
                                double lambda_e_m, double lambda_o_m);

struct PumpSpec;  // jsa.hpp

// Gaussian-approximation factorability diagnostics of the collinear theory,
// gamma = 0.193:  term1 + term2 = gamma*sigma*L*dv_o^-1 + 4/(sigma*L*dv_e^-1).
struct FactorabilityReport {
  double term1 = 0.0;
  double term2 = 0.0;
  double residual = 0.0;            // term1 + term2
  double transit_time_diff = 0.0;   // dtau_e = L * dv_e^-1, s
  double inverse_bandwidth = 0.0;   // 1/sigma, s
  double vg_pump = 0.0, vg_e = 0.0, vg_o = 0.0;  // m/s at the degenerate wavelengths
};

FactorabilityReport factorability_check(const CrystalSpec& crystal, const PumpSpec& pump);

}  // namespace biphoton
