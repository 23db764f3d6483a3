#pragma once

#include <cmath>

namespace biphoton {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Internal units are SI throughout (rad/s, m, s); nm, degrees and fs exist
// only at I/O boundaries.
inline double omega_from_wavelength(double lambda_m) { return two_pi * speed_of_light / lambda_m; }
inline double wavelength_from_omega(double omega) { return two_pi * speed_of_light / omega; }
inline double omega_from_nm(double lambda_nm) { return omega_from_wavelength(lambda_nm * 1e-9); }
inline double nm_from_omega(double omega) { return wavelength_from_omega(omega) * 1e9; }

inline double radians_from_degrees(double deg) { return deg * pi / 180.0; }
inline double degrees_from_radians(double rad) { return rad * 180.0 / pi; }

// Wavelength interval -> angular-frequency interval at a reference wavelength.
inline double omega_span_from_nm(double span_nm, double at_nm) {
  return two_pi * speed_of_light * span_nm / (at_nm * at_nm) * 1e9;
}
inline double nm_span_from_omega(double span_omega, double at_omega) {
  double lambda = wavelength_from_omega(at_omega);
  return span_omega * lambda * lambda / (two_pi * speed_of_light) * 1e9;
}

// All widths quoted at I/O boundaries are intensity FWHMs; the Gaussian
// envelopes exp[-(x/sigma)^2] use the amplitude 1/e half-width sigma.
// For intensity exp[-2(x/sigma)^2], FWHM = sigma*sqrt(2 ln 2).
inline double amplitude_sigma_from_intensity_fwhm(double fwhm) {
  return fwhm / std::sqrt(2.0 * std::log(2.0));
}
inline double intensity_fwhm_from_amplitude_sigma(double sigma) {
  return sigma * std::sqrt(2.0 * std::log(2.0));
}

// sinc(x) = sin(x)/x, sinc(0) = 1 (unnormalized convention).
inline double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace biphoton
