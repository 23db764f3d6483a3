#pragma once

#include <optional>
#include <string>

#include "biphoton/dispersion.hpp"
#include "biphoton/jsa.hpp"

namespace biphoton {

// Source description in laboratory units. Defaults are the final KDP source
// configuration (5 mm crystal, 415/4 nm pump, 0.16 deg pump angle, 0.30 deg
// collection, +7.5 nm chirp per angular FWHM, 100-point 40 nm grid, 11x11
// quadrature over +-2.5 widths).
struct SourceConfig {
  struct Crystal {
    std::string name = "KDP";
    double length_mm = 5.0;
    std::optional<double> theta_pm_deg;  // nullopt = "auto": solve collinear degenerate
    int orientation_sign = +1;
  } crystal;

  struct Pump {
    double center_nm = 415.0;
    double fwhm_nm = 4.0;                        // intensity FWHM
    std::optional<double> angular_fwhm_deg;      // intensity FWHM; or the beam pair below
    std::optional<double> beam_fwhm_um;
    std::optional<double> focal_mm;
    double chirp_nm_per_fwhm = 7.5;              // at the degenerate wavelength scale
    int chirp_sign = +1;                         // +1 positive, -1 negative
  } pump;

  struct Collection {
    double fwhm_deg = 0.30;                      // pair-collection intensity FWHM
  } collection;

  struct Grid {
    int n = 100;
    double span_nm = 40.0;
    double center_nm = 830.0;
  } grid;

  struct Quadrature {
    int n_angles = 11;
    double span_widths = 2.5;
  } quadrature;

  std::optional<SellmeierSet> sellmeier_override;

  static SourceConfig defaults() { return {}; }
  // Parses a JSON document; empty input yields the defaults. Unknown keys,
  // unit violations and inconsistent fields are reported by name.
  static SourceConfig from_json(const std::string& text);
  static SourceConfig load(const std::string& path);
  // Canonical single-line JSON echo (embedded in every output file header).
  std::string to_json() const;

  void validate() const;

  // Laboratory units -> model specs.
  double pump_angular_fwhm_deg() const;   // resolved from the beam pair when given
  SellmeierSet sellmeier() const;
  CrystalSpec crystal_spec() const;       // resolves "auto" theta_pm
  PumpSpec pump_spec() const;
  CollectionSpec collection_spec() const;
  FrequencyGrid frequency_grid() const;
};

// Sellmeier override document: keys crystal, no_coeffs, ne_coeffs, range_nm.
SellmeierSet load_sellmeier_file(const std::string& path);
SellmeierSet sellmeier_from_json(const std::string& text);

}  // namespace biphoton
