#pragma once

// Shared source states for the test suites, built once per binary. The
// reference configuration is the matched KDP source: 5 mm crystal at the
// collinear degenerate angle, 415/4 nm pump, 0.16 deg pump angle, 0.30 deg
// collection, 7.5 nm chirp per angular FWHM, 100x100 grid over 40 nm,
// 11x11 quadrature.

#include "biphoton/config.hpp"
#include "biphoton/jsa.hpp"

namespace fixtures {

inline biphoton::SourceConfig reference_config(int chirp_sign = +1) {
  biphoton::SourceConfig cfg;
  cfg.pump.chirp_sign = chirp_sign;
  return cfg;
}

inline const biphoton::JointAmplitude& integrated_positive() {
  static const biphoton::JointAmplitude F = [] {
    auto cfg = reference_config(+1);
    return biphoton::jsa_integrated(cfg.frequency_grid(), cfg.crystal_spec(),
                                    cfg.pump_spec(), cfg.collection_spec(), 4);
  }();
  return F;
}

inline const biphoton::JointAmplitude& integrated_negative() {
  static const biphoton::JointAmplitude F = [] {
    auto cfg = reference_config(-1);
    return biphoton::jsa_integrated(cfg.frequency_grid(), cfg.crystal_spec(),
                                    cfg.pump_spec(), cfg.collection_spec(), 4);
  }();
  return F;
}

// Collinear plane-wave state (delta_p = delta_e = 0), normalized.
inline const biphoton::JointAmplitude& planewave_collinear() {
  static const biphoton::JointAmplitude F = [] {
    auto cfg = reference_config(+1);
    auto f = biphoton::jsa_planewave(cfg.frequency_grid(), cfg.crystal_spec(),
                                     cfg.pump_spec());
    f.normalize();
    return f;
  }();
  return F;
}

}  // namespace fixtures
