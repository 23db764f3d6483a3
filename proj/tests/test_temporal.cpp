#include <doctest.h>

#include <cmath>
#include <complex>

#include "biphoton/constants.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/temporal.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace biphoton;

namespace {

JointAmplitude gaussian_amplitude(int n, double fwhm_e_nm, double fwhm_o_nm) {
  FrequencyGrid grid = FrequencyGrid::centered(n, 80.0, 830.0);
  double c_e = (grid.omega_e(0) + grid.omega_e(n - 1)) / 2;
  double s_e = amplitude_sigma_from_intensity_fwhm(omega_span_from_nm(fwhm_e_nm, 830.0));
  double s_o = amplitude_sigma_from_intensity_fwhm(omega_span_from_nm(fwhm_o_nm, 830.0));
  Eigen::MatrixXcd vals(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double xe = (grid.omega_e(i) - c_e) / s_e, xo = (grid.omega_o(j) - c_e) / s_o;
      vals(i, j) = std::exp(-xe * xe - xo * xo);
    }
  JointAmplitude F{grid, vals, false};
  F.normalize();
  return F;
}

double parseval_ratio(const JointAmplitude& F, const JointTemporal& T) {
  double spec = F.values.squaredNorm() * F.grid.spacing_e() * F.grid.spacing_o();
  double temp = T.values.squaredNorm() * T.spacing_e() * T.spacing_o();
  return temp / spec;
}

}  // namespace

TEST_CASE("centred transform agrees with the direct DFT oracle") {
  // small grid, pad 2: compare against the O(N^4) sum, embedding included
  JointAmplitude F = gaussian_amplitude(10, 14.0, 25.0);
  JointTemporal T = to_temporal(F, 2);
  Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(20, 20);
  padded.block(5, 5, 10, 10) = F.values;
  Eigen::MatrixXcd direct =
      oracles::direct_centered_dft(padded, F.grid.spacing_e(), F.grid.spacing_o());
  CHECK((T.values - direct).cwiseAbs().maxCoeff() < 1e-12 * direct.cwiseAbs().maxCoeff());
}

TEST_CASE("separable gaussian transforms at the fourier limit") {
  JointAmplitude F = gaussian_amplitude(64, 14.0, 25.0);
  JointTemporal T = to_temporal(F);
  TemporalDurations d = temporal_marginal_duration(T);

  Marginals m = marginals(F);
  // intensity FWHM (Hz) x intensity FWHM (s) = 2 ln2 / pi for a gaussian
  const double tbp = 2.0 * std::log(2.0) / pi;
  double df_e = omega_span_from_nm(m.fwhm_e_nm, 830.0) / two_pi;
  double df_o = omega_span_from_nm(m.fwhm_o_nm, 830.0) / two_pi;
  CHECK(d.fwhm_e * df_e == doctest::Approx(tbp).epsilon(0.01));
  CHECK(d.fwhm_o * df_o == doctest::Approx(tbp).epsilon(0.01));
}

TEST_CASE("published coherence-time scales for the measured bandwidths") {
  // 16.4 nm at 830 nm -> about 62 fs; 3.5 nm -> about 290 fs
  JointAmplitude F = gaussian_amplitude(64, 3.5, 16.4);
  TemporalDurations d = temporal_marginal_duration(to_temporal(F));
  CHECK(d.fwhm_o == doctest::Approx(62e-15).epsilon(0.20));
  CHECK(d.fwhm_e == doctest::Approx(290e-15).epsilon(0.20));
}

TEST_CASE("halving the spectral width doubles the duration") {
  TemporalDurations wide = temporal_marginal_duration(to_temporal(gaussian_amplitude(64, 8.0, 16.0)));
  TemporalDurations narrow =
      temporal_marginal_duration(to_temporal(gaussian_amplitude(64, 4.0, 8.0)));
  CHECK(narrow.fwhm_e / wide.fwhm_e == doctest::Approx(2.0).epsilon(0.02));
  CHECK(narrow.fwhm_o / wide.fwhm_o == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("parseval holds for the model states") {
  for (const JointAmplitude* F :
       {&fixtures::integrated_positive(), &fixtures::integrated_negative()}) {
    JointTemporal T = to_temporal(*F);
    CHECK(parseval_ratio(*F, T) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("forward then inverse transform returns the amplitude") {
  const JointAmplitude& F = fixtures::integrated_positive();
  JointTemporal T = to_temporal(F);
  JointAmplitude back = from_temporal(T, F.grid);
  CHECK((back.values - F.values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("the transform preserves the schmidt spectrum") {
  Eigen::MatrixXcd f = oracles::correlated_gaussian(32, 1.0, 0.5, 3.0);
  JointAmplitude F{FrequencyGrid::centered(32, 40.0, 830.0), f, false};
  F.normalize();
  JointTemporal T = to_temporal(F);
  double k_f = decompose(F).schmidt_number;
  double k_t = decompose(T.values).schmidt_number;  // zero padding adds null modes only
  CHECK(k_t == doctest::Approx(k_f).epsilon(1e-8));
}

TEST_CASE("time axes are conjugate to the grid") {
  JointAmplitude F = gaussian_amplitude(50, 10.0, 20.0);
  JointTemporal T = to_temporal(F);
  CHECK(T.t_e.size() == 200);
  CHECK(T.spacing_e() == doctest::Approx(two_pi / (200 * F.grid.spacing_e())).epsilon(1e-12));
  CHECK(T.t_e(100) == doctest::Approx(0.0));  // zero time at the array centre
  // carrier sits at the grid centre sample
  CHECK(T.carrier_e == doctest::Approx(F.grid.omega_e(25)).epsilon(1e-12));
}

TEST_CASE("temporal correlation separates the chirp signs") {
  double pos = temporal_correlation(to_temporal(fixtures::integrated_positive()));
  double neg = temporal_correlation(to_temporal(fixtures::integrated_negative()));
  // thresholds self-calibrated on the model (oracle run: -0.052 and +0.141)
  CHECK(std::abs(pos) < 0.06);
  CHECK(std::abs(neg) > 0.10);
  CHECK(std::abs(neg) > 2.0 * std::abs(pos));
}

TEST_CASE("non-uniform grids are rejected") {
  JointAmplitude F = gaussian_amplitude(16, 10.0, 20.0);
  F.grid.omega_e(5) *= 1.0001;
  CHECK_THROWS(to_temporal(F));
}
