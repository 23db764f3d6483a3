#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "biphoton/config.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/dispersion.hpp"
#include "biphoton/jsa.hpp"
#include "fixtures.hpp"

using namespace biphoton;

namespace {

const SellmeierSet kdp = kdp_sellmeier();
const double w830 = omega_from_nm(830.0);
const double w415 = omega_from_nm(415.0);

double matched_theta() {
  static const double th = solve_collinear_pm_angle(kdp, 415e-9, 830e-9, 830e-9);
  return th;
}

}  // namespace

TEST_CASE("principal-axis limits of the extraordinary index") {
  double ne_pr = std::sqrt(kdp.index_squared(RayKind::Extraordinary, w830));
  double no = std::sqrt(kdp.index_squared(RayKind::Ordinary, w830));
  CHECK(refractive_index(kdp, RayKind::Extraordinary, w830, pi / 2) ==
        doctest::Approx(ne_pr).epsilon(1e-14));
  CHECK(refractive_index(kdp, RayKind::Extraordinary, w830, 0.0) ==
        doctest::Approx(no).epsilon(1e-14));
}

TEST_CASE("ordinary index matches the published sellmeier evaluated directly") {
  // oracle: the Zernike fit evaluated by hand at 830 nm
  double l2 = 0.830 * 0.830;
  double n2 = 2.259276 + 0.01008956 / (l2 - 0.012942625) + 13.00522 * l2 / (l2 - 400.0);
  double oracle = std::sqrt(n2);
  CHECK(refractive_index(kdp, RayKind::Ordinary, w830) ==
        doctest::Approx(oracle).epsilon(1e-6));
  CHECK(oracle == doctest::Approx(1.500588365850).epsilon(1e-9));
}

TEST_CASE("index evaluation outside the valid range is an error") {
  CHECK_THROWS_AS(refractive_index(kdp, RayKind::Ordinary, omega_from_nm(150.0)),
                  std::out_of_range);
  CHECK_THROWS_AS(refractive_index(kdp, RayKind::Ordinary, omega_from_nm(2000.0)),
                  std::out_of_range);
  CHECK_THROWS_AS(refractive_index(kdp, RayKind::Extraordinary, w830), std::invalid_argument);
  CHECK_THROWS_AS(refractive_index(kdp, RayKind::Ordinary, w830, 0.3), std::invalid_argument);
}

TEST_CASE("wavevector magnitude definition and monotonicity") {
  double n = refractive_index(kdp, RayKind::Ordinary, w830);
  CHECK(wavevector_magnitude(kdp, RayKind::Ordinary, w830) ==
        doctest::Approx(two_pi * n / 830e-9).epsilon(1e-12));
  double k1 = wavevector_magnitude(kdp, RayKind::Ordinary, omega_from_nm(860.0));
  double k2 = wavevector_magnitude(kdp, RayKind::Ordinary, omega_from_nm(800.0));
  CHECK(k2 > k1);
}

TEST_CASE("dk/domega from an independent stencil matches group_velocity") {
  // 7-point central difference at a different step, across rays and band
  double th = matched_theta();
  for (double lambda_nm : {415.0, 600.0, 830.0, 1000.0}) {
    double w = omega_from_nm(lambda_nm);
    for (auto ray : {RayKind::Ordinary, RayKind::Extraordinary}) {
      std::optional<double> theta =
          ray == RayKind::Extraordinary ? std::optional<double>(th) : std::nullopt;
      auto k = [&](double x) { return wavevector_magnitude(kdp, ray, x, theta); };
      double h = 4e9;
      double d = (-k(w - 3 * h) + 9 * k(w - 2 * h) - 45 * k(w - h) + 45 * k(w + h) -
                  9 * k(w + 2 * h) + k(w + 3 * h)) /
                 (60 * h);
      CHECK(group_velocity(kdp, ray, w, theta) * d == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("group velocities reproduce the matched KDP values") {
  double th = matched_theta();
  double vg_o = group_velocity(kdp, RayKind::Ordinary, w830);
  double vg_e = group_velocity(kdp, RayKind::Extraordinary, w830, th);
  double vg_p = group_velocity(kdp, RayKind::Extraordinary, w415, th);
  CHECK(vg_o == doctest::Approx(1.97e8).epsilon(0.01));
  CHECK(vg_e == doctest::Approx(2.02e8).epsilon(0.01));
  CHECK(vg_p == doctest::Approx(vg_o).epsilon(0.01));  // the matching condition
}

TEST_CASE("collinear phasematching angle") {
  double th = matched_theta();
  CHECK(degrees_from_radians(th) == doctest::Approx(67.8).epsilon(0.5 / 67.8));

  // root residual
  double dkz = wavevector_magnitude(kdp, RayKind::Extraordinary, w415, th) -
               wavevector_magnitude(kdp, RayKind::Extraordinary, w830, th) -
               wavevector_magnitude(kdp, RayKind::Ordinary, w830);
  CHECK(std::abs(dkz) < 1.0);
  CHECK(std::abs(dkz) * 0.005 / 2.0 < 1e-6);

  CHECK_THROWS_AS(solve_collinear_pm_angle(kdp, 415e-9, 830e-9, 831e-9),
                  std::invalid_argument);  // energy conservation
  // with no birefringence (n_e = n_o), normal dispersion forbids any root
  SellmeierSet flat = kdp;
  flat.ne_coeffs = flat.no_coeffs;
  CHECK_THROWS_WITH_AS(solve_collinear_pm_angle(flat, 415e-9, 830e-9, 830e-9),
                       doctest::Contains("not phasematchable"), std::runtime_error);
}

TEST_CASE("one degree of crystal angle moves the collinear wavelength by > 10 nm") {
  double th = matched_theta();
  auto collinear_lambda_e = [&](double theta) {
    // solve 1/415 = 1/le + 1/lo with dkz(le; theta) = 0 by bisection in le
    auto mismatch = [&](double le_nm) {
      double we = omega_from_nm(le_nm);
      double wo = w415 - we;
      return wavevector_magnitude(kdp, RayKind::Extraordinary, w415, theta) -
             wavevector_magnitude(kdp, RayKind::Extraordinary, we, theta) -
             wavevector_magnitude(kdp, RayKind::Ordinary, wo);
    };
    double lo = 760.0, hi = 900.0;
    double flo = mismatch(lo);
    REQUIRE(flo * mismatch(hi) < 0.0);
    for (int i = 0; i < 100; ++i) {
      double mid = 0.5 * (lo + hi);
      if (flo * mismatch(mid) <= 0.0) hi = mid;
      else { lo = mid; flo = mismatch(lo); }
    }
    return 0.5 * (lo + hi);
  };
  double l0 = collinear_lambda_e(th);
  double l1 = collinear_lambda_e(th + radians_from_degrees(1.0));
  CHECK(l0 == doctest::Approx(830.0).epsilon(1e-4));
  CHECK(std::abs(l1 - l0) > 10.0);
}

TEST_CASE("extraordinary index is continuous and bounded by the principal indices") {
  double no = refractive_index(kdp, RayKind::Ordinary, w830);
  double ne_pr = refractive_index(kdp, RayKind::Extraordinary, w830, pi / 2);
  double lo = std::min(no, ne_pr), hi = std::max(no, ne_pr);
  double prev = refractive_index(kdp, RayKind::Extraordinary, w830, 0.0);
  for (int i = 1; i <= 400; ++i) {
    double th = pi / 2 * i / 400.0;
    double n = refractive_index(kdp, RayKind::Extraordinary, w830, th);
    CHECK(n >= lo - 1e-12);
    CHECK(n <= hi + 1e-12);
    CHECK(std::abs(n - prev) < 5e-4);  // continuity on a 0.225 deg mesh
    prev = n;
  }
}

TEST_CASE("factorability diagnostics for the matched source") {
  auto cfg = fixtures::reference_config();
  FactorabilityReport r = factorability_check(cfg.crystal_spec(), cfg.pump_spec());
  CHECK(std::abs(r.term1) < 0.02 * std::abs(r.term2));  // matched: term1 ~ 0
  CHECK(std::abs(r.term1) < 0.01);
  CHECK(r.residual == doctest::Approx(r.term1 + r.term2).epsilon(1e-14));
  // formula consistency with the returned velocities
  double dve = 1.0 / r.vg_pump - 1.0 / r.vg_e;
  CHECK(r.transit_time_diff == doctest::Approx(0.005 * dve).epsilon(1e-12));
  // the quoted matched velocities give L(1/1.97e8 - 1/2.02e8); arithmetic oracle
  CHECK(0.005 * (1.0 / 1.97e8 - 1.0 / 2.02e8) ==
        doctest::Approx(6.2823541237372076e-13).epsilon(1e-12));
  CHECK(r.inverse_bandwidth < r.transit_time_diff / 10.0);  // sigma^-1 << dtau_e

  auto degenerate = cfg.crystal_spec();
  degenerate.length = 0.0;
  CHECK_THROWS(factorability_check(degenerate, cfg.pump_spec()));
}

TEST_CASE("crystal and sellmeier validation") {
  CrystalSpec c = fixtures::reference_config().crystal_spec();
  c.orientation_sign = 2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(sellmeier_by_name("LBO"), std::invalid_argument);
  // BBO built-in evaluates sanely
  auto bbo = bbo_sellmeier();
  double n = refractive_index(bbo, RayKind::Ordinary, w830);
  CHECK(n > 1.6);
  CHECK(n < 1.7);
}
