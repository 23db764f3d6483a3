#include "biphoton/dispersion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "biphoton/constants.hpp"
#include "biphoton/jsa.hpp"

namespace biphoton {

namespace {

double eval_form(const std::array<double, 6>& c, double l_um) {
  double l2 = l_um * l_um;
  return c[0] + c[1] / (l2 - c[2]) + c[3] * l2 / (l2 - c[4]) + c[5] * l2;
}

}  // namespace

double SellmeierSet::index_squared(RayKind principal, double omega) const {
  double lambda_nm = nm_from_omega(omega);
  if (!(lambda_nm >= min_wavelength_nm && lambda_nm <= max_wavelength_nm)) {
    std::ostringstream msg;
    msg << "wavelength " << lambda_nm << " nm outside the valid range ["
        << min_wavelength_nm << ", " << max_wavelength_nm << "] nm of Sellmeier set '"
        << name << "'";
    throw std::out_of_range(msg.str());
  }
  double l_um = lambda_nm * 1e-3;
  double n2 = eval_form(principal == RayKind::Ordinary ? no_coeffs : ne_coeffs, l_um);
  if (!(n2 > 1.0) || !std::isfinite(n2)) {
    throw std::out_of_range("Sellmeier set '" + name + "' gives a non-physical index at " +
                            std::to_string(lambda_nm) + " nm");
  }
  return n2;
}

SellmeierSet kdp_sellmeier() {
  SellmeierSet s;
  s.name = "KDP-Zernike1964";
  s.no_coeffs = {2.259276, 0.01008956, 0.012942625, 13.00522, 400.0, 0.0};
  s.ne_coeffs = {2.132668, 0.008637494, 0.012281043, 3.2279924, 400.0, 0.0};
  s.min_wavelength_nm = 200.0;
  s.max_wavelength_nm = 1500.0;
  return s;
}

SellmeierSet bbo_sellmeier() {
  SellmeierSet s;
  s.name = "BBO-Eimerl1987";
  s.no_coeffs = {2.7405, 0.0184, 0.0179, 0.0, 1.0, -0.0155};
  s.ne_coeffs = {2.3730, 0.0128, 0.0156, 0.0, 1.0, -0.0044};
  s.min_wavelength_nm = 220.0;
  s.max_wavelength_nm = 1060.0;
  return s;
}

SellmeierSet sellmeier_by_name(const std::string& name) {
  if (name == "KDP" || name == kdp_sellmeier().name) return kdp_sellmeier();
  if (name == "BBO" || name == bbo_sellmeier().name) return bbo_sellmeier();
  throw std::invalid_argument("unknown crystal '" + name + "' (built in: KDP, BBO)");
}

void CrystalSpec::validate() const {
  if (!(length > 0.0)) throw std::invalid_argument("crystal length must be > 0");
  if (!(theta_pm > 0.0 && theta_pm < pi / 2.0))
    throw std::invalid_argument("theta_pm must lie in (0, pi/2)");
  if (orientation_sign != 1 && orientation_sign != -1)
    throw std::invalid_argument("orientation sign must be +1 or -1");
}

double refractive_index(const SellmeierSet& s, RayKind ray, double omega,
                        std::optional<double> theta) {
  if (ray == RayKind::Ordinary) {
    if (theta.has_value())
      throw std::invalid_argument("ordinary ray index takes no angle");
    return std::sqrt(s.index_squared(RayKind::Ordinary, omega));
  }
  if (!theta.has_value())
    throw std::invalid_argument("extraordinary ray index requires the angle to the optic axis");
  double no2 = s.index_squared(RayKind::Ordinary, omega);
  double ne2 = s.index_squared(RayKind::Extraordinary, omega);
  double ct = std::cos(*theta), st = std::sin(*theta);
  return 1.0 / std::sqrt(ct * ct / no2 + st * st / ne2);
}

double wavevector_magnitude(const SellmeierSet& s, RayKind ray, double omega,
                            std::optional<double> theta) {
  return refractive_index(s, ray, omega, theta) * omega / speed_of_light;
}

namespace {

double dk_domega(const SellmeierSet& s, RayKind ray, double omega,
                 std::optional<double> theta, double h) {
  auto k = [&](double w) { return wavevector_magnitude(s, ray, w, theta); };
  return (k(omega - 2 * h) - 8.0 * k(omega - h) + 8.0 * k(omega + h) - k(omega + 2 * h)) /
         (12.0 * h);
}

}  // namespace

double group_velocity(const SellmeierSet& s, RayKind ray, double omega,
                      std::optional<double> theta) {
  const double h = 1e10;  // rad/s
  double d1 = dk_domega(s, ray, omega, theta, h);
  double d2 = dk_domega(s, ray, omega, theta, h / 2);
  if (std::abs(d1 - d2) > 1e-7 * std::abs(d1))
    throw std::runtime_error("group_velocity: finite-difference step check failed");
  return 1.0 / d1;
}

double solve_collinear_pm_angle(const SellmeierSet& s, double lambda_pump_m,
                                double lambda_e_m, double lambda_o_m) {
  double lhs = 1.0 / lambda_pump_m, rhs = 1.0 / lambda_e_m + 1.0 / lambda_o_m;
  if (std::abs(lhs - rhs) > 1e-9 * lhs)
    throw std::invalid_argument("energy conservation violated: 1/lp != 1/le + 1/lo");
  double wp = omega_from_wavelength(lambda_pump_m);
  double we = omega_from_wavelength(lambda_e_m);
  double wo = omega_from_wavelength(lambda_o_m);
  auto mismatch = [&](double theta) {
    return wavevector_magnitude(s, RayKind::Extraordinary, wp, theta) -
           wavevector_magnitude(s, RayKind::Extraordinary, we, theta) -
           wavevector_magnitude(s, RayKind::Ordinary, wo);
  };
  double lo = 1e-6, hi = pi / 2.0 - 1e-6;
  double flo = mismatch(lo), fhi = mismatch(hi);
  if (flo * fhi > 0.0)
    throw std::runtime_error("not phasematchable: no collinear root in (0, pi/2)");
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = mismatch(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) { hi = mid; fhi = fm; }
    else { lo = mid; flo = fm; }
  }
  return 0.5 * (lo + hi);
}

FactorabilityReport factorability_check(const CrystalSpec& crystal, const PumpSpec& pump) {
  crystal.validate();
  pump.validate();
  double wp = pump.omega0;
  double wd = pump.degenerate_omega();
  FactorabilityReport r;
  r.vg_pump = group_velocity(crystal.sellmeier, RayKind::Extraordinary, wp, crystal.theta_pm);
  r.vg_e = group_velocity(crystal.sellmeier, RayKind::Extraordinary, wd, crystal.theta_pm);
  r.vg_o = group_velocity(crystal.sellmeier, RayKind::Ordinary, wd);
  double dve = 1.0 / r.vg_pump - 1.0 / r.vg_e;
  double dvo = 1.0 / r.vg_pump - 1.0 / r.vg_o;
  const double gamma = 0.193;
  double sL = pump.sigma * crystal.length;
  r.term1 = gamma * sL * dvo;
  r.transit_time_diff = crystal.length * dve;
  if (sL * dve == 0.0)
    throw std::invalid_argument("crystal too short: sigma*L*dv_e^-1 vanishes");
  r.term2 = 4.0 / (sL * dve);
  r.residual = r.term1 + r.term2;
  r.inverse_bandwidth = 1.0 / pump.sigma;
  return r;
}

}  // namespace biphoton
