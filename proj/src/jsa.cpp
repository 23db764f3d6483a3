#include "biphoton/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "biphoton/constants.hpp"
#include "biphoton/fitting.hpp"

namespace biphoton {

void PumpSpec::validate() const {
  if (!(omega0 > 0.0)) throw std::invalid_argument("pump central frequency must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("pump bandwidth sigma must be > 0");
  if (!(sigma_angular >= 0.0)) throw std::invalid_argument("pump angular width must be >= 0");
  if (!std::isfinite(chirp_rate)) throw std::invalid_argument("chirp rate must be finite");
  if (chirp_sign != 1 && chirp_sign != -1)
    throw std::invalid_argument("chirp sign must be +1 or -1");
}

void CollectionSpec::validate() const {
  if (!(sigma_angular >= 0.0)) throw std::invalid_argument("collection width must be >= 0");
  if (n_angles < 1 || n_angles % 2 == 0)
    throw std::invalid_argument("n_angles must be odd and >= 1 so delta = 0 is sampled");
  if (!(span_widths > 0.0)) throw std::invalid_argument("quadrature span must be > 0");
}

FrequencyGrid FrequencyGrid::centered(int n, double span_nm, double center_nm) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(span_nm > 0.0) || !(center_nm > 0.0) || !(span_nm < 2.0 * center_nm))
    throw std::invalid_argument("grid span must be positive and smaller than twice the centre");
  double w_lo = omega_from_nm(center_nm + span_nm / 2.0);
  double w_hi = omega_from_nm(center_nm - span_nm / 2.0);
  FrequencyGrid g;
  g.omega_e.resize(n);
  for (int i = 0; i < n; ++i)
    g.omega_e(i) = w_lo + (w_hi - w_lo) * double(i) / double(n - 1);
  g.omega_o = g.omega_e;
  return g;
}

namespace {

void check_axis(const Eigen::VectorXd& ax, const char* name) {
  if (ax.size() < 2) throw std::invalid_argument(std::string(name) + " axis too short");
  double d0 = ax(1) - ax(0);
  if (!(d0 > 0.0)) throw std::invalid_argument(std::string(name) + " axis must be increasing");
  for (Eigen::Index i = 1; i + 1 < ax.size(); ++i) {
    double d = ax(i + 1) - ax(i);
    if (!(d > 0.0) || std::abs(d - d0) > 1e-9 * d0)
      throw std::invalid_argument(std::string(name) + " axis must be uniform and increasing");
  }
}

}  // namespace

void FrequencyGrid::validate() const {
  check_axis(omega_e, "omega_e");
  check_axis(omega_o, "omega_o");
}

bool FrequencyGrid::same_axes(const FrequencyGrid& other, double rel_tol) const {
  if (omega_e.size() != other.omega_e.size() || omega_o.size() != other.omega_o.size())
    return false;
  double scale = std::abs(omega_e(0));
  return (omega_e - other.omega_e).cwiseAbs().maxCoeff() <= rel_tol * scale &&
         (omega_o - other.omega_o).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

void JointAmplitude::normalize() {
  double s2 = values.squaredNorm();
  if (!(s2 > 0.0)) throw std::invalid_argument("cannot normalize an all-zero amplitude");
  values /= std::sqrt(s2);
  normalized = true;
}

Eigen::MatrixXd JointAmplitude::intensity() const { return values.cwiseAbs2(); }

void JointAmplitude::validate() const {
  grid.validate();
  if (values.rows() != grid.omega_e.size() || values.cols() != grid.omega_o.size())
    throw std::invalid_argument("amplitude matrix does not match its grid");
  if (!values.allFinite()) throw std::invalid_argument("amplitude contains non-finite entries");
}

double pump_envelope(const PumpSpec& p, double omega_e, double omega_o, double delta_p) {
  double centre = 2.0 * (p.degenerate_omega() + p.chirp_rate * delta_p);
  double u = (omega_e + omega_o - centre) / p.sigma;
  double val = std::exp(-u * u);
  if (p.sigma_angular > 0.0) {
    double v = delta_p / p.sigma_angular;
    val *= std::exp(-v * v);
  } else if (delta_p != 0.0) {
    throw std::invalid_argument("delta_p must be 0 when the pump angular width is 0");
  }
  return val;
}

std::optional<double> solve_transverse(const CrystalSpec& crystal, double delta_p,
                                       double delta_e, double omega_e, double omega_o) {
  const auto& s = crystal.sellmeier;
  const double sgn = crystal.orientation_sign;
  double omega_p = omega_e + omega_o;
  double kp = wavevector_magnitude(s, RayKind::Extraordinary, omega_p,
                                   crystal.theta_pm - sgn * delta_p);
  double ke = wavevector_magnitude(s, RayKind::Extraordinary, omega_e,
                                   crystal.theta_pm - sgn * delta_e);
  double ko = wavevector_magnitude(s, RayKind::Ordinary, omega_o);
  double arg = (kp * std::sin(delta_p) - ke * std::sin(delta_e)) / ko;
  if (std::abs(arg) > 1.0) return std::nullopt;
  return std::asin(arg);
}

std::optional<double> delta_kz(const CrystalSpec& crystal, double omega_e, double omega_o,
                               double delta_p, double delta_e) {
  const auto& s = crystal.sellmeier;
  const double sgn = crystal.orientation_sign;
  double omega_p = omega_e + omega_o;
  double kp = wavevector_magnitude(s, RayKind::Extraordinary, omega_p,
                                   crystal.theta_pm - sgn * delta_p);
  double ke = wavevector_magnitude(s, RayKind::Extraordinary, omega_e,
                                   crystal.theta_pm - sgn * delta_e);
  double ko = wavevector_magnitude(s, RayKind::Ordinary, omega_o);
  double arg = (kp * std::sin(delta_p) - ke * std::sin(delta_e)) / ko;
  if (std::abs(arg) > 1.0) return std::nullopt;
  return kp * std::cos(delta_p) - ke * std::cos(delta_e) -
         ko * std::sqrt(1.0 - arg * arg);
}

std::complex<double> phasematching(const CrystalSpec& crystal, double omega_e,
                                   double omega_o, double delta_p, double delta_e) {
  auto dkz = delta_kz(crystal, omega_e, omega_o, delta_p, delta_e);
  if (!dkz) return {0.0, 0.0};
  double x = *dkz * crystal.length / 2.0;
  return std::polar(1.0, x) * sinc(x);
}

JointAmplitude jsa_planewave(const FrequencyGrid& grid, const CrystalSpec& crystal,
                             const PumpSpec& pump, double delta_p, double delta_e) {
  grid.validate();
  crystal.validate();
  pump.validate();
  JointAmplitude F;
  F.grid = grid;
  F.values.resize(grid.omega_e.size(), grid.omega_o.size());
  for (Eigen::Index m = 0; m < grid.omega_e.size(); ++m) {
    double we = grid.omega_e(m);
    for (Eigen::Index n = 0; n < grid.omega_o.size(); ++n) {
      double wo = grid.omega_o(n);
      F.values(m, n) = pump_envelope(pump, we, wo, delta_p) *
                       phasematching(crystal, we, wo, delta_p, delta_e);
    }
  }
  F.normalized = false;
  return F;
}

namespace detail {

JointAmplitude jsa_integrated_impl(const FrequencyGrid& grid, const CrystalSpec& crystal,
                                   const PumpSpec& pump, const CollectionSpec& coll,
                                   int threads, bool exact_filter, bool reverse_order) {
  grid.validate();
  crystal.validate();
  pump.validate();
  coll.validate();

  auto nodes = [&](double width) {
    std::vector<double> v(coll.n_angles, 0.0);
    if (coll.n_angles == 1 || width == 0.0) return v;
    double span = coll.span_widths * width;
    for (int i = 0; i < coll.n_angles; ++i)
      v[i] = -span + 2.0 * span * double(i) / double(coll.n_angles - 1);
    return v;
  };
  std::vector<double> dps = nodes(pump.sigma_angular);
  std::vector<double> des = nodes(coll.sigma_angular);
  if (reverse_order) {
    std::reverse(dps.begin(), dps.end());
    std::reverse(des.begin(), des.end());
  }

  auto filter_amp = [&](double delta) {
    if (coll.sigma_angular == 0.0) return 1.0;
    double u = delta / coll.sigma_angular;
    return std::exp(-u * u);
  };

  JointAmplitude F;
  F.grid = grid;
  const Eigen::Index rows = grid.omega_e.size(), cols = grid.omega_o.size();
  F.values.setZero(rows, cols);

  auto run_rows = [&](Eigen::Index r0, Eigen::Index r1) {
    for (Eigen::Index m = r0; m < r1; ++m) {
      double we = grid.omega_e(m);
      for (Eigen::Index n = 0; n < cols; ++n) {
        double wo = grid.omega_o(n);
        std::complex<double> acc{0.0, 0.0};
        for (double dp : dps) {
          double alpha = pump_envelope(pump, we, wo, dp);
          for (double de : des) {
            double weight;
            if (exact_filter) {
              auto dout = solve_transverse(crystal, dp, de, we, wo);
              if (!dout) continue;
              weight = filter_amp(de) * filter_amp(*dout);
            } else {
              double g = filter_amp(de);
              weight = g * g;
            }
            acc += alpha * weight * phasematching(crystal, we, wo, dp, de);
          }
        }
        F.values(m, n) = acc;
      }
    }
  };

  int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    run_rows(0, rows);
  } else {
    std::vector<std::thread> pool;
    Eigen::Index chunk = (rows + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      Eigen::Index r0 = t * chunk, r1 = std::min(rows, r0 + chunk);
      if (r0 >= r1) break;
      pool.emplace_back(run_rows, r0, r1);
    }
    for (auto& th : pool) th.join();
  }

  F.normalize();
  return F;
}

}  // namespace detail

JointAmplitude jsa_integrated(const FrequencyGrid& grid, const CrystalSpec& crystal,
                              const PumpSpec& pump, const CollectionSpec& coll,
                              int threads, bool exact_filter) {
  return detail::jsa_integrated_impl(grid, crystal, pump, coll, threads, exact_filter, false);
}

Marginals marginals(const JointAmplitude& F) {
  F.validate();
  if (!F.normalized) throw std::invalid_argument("marginals require a normalized amplitude");
  Marginals m;
  Eigen::MatrixXd I = F.intensity();
  m.m_e = I.rowwise().sum();
  m.m_o = I.colwise().sum().transpose();

  auto fwhm_nm = [](const Eigen::VectorXd& ax, const Eigen::VectorXd& y) {
    auto w = interpolated_fwhm(ax, y);
    if (!w) throw std::runtime_error("grid too narrow: marginal peaks on the boundary");
    double cen = centroid(ax, y);
    return nm_span_from_omega(*w, cen);
  };
  m.fwhm_e_nm = fwhm_nm(F.grid.omega_e, m.m_e);
  m.fwhm_o_nm = fwhm_nm(F.grid.omega_o, m.m_o);
  return m;
}

std::vector<std::optional<double>> ridge_axis_units(const Eigen::VectorXd& axis,
                                                    const Eigen::MatrixXd& intensity,
                                                    RidgeMode mode) {
  if (intensity.rows() != axis.size())
    throw std::invalid_argument("ridge: axis does not match the intensity rows");
  if (intensity.minCoeff() < 0.0)
    throw std::invalid_argument("ridge: intensity must be non-negative");
  const Eigen::Index cols = intensity.cols();
  Eigen::VectorXd slice_weight = intensity.colwise().sum();
  double wmax = slice_weight.maxCoeff();
  if (!(wmax > 0.0)) throw std::invalid_argument("ridge: all-zero intensity");

  std::vector<std::optional<double>> out(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (slice_weight(j) < 1e-6 * wmax) continue;  // absent
    Eigen::VectorXd sl = intensity.col(j);
    if (mode == RidgeMode::Argmax) {
      Eigen::Index i;
      sl.maxCoeff(&i);
      if (i == 0 || i == sl.size() - 1 || sl(i - 1) <= 0.0 || sl(i + 1) <= 0.0) continue;
      double y0 = std::log(sl(i - 1)), y1 = std::log(sl(i)), y2 = std::log(sl(i + 1));
      double denom = y0 - 2.0 * y1 + y2;
      double d = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
      out[j] = axis(i) + d * 0.5 * (axis(i + 1) - axis(i - 1));
    } else {
      try {
        GaussianFit fit = fit_gaussian(axis, sl);
        if (!fit.converged) continue;
        out[j] = fit.centre;
      } catch (const std::exception&) {
        continue;  // unfittable slice (e.g. flat) marked absent
      }
    }
  }
  return out;
}

std::vector<std::optional<double>> ridge(const Eigen::VectorXd& omega_e,
                                         const Eigen::MatrixXd& intensity, RidgeMode mode) {
  auto centres = ridge_axis_units(omega_e, intensity, mode);
  for (auto& c : centres)
    if (c) c = nm_from_omega(*c);
  return centres;
}

std::vector<std::optional<double>> ridge(const JointAmplitude& F, RidgeMode mode) {
  return ridge(F.grid.omega_e, F.intensity(), mode);
}

}  // namespace biphoton
