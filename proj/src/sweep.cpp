#include "biphoton/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "biphoton/schmidt.hpp"

namespace biphoton {

Eigen::VectorXd SweepParameter::values() const {
  validate();
  Eigen::VectorXd v(steps);
  if (steps == 1) {
    v(0) = min;
    return v;
  }
  for (int i = 0; i < steps; ++i)
    v(i) = min + (max - min) * double(i) / double(steps - 1);
  return v;
}

void SweepParameter::validate() const {
  const auto& names = sweep_parameter_names();
  bool known = false;
  for (const auto& n : names)
    if (n == name) { known = true; break; }
  if (!known) throw std::invalid_argument("unknown sweep parameter '" + name + "'");
  if (steps < 1) throw std::invalid_argument("sweep steps must be >= 1");
  if (steps > 1 && !(max > min))
    throw std::invalid_argument("sweep range needs max > min for '" + name + "'");
}

const std::vector<std::string>& sweep_parameter_names() {
  static const std::vector<std::string> names = {
      "pump_angle_fwhm", "collection_fwhm", "crystal_length", "theta_pm",
      "pump_wavelength", "chirp_nm_per_fwhm", "chirp_sign"};
  return names;
}

void apply_sweep_parameter(SourceConfig& config, const std::string& name, double value) {
  if (name == "pump_angle_fwhm") {
    if (!(value > 0.0 && value < 5.0))
      throw std::invalid_argument("pump_angle_fwhm must lie in (0, 5) degrees");
    config.pump.beam_fwhm_um.reset();
    config.pump.focal_mm.reset();
    config.pump.angular_fwhm_deg = value;
  } else if (name == "collection_fwhm") {
    if (!(value > 0.0 && value < 5.0))
      throw std::invalid_argument("collection_fwhm must lie in (0, 5) degrees");
    config.collection.fwhm_deg = value;
  } else if (name == "crystal_length") {
    if (!(value > 0.0)) throw std::invalid_argument("crystal_length must be > 0 mm");
    config.crystal.length_mm = value;
  } else if (name == "theta_pm") {
    if (!(value > 0.0 && value < 90.0))
      throw std::invalid_argument("theta_pm must lie in (0, 90) degrees");
    config.crystal.theta_pm_deg = value;
  } else if (name == "pump_wavelength") {
    if (!(value > 0.0)) throw std::invalid_argument("pump_wavelength must be > 0 nm");
    config.pump.center_nm = value;
  } else if (name == "chirp_nm_per_fwhm") {
    config.pump.chirp_nm_per_fwhm = value;
  } else if (name == "chirp_sign") {
    config.pump.chirp_sign = value < 0.0 ? -1 : +1;
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + name + "'");
  }
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.base.validate();
  SweepResult out;
  out.x_values = spec.x.values();
  out.y_values = spec.y.values();
  out.fidelity = spec.fidelity;
  const Eigen::Index nx = out.x_values.size(), ny = out.y_values.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.purity.setConstant(nx, ny, nan);
  out.schmidt_number.setConstant(nx, ny, nan);

  auto eval_cell = [&](Eigen::Index i, Eigen::Index j) {
    SourceConfig c = spec.base;
    if (spec.fidelity == SweepFidelity::Fast) {
      c.grid.n = 64;
      c.quadrature.n_angles = 9;
    }
    apply_sweep_parameter(c, spec.x.name, out.x_values(i));
    apply_sweep_parameter(c, spec.y.name, out.y_values(j));
    c.validate();
    try {
      JointAmplitude F = jsa_integrated(c.frequency_grid(), c.crystal_spec(), c.pump_spec(),
                                        c.collection_spec(), 1);
      SchmidtResult s = decompose(F);
      out.purity(i, j) = s.purity;
      out.schmidt_number(i, j) = s.schmidt_number;
    } catch (const std::exception&) {
      // recorded as missing values
    }
  };

  const Eigen::Index cells = nx * ny;
  int nthreads = std::max(1, spec.threads);
  if (nthreads == 1) {
    for (Eigen::Index c = 0; c < cells; ++c) eval_cell(c / ny, c % ny);
  } else {
    std::atomic<Eigen::Index> next{0};
    auto worker = [&]() {
      for (;;) {
        Eigen::Index c = next.fetch_add(1);
        if (c >= cells) return;
        eval_cell(c / ny, c % ny);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace biphoton
