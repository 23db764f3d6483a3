#include "biphoton/temporal.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "biphoton/constants.hpp"
#include "biphoton/fitting.hpp"

namespace biphoton {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;  // the FFTW planner is not thread-safe
  return m;
}

// In-place 2-D DFT of a column-major Eigen matrix. FFTW is row-major, so the
// dimensions are handed over swapped; the 2-D transform is symmetric in its
// axes and the layout works out.
void dft2(Eigen::MatrixXcd& a, int sign) {
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(a.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(a.cols()), static_cast<int>(a.rows()),
                            buf, buf, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

JointTemporal to_temporal(const JointAmplitude& F, int pad_factor) {
  F.validate();
  if (pad_factor < 1) throw std::invalid_argument("pad factor must be >= 1");
  const Eigen::Index ne = F.values.rows(), no = F.values.cols();
  const Eigen::Index me = pad_factor * ne, mo = pad_factor * no;
  if (me % 2 != 0 || mo % 2 != 0)
    throw std::invalid_argument("padded sizes must be even; use an even pad*n");
  const Eigen::Index ce = me / 2, co = mo / 2;
  const Eigen::Index se = (me - ne) / 2, so = (mo - no) / 2;
  const double dwe = F.grid.spacing_e(), dwo = F.grid.spacing_o();

  // Embed with the index rotation that puts the centre sample at index 0.
  Eigen::MatrixXcd buf = Eigen::MatrixXcd::Zero(me, mo);
  for (Eigen::Index m = 0; m < ne; ++m) {
    Eigen::Index r = (se + m + me - ce) % me;
    for (Eigen::Index n = 0; n < no; ++n)
      buf(r, (so + n + mo - co) % mo) = F.values(m, n);
  }
  dft2(buf, FFTW_FORWARD);

  JointTemporal T;
  T.pad_factor = pad_factor;
  T.carrier_e = F.grid.omega_e(0) + double(ce - se) * dwe;
  T.carrier_o = F.grid.omega_o(0) + double(co - so) * dwo;
  const double dte = two_pi / (double(me) * dwe), dto = two_pi / (double(mo) * dwo);
  T.t_e.resize(me);
  T.t_o.resize(mo);
  for (Eigen::Index k = 0; k < me; ++k) T.t_e(k) = double(k - ce) * dte;
  for (Eigen::Index k = 0; k < mo; ++k) T.t_o(k) = double(k - co) * dto;

  const double scale = dwe * dwo / two_pi;
  T.values.resize(me, mo);
  for (Eigen::Index k = 0; k < me; ++k) {
    Eigen::Index r = (k + me - ce) % me;
    for (Eigen::Index l = 0; l < mo; ++l)
      T.values(k, l) = scale * buf(r, (l + mo - co) % mo);
  }
  return T;
}

JointAmplitude from_temporal(const JointTemporal& T, const FrequencyGrid& grid) {
  grid.validate();
  const Eigen::Index me = T.values.rows(), mo = T.values.cols();
  const Eigen::Index ne = grid.omega_e.size(), no = grid.omega_o.size();
  if (me != T.pad_factor * ne || mo != T.pad_factor * no)
    throw std::invalid_argument("temporal block does not match the target grid");
  const Eigen::Index ce = me / 2, co = mo / 2;
  const Eigen::Index se = (me - ne) / 2, so = (mo - no) / 2;
  const double dwe = grid.spacing_e(), dwo = grid.spacing_o();

  Eigen::MatrixXcd buf(me, mo);
  for (Eigen::Index k = 0; k < me; ++k) {
    Eigen::Index r = (k + me - ce) % me;
    for (Eigen::Index l = 0; l < mo; ++l)
      buf(r, (l + mo - co) % mo) = T.values(k, l);
  }
  dft2(buf, FFTW_BACKWARD);

  const double scale = two_pi / (dwe * dwo * double(me) * double(mo));
  JointAmplitude F;
  F.grid = grid;
  F.values.resize(ne, no);
  for (Eigen::Index m = 0; m < ne; ++m) {
    Eigen::Index r = (se + m + me - ce) % me;
    for (Eigen::Index n = 0; n < no; ++n)
      F.values(m, n) = scale * buf(r, (so + n + mo - co) % mo);
  }
  F.normalized = std::abs(F.values.squaredNorm() - 1.0) <= 1e-12;
  return F;
}

TemporalDurations temporal_marginal_duration(const JointTemporal& T) {
  Eigen::MatrixXd I = T.values.cwiseAbs2();
  Eigen::VectorXd ie = I.rowwise().sum();
  Eigen::VectorXd io = I.colwise().sum().transpose();
  auto we = interpolated_fwhm(T.t_e, ie);
  auto wo = interpolated_fwhm(T.t_o, io);
  if (!we || !wo)
    throw std::runtime_error("temporal window too narrow: marginal peaks on the boundary");
  return {*we, *wo};
}

double temporal_correlation(const JointTemporal& T) {
  Eigen::MatrixXd I = T.values.cwiseAbs2();
  double total = I.sum();
  if (!(total > 0.0)) throw std::invalid_argument("all-zero temporal intensity");
  Eigen::VectorXd pe = I.rowwise().sum() / total;
  Eigen::VectorXd po = I.colwise().sum().transpose() / total;
  double mte = (T.t_e.array() * pe.array()).sum();
  double mto = (T.t_o.array() * po.array()).sum();
  double vte = ((T.t_e.array() - mte).square() * pe.array()).sum();
  double vto = ((T.t_o.array() - mto).square() * po.array()).sum();
  double cov = ((T.t_e.array() - mte).matrix().asDiagonal() * I *
                (T.t_o.array() - mto).matrix().asDiagonal())
                   .sum() /
               total;
  return cov / std::sqrt(vte * vto);
}

}  // namespace biphoton
