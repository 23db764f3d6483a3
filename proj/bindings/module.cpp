#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biphoton/config.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/dispersion.hpp"
#include "biphoton/gridfile.hpp"
#include "biphoton/ingest.hpp"
#include "biphoton/interference.hpp"
#include "biphoton/jsa.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/temporal.hpp"

namespace py = pybind11;
using namespace biphoton;

namespace {

std::optional<double> opt_theta(py::object theta) {
  if (theta.is_none()) return std::nullopt;
  return theta.cast<double>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint-spectral-amplitude modelling of group-velocity-matched "
            "parametric downconversion";
  m.attr("__version__") = tool_version;
  m.attr("speed_of_light") = speed_of_light;

  py::enum_<RayKind>(m, "RayKind")
      .value("Ordinary", RayKind::Ordinary)
      .value("Extraordinary", RayKind::Extraordinary);

  py::class_<SellmeierSet>(m, "SellmeierSet")
      .def(py::init<>())
      .def_readwrite("name", &SellmeierSet::name)
      .def_readwrite("no_coeffs", &SellmeierSet::no_coeffs)
      .def_readwrite("ne_coeffs", &SellmeierSet::ne_coeffs)
      .def_readwrite("min_wavelength_nm", &SellmeierSet::min_wavelength_nm)
      .def_readwrite("max_wavelength_nm", &SellmeierSet::max_wavelength_nm);
  m.def("kdp_sellmeier", &kdp_sellmeier);
  m.def("bbo_sellmeier", &bbo_sellmeier);
  m.def("sellmeier_by_name", &sellmeier_by_name, py::arg("name"));

  py::class_<CrystalSpec>(m, "CrystalSpec")
      .def(py::init<>())
      .def_readwrite("sellmeier", &CrystalSpec::sellmeier)
      .def_readwrite("length", &CrystalSpec::length)
      .def_readwrite("theta_pm", &CrystalSpec::theta_pm)
      .def_readwrite("orientation_sign", &CrystalSpec::orientation_sign)
      .def("validate", &CrystalSpec::validate);

  m.def(
      "refractive_index",
      [](const SellmeierSet& s, RayKind ray, double omega, py::object theta) {
        return refractive_index(s, ray, omega, opt_theta(theta));
      },
      py::arg("sellmeier"), py::arg("ray"), py::arg("omega"), py::arg("theta") = py::none());
  m.def(
      "wavevector_magnitude",
      [](const SellmeierSet& s, RayKind ray, double omega, py::object theta) {
        return wavevector_magnitude(s, ray, omega, opt_theta(theta));
      },
      py::arg("sellmeier"), py::arg("ray"), py::arg("omega"), py::arg("theta") = py::none());
  m.def(
      "group_velocity",
      [](const SellmeierSet& s, RayKind ray, double omega, py::object theta) {
        return group_velocity(s, ray, omega, opt_theta(theta));
      },
      py::arg("sellmeier"), py::arg("ray"), py::arg("omega"), py::arg("theta") = py::none());
  m.def("solve_collinear_pm_angle", &solve_collinear_pm_angle, py::arg("sellmeier"),
        py::arg("lambda_pump_m"), py::arg("lambda_e_m"), py::arg("lambda_o_m"));

  py::class_<FactorabilityReport>(m, "FactorabilityReport")
      .def_readonly("term1", &FactorabilityReport::term1)
      .def_readonly("term2", &FactorabilityReport::term2)
      .def_readonly("residual", &FactorabilityReport::residual)
      .def_readonly("transit_time_diff", &FactorabilityReport::transit_time_diff)
      .def_readonly("inverse_bandwidth", &FactorabilityReport::inverse_bandwidth)
      .def_readonly("vg_pump", &FactorabilityReport::vg_pump)
      .def_readonly("vg_e", &FactorabilityReport::vg_e)
      .def_readonly("vg_o", &FactorabilityReport::vg_o);
  m.def("factorability_check", &factorability_check, py::arg("crystal"), py::arg("pump"));

  py::class_<PumpSpec>(m, "PumpSpec")
      .def(py::init<>())
      .def_readwrite("omega0", &PumpSpec::omega0)
      .def_readwrite("sigma", &PumpSpec::sigma)
      .def_readwrite("sigma_angular", &PumpSpec::sigma_angular)
      .def_readwrite("chirp_rate", &PumpSpec::chirp_rate)
      .def_readwrite("chirp_sign", &PumpSpec::chirp_sign)
      .def("degenerate_omega", &PumpSpec::degenerate_omega)
      .def("validate", &PumpSpec::validate);

  py::class_<CollectionSpec>(m, "CollectionSpec")
      .def(py::init<>())
      .def_readwrite("sigma_angular", &CollectionSpec::sigma_angular)
      .def_readwrite("n_angles", &CollectionSpec::n_angles)
      .def_readwrite("span_widths", &CollectionSpec::span_widths)
      .def("validate", &CollectionSpec::validate);

  py::class_<FrequencyGrid>(m, "FrequencyGrid")
      .def(py::init<>())
      .def_static("centered", &FrequencyGrid::centered, py::arg("n"), py::arg("span_nm"),
                  py::arg("center_nm"))
      .def_readwrite("omega_e", &FrequencyGrid::omega_e)
      .def_readwrite("omega_o", &FrequencyGrid::omega_o)
      .def("validate", &FrequencyGrid::validate);

  py::class_<JointAmplitude>(m, "JointAmplitude")
      .def(py::init<>())
      .def_readwrite("grid", &JointAmplitude::grid)
      .def_readwrite("values", &JointAmplitude::values)
      .def_readwrite("normalized", &JointAmplitude::normalized)
      .def("normalize", &JointAmplitude::normalize)
      .def("intensity", &JointAmplitude::intensity);

  m.def("pump_envelope", &pump_envelope, py::arg("pump"), py::arg("omega_e"),
        py::arg("omega_o"), py::arg("delta_p"));
  m.def("solve_transverse", &solve_transverse, py::arg("crystal"), py::arg("delta_p"),
        py::arg("delta_e"), py::arg("omega_e"), py::arg("omega_o"));
  m.def("delta_kz", &delta_kz, py::arg("crystal"), py::arg("omega_e"), py::arg("omega_o"),
        py::arg("delta_p"), py::arg("delta_e"));
  m.def("phasematching", &phasematching, py::arg("crystal"), py::arg("omega_e"),
        py::arg("omega_o"), py::arg("delta_p"), py::arg("delta_e"));
  m.def("jsa_planewave", &jsa_planewave, py::arg("grid"), py::arg("crystal"), py::arg("pump"),
        py::arg("delta_p") = 0.0, py::arg("delta_e") = 0.0);
  m.def("jsa_integrated", &jsa_integrated, py::arg("grid"), py::arg("crystal"),
        py::arg("pump"), py::arg("collection"), py::arg("threads") = 1,
        py::arg("exact_filter") = false,
        py::call_guard<py::gil_scoped_release>());

  py::class_<Marginals>(m, "Marginals")
      .def_readonly("m_e", &Marginals::m_e)
      .def_readonly("m_o", &Marginals::m_o)
      .def_readonly("fwhm_e_nm", &Marginals::fwhm_e_nm)
      .def_readonly("fwhm_o_nm", &Marginals::fwhm_o_nm);
  m.def("marginals", &marginals, py::arg("amplitude"));

  py::enum_<RidgeMode>(m, "RidgeMode")
      .value("Argmax", RidgeMode::Argmax)
      .value("GaussianFit", RidgeMode::GaussianFit);
  m.def(
      "ridge",
      [](const JointAmplitude& F, RidgeMode mode) { return ridge(F, mode); },
      py::arg("amplitude"), py::arg("mode") = RidgeMode::Argmax);

  py::class_<SchmidtResult>(m, "SchmidtResult")
      .def_readonly("singular_values", &SchmidtResult::singular_values)
      .def_readonly("schmidt_magnitudes", &SchmidtResult::schmidt_magnitudes)
      .def_readonly("schmidt_number", &SchmidtResult::schmidt_number)
      .def_readonly("purity", &SchmidtResult::purity)
      .def_readonly("modes_e", &SchmidtResult::modes_e)
      .def_readonly("modes_o", &SchmidtResult::modes_o)
      .def_readonly("input_was_normalized", &SchmidtResult::input_was_normalized);
  m.def("decompose", py::overload_cast<const JointAmplitude&>(&decompose),
        py::arg("amplitude"));
  m.def("decompose_matrix", py::overload_cast<const Eigen::MatrixXcd&>(&decompose),
        py::arg("values"));
  m.def("k_no_phase", &k_no_phase, py::arg("intensity"));
  m.def("purity", &purity, py::arg("amplitude"));
  m.def("schmidt_number", &schmidt_number, py::arg("amplitude"));

  py::class_<JointTemporal>(m, "JointTemporal")
      .def_readonly("t_e", &JointTemporal::t_e)
      .def_readonly("t_o", &JointTemporal::t_o)
      .def_readonly("values", &JointTemporal::values)
      .def_readonly("pad_factor", &JointTemporal::pad_factor)
      .def_readonly("carrier_e", &JointTemporal::carrier_e)
      .def_readonly("carrier_o", &JointTemporal::carrier_o);
  m.def("to_temporal", &to_temporal, py::arg("amplitude"), py::arg("pad_factor") = 4);
  m.def("from_temporal", &from_temporal, py::arg("temporal"), py::arg("grid"));
  py::class_<TemporalDurations>(m, "TemporalDurations")
      .def_readonly("fwhm_e", &TemporalDurations::fwhm_e)
      .def_readonly("fwhm_o", &TemporalDurations::fwhm_o);
  m.def("temporal_marginal_duration", &temporal_marginal_duration, py::arg("temporal"));
  m.def("temporal_correlation", &temporal_correlation, py::arg("temporal"));

  py::class_<ReducedState>(m, "ReducedState")
      .def(py::init<>())
      .def_readwrite("omega", &ReducedState::omega)
      .def_readwrite("rho", &ReducedState::rho)
      .def("validate", &ReducedState::validate)
      .def("purity", &ReducedState::purity);
  m.def("reduce", &reduce, py::arg("amplitude"), py::arg("which"));
  m.def("visibility", &visibility, py::arg("state1"), py::arg("state2"));
  m.def("operational_distance", &operational_distance, py::arg("state1"), py::arg("state2"));
  m.def("purity_bound", &purity_bound, py::arg("visibility"));
  py::class_<DipCurve>(m, "DipCurve")
      .def_readonly("delays", &DipCurve::delays)
      .def_readonly("coincidence", &DipCurve::coincidence)
      .def_readonly("fitted_visibility", &DipCurve::fitted_visibility)
      .def_readonly("fitted_fwhm", &DipCurve::fitted_fwhm)
      .def_readonly("fitted_centre", &DipCurve::fitted_centre)
      .def_readonly("baseline", &DipCurve::baseline);
  m.def("dip_curve", &dip_curve, py::arg("state1"), py::arg("state2"), py::arg("delays"));
  py::class_<HeraldingEfficiency>(m, "HeraldingEfficiency")
      .def_readonly("eta_d", &HeraldingEfficiency::eta_d)
      .def_readonly("eta_h", &HeraldingEfficiency::eta_h)
      .def_readonly("eta_corrected", &HeraldingEfficiency::eta_corrected);
  m.def("heralding_efficiency", &heralding_efficiency, py::arg("rate_coincidence"),
        py::arg("rate_trigger"), py::arg("eta_q"), py::arg("fbs_correction") = false);

  py::class_<SourceConfig>(m, "SourceConfig")
      .def(py::init<>())
      .def_static("defaults", &SourceConfig::defaults)
      .def_static("from_json", &SourceConfig::from_json, py::arg("text"))
      .def_static("load", &SourceConfig::load, py::arg("path"))
      .def("to_json", &SourceConfig::to_json)
      .def("validate", &SourceConfig::validate)
      .def("pump_angular_fwhm_deg", &SourceConfig::pump_angular_fwhm_deg)
      .def("crystal_spec", &SourceConfig::crystal_spec)
      .def("pump_spec", &SourceConfig::pump_spec)
      .def("collection_spec", &SourceConfig::collection_spec)
      .def("frequency_grid", &SourceConfig::frequency_grid);

  py::enum_<SweepFidelity>(m, "SweepFidelity")
      .value("Fast", SweepFidelity::Fast)
      .value("Full", SweepFidelity::Full);
  py::class_<SweepParameter>(m, "SweepParameter")
      .def(py::init<>())
      .def(py::init([](const std::string& name, double min, double max, int steps) {
             return SweepParameter{name, min, max, steps};
           }),
           py::arg("name"), py::arg("min"), py::arg("max"), py::arg("steps"))
      .def_readwrite("name", &SweepParameter::name)
      .def_readwrite("min", &SweepParameter::min)
      .def_readwrite("max", &SweepParameter::max)
      .def_readwrite("steps", &SweepParameter::steps);
  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("x", &SweepSpec::x)
      .def_readwrite("y", &SweepSpec::y)
      .def_readwrite("base", &SweepSpec::base)
      .def_readwrite("fidelity", &SweepSpec::fidelity)
      .def_readwrite("threads", &SweepSpec::threads);
  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("x_values", &SweepResult::x_values)
      .def_readonly("y_values", &SweepResult::y_values)
      .def_readonly("purity", &SweepResult::purity)
      .def_readonly("schmidt_number", &SweepResult::schmidt_number);
  m.def("run_sweep", &run_sweep, py::arg("spec"), py::call_guard<py::gil_scoped_release>());

  py::enum_<MeasuredFormat>(m, "MeasuredFormat")
      .value("CsvGrid", MeasuredFormat::CsvGrid)
      .value("ThreeColumn", MeasuredFormat::ThreeColumn);
  py::class_<MeasuredJSI>(m, "MeasuredJSI")
      .def(py::init<>())
      .def_readwrite("lambda_e_nm", &MeasuredJSI::lambda_e_nm)
      .def_readwrite("lambda_o_nm", &MeasuredJSI::lambda_o_nm)
      .def_readwrite("counts", &MeasuredJSI::counts)
      .def("validate", &MeasuredJSI::validate);
  m.def("load_measured", &load_measured, py::arg("path"), py::arg("format"));
  m.def("parse_measured", &parse_measured, py::arg("text"), py::arg("format"),
        py::arg("origin") = std::string("<input>"));
  py::class_<MeasuredReport>(m, "MeasuredReport")
      .def_readonly("schmidt", &MeasuredReport::schmidt)
      .def_readonly("fwhm_e_nm", &MeasuredReport::fwhm_e_nm)
      .def_readonly("fwhm_o_nm", &MeasuredReport::fwhm_o_nm)
      .def_readonly("ridge_nm", &MeasuredReport::ridge_nm);
  m.def("analyze_measured", &analyze_measured, py::arg("data"));

  m.def("omega_from_nm", &omega_from_nm, py::arg("lambda_nm"));
  m.def("nm_from_omega", &nm_from_omega, py::arg("omega"));
  m.def("amplitude_sigma_from_intensity_fwhm", &amplitude_sigma_from_intensity_fwhm,
        py::arg("fwhm"));
}
