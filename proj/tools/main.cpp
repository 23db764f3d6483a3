#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "biphoton/config.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/gridfile.hpp"
#include "biphoton/heatmap.hpp"
#include "biphoton/ingest.hpp"
#include "biphoton/interference.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/temporal.hpp"

namespace {

using namespace biphoton;

constexpr int exit_ok = 0;
constexpr int exit_error = 2;        // validation or runtime failure
constexpr int exit_convergence = 3;  // --check-convergence budget exceeded

struct ConfigCli {
  std::string config_path;
  std::string sellmeier_file;
  int threads = 1;

  std::optional<std::string> crystal_name;
  std::optional<double> crystal_length_mm;
  std::optional<std::string> theta_pm_deg;  // number or "auto"
  std::optional<int> orientation_sign;
  std::optional<double> pump_center_nm, pump_fwhm_nm, pump_angular_fwhm_deg;
  std::optional<double> beam_fwhm_um, focal_mm;
  std::optional<double> chirp_nm_per_fwhm;
  std::optional<std::string> chirp_sign;
  std::optional<double> collection_fwhm_deg;
  std::optional<int> grid_n;
  std::optional<double> grid_span_nm, grid_center_nm;
  std::optional<int> n_angles;
  std::optional<double> span_widths;
};

void add_config_options(CLI::App* cmd, ConfigCli& c) {
  cmd->add_option("--config", c.config_path,
                  "Config file (JSON); default $BIPHOTON_CONFIG when set");
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--sellmeier-file", c.sellmeier_file, "Sellmeier override file");
  cmd->add_option("--crystal", c.crystal_name, "Crystal name (KDP, BBO)");
  cmd->add_option("--crystal-length-mm", c.crystal_length_mm, "Crystal length, mm");
  cmd->add_option("--theta-pm-deg", c.theta_pm_deg, "Phasematching angle, deg, or 'auto'");
  cmd->add_option("--orientation-sign", c.orientation_sign, "Crystal orientation, +1 or -1");
  cmd->add_option("--pump-center-nm", c.pump_center_nm, "Pump central wavelength, nm");
  cmd->add_option("--pump-fwhm-nm", c.pump_fwhm_nm, "Pump intensity FWHM, nm");
  cmd->add_option("--pump-angular-fwhm-deg", c.pump_angular_fwhm_deg,
                  "Pump angular intensity FWHM, deg");
  cmd->add_option("--beam-fwhm-um", c.beam_fwhm_um, "Pump beam FWHM before the lens, um");
  cmd->add_option("--focal-mm", c.focal_mm, "Pump lens focal length, mm");
  cmd->add_option("--chirp-nm-per-fwhm", c.chirp_nm_per_fwhm,
                  "Spatial chirp, nm (at the degenerate scale) per angular FWHM");
  cmd->add_option("--chirp-sign", c.chirp_sign, "positive or negative");
  cmd->add_option("--collection-fwhm-deg", c.collection_fwhm_deg,
                  "Pair collection intensity FWHM, deg");
  cmd->add_option("--grid-n", c.grid_n, "Grid points per axis");
  cmd->add_option("--grid-span-nm", c.grid_span_nm, "Grid span, nm");
  cmd->add_option("--grid-center-nm", c.grid_center_nm, "Grid centre, nm");
  cmd->add_option("--n-angles", c.n_angles, "Quadrature points per angular axis (odd)");
  cmd->add_option("--span-widths", c.span_widths, "Quadrature half-range, amplitude widths");
}

SourceConfig resolve_config(const ConfigCli& c) {
  SourceConfig cfg;
  std::string path = c.config_path;
  if (path.empty()) {
    const char* env = std::getenv("BIPHOTON_CONFIG");
    if (env && *env) path = env;
  }
  if (!path.empty()) cfg = SourceConfig::load(path);

  if (c.crystal_name) cfg.crystal.name = *c.crystal_name;
  if (c.crystal_length_mm) cfg.crystal.length_mm = *c.crystal_length_mm;
  if (c.theta_pm_deg) {
    if (*c.theta_pm_deg == "auto") cfg.crystal.theta_pm_deg.reset();
    else cfg.crystal.theta_pm_deg = std::stod(*c.theta_pm_deg);
  }
  if (c.orientation_sign) cfg.crystal.orientation_sign = *c.orientation_sign;
  if (c.pump_center_nm) cfg.pump.center_nm = *c.pump_center_nm;
  if (c.pump_fwhm_nm) cfg.pump.fwhm_nm = *c.pump_fwhm_nm;
  if (c.pump_angular_fwhm_deg) {
    cfg.pump.angular_fwhm_deg = *c.pump_angular_fwhm_deg;
    cfg.pump.beam_fwhm_um.reset();
    cfg.pump.focal_mm.reset();
  }
  if (c.beam_fwhm_um || c.focal_mm) {
    if (!(c.beam_fwhm_um && c.focal_mm))
      throw std::invalid_argument("--beam-fwhm-um and --focal-mm must be given together");
    cfg.pump.beam_fwhm_um = *c.beam_fwhm_um;
    cfg.pump.focal_mm = *c.focal_mm;
    cfg.pump.angular_fwhm_deg.reset();
  }
  if (c.chirp_nm_per_fwhm) cfg.pump.chirp_nm_per_fwhm = *c.chirp_nm_per_fwhm;
  if (c.chirp_sign) {
    if (*c.chirp_sign == "positive") cfg.pump.chirp_sign = +1;
    else if (*c.chirp_sign == "negative") cfg.pump.chirp_sign = -1;
    else throw std::invalid_argument("--chirp-sign must be positive or negative");
  }
  if (c.collection_fwhm_deg) cfg.collection.fwhm_deg = *c.collection_fwhm_deg;
  if (c.grid_n) cfg.grid.n = *c.grid_n;
  if (c.grid_span_nm) cfg.grid.span_nm = *c.grid_span_nm;
  if (c.grid_center_nm) cfg.grid.center_nm = *c.grid_center_nm;
  if (c.n_angles) cfg.quadrature.n_angles = *c.n_angles;
  if (c.span_widths) cfg.quadrature.span_widths = *c.span_widths;
  if (!c.sellmeier_file.empty()) cfg.sellmeier_override = load_sellmeier_file(c.sellmeier_file);
  cfg.validate();
  return cfg;
}

JointAmplitude integrated_from_config(const SourceConfig& cfg, int threads,
                                      bool exact_filter = false) {
  return jsa_integrated(cfg.frequency_grid(), cfg.crystal_spec(), cfg.pump_spec(),
                        cfg.collection_spec(), threads, exact_filter);
}

// Doubled quadrature resolution (2n-1 points over the same span).
double convergence_delta_k(const SourceConfig& cfg, int threads, bool exact_filter,
                           double k_base) {
  SourceConfig fine = cfg;
  fine.quadrature.n_angles = 2 * cfg.quadrature.n_angles - 1;
  double k_fine = decompose(integrated_from_config(fine, threads, exact_filter)).schmidt_number;
  return std::abs(k_fine - k_base);
}

void write_heatmap_for(const GridFile& g, const std::string& path) {
  HeatmapAnnotations notes;
  notes.axis1_name = g.axis1_name;
  notes.axis1_unit = g.axis1_unit;
  notes.axis2_name = g.axis2_name;
  notes.axis2_unit = g.axis2_unit;
  notes.axis1_min = g.axis1.minCoeff();
  notes.axis1_max = g.axis1.maxCoeff();
  notes.axis2_min = g.axis2.minCoeff();
  notes.axis2_max = g.axis2.maxCoeff();
  notes.config_json = g.config_json;
  Eigen::MatrixXd img =
      g.complex_values ? Eigen::MatrixXd(g.values.cwiseAbs2()) : g.real_values();
  render_heatmap(img, path, notes);
}

void warn_version(const GridFile& g, const std::string& path) {
  if (g.version_mismatch)
    std::cerr << "warning: " << path << " was written by tool version " << g.version
              << ", this is " << tool_version << "\n";
}

std::ostream& open_report(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open report file '" + path + "'");
  return file;
}

int run_check(const ConfigCli& ccli) {
  SourceConfig cfg = resolve_config(ccli);
  CrystalSpec crystal = cfg.crystal_spec();
  PumpSpec pump = cfg.pump_spec();
  FactorabilityReport r = factorability_check(crystal, pump);
  std::printf("# biphoton factorability check\n# config: %s\n", cfg.to_json().c_str());
  std::printf("theta_pm_deg:          %.6f\n", degrees_from_radians(crystal.theta_pm));
  std::printf("vg_pump_m_per_s:       %.6e\n", r.vg_pump);
  std::printf("vg_e_m_per_s:          %.6e\n", r.vg_e);
  std::printf("vg_o_m_per_s:          %.6e\n", r.vg_o);
  std::printf("term1:                 %.6e\n", r.term1);
  std::printf("term2:                 %.6e\n", r.term2);
  std::printf("residual:              %.6e\n", r.residual);
  std::printf("transit_time_diff_s:   %.6e\n", r.transit_time_diff);
  std::printf("inverse_bandwidth_s:   %.6e\n", r.inverse_bandwidth);
  std::printf("bandwidth_vs_transit:  %.4f  (want << 1)\n",
              r.inverse_bandwidth / r.transit_time_diff);
  return exit_ok;
}

struct JsaArgs {
  bool planewave = false;
  bool exact_filter = false;
  bool check_convergence = false;
  double delta_p_deg = 0.0, delta_e_deg = 0.0;
  std::string output, heatmap;
};

int run_jsa(const ConfigCli& ccli, const JsaArgs& a) {
  SourceConfig cfg = resolve_config(ccli);
  if (a.check_convergence && a.planewave)
    throw std::invalid_argument("--check-convergence applies to the integrated amplitude");
  JointAmplitude F;
  std::map<std::string, std::string> meta;
  meta["chirp_sign"] = cfg.pump.chirp_sign == 1 ? "positive" : "negative";
  if (a.planewave) {
    F = jsa_planewave(cfg.frequency_grid(), cfg.crystal_spec(), cfg.pump_spec(),
                      radians_from_degrees(a.delta_p_deg),
                      radians_from_degrees(a.delta_e_deg));
    meta["mode"] = "planewave";
  } else {
    F = integrated_from_config(cfg, ccli.threads, a.exact_filter);
    meta["mode"] = a.exact_filter ? "integrated-exact-filter" : "integrated";
  }
  GridFile g = gridfile_from_jsa(F, cfg.to_json(), meta);
  save_grid(g, a.output);
  if (!a.heatmap.empty()) write_heatmap_for(g, a.heatmap);

  SchmidtResult s = decompose(F);
  std::printf("K = %.6f  P = %.6f  ->  %s\n", s.schmidt_number, s.purity, a.output.c_str());
  if (a.check_convergence && !a.planewave) {
    double dk = convergence_delta_k(cfg, ccli.threads, a.exact_filter, s.schmidt_number);
    std::printf("convergence: |dK| = %.6f at doubled angular resolution (budget 0.005)\n", dk);
    if (!(dk < 0.005)) {
      std::cerr << "error: quadrature is under-sampled (|dK| >= 0.005)\n";
      return exit_convergence;
    }
  }
  return exit_ok;
}

struct SchmidtArgs {
  std::string input, report;
  int modes = 10;
  bool check_convergence = false;
};

int run_schmidt(const ConfigCli& ccli, const SchmidtArgs& a) {
  SourceConfig cfg = resolve_config(ccli);
  if (a.check_convergence && !a.input.empty())
    throw std::invalid_argument("--check-convergence needs a computed amplitude, not --input");
  JointAmplitude F;
  std::string config_echo = cfg.to_json();
  if (!a.input.empty()) {
    GridFile g = load_grid(a.input);
    warn_version(g, a.input);
    F = jsa_from_gridfile(g);
    if (!g.config_json.empty()) config_echo = g.config_json;
  } else {
    F = integrated_from_config(cfg, ccli.threads);
  }
  SchmidtResult s = decompose(F);
  if (!s.input_was_normalized)
    std::cerr << "warning: input amplitude was not normalized; normalized internally\n";

  std::ofstream file;
  std::ostream& out = open_report(file, a.report);
  out << "# biphoton schmidt report\n# config: " << config_echo << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "K: %.17g\nP: %.17g\n", s.schmidt_number, s.purity);
  out << buf;
  int m = std::min<int>(a.modes, int(s.schmidt_magnitudes.size()));
  out << "lambda:";
  for (int i = 0; i < m; ++i) {
    std::snprintf(buf, sizeof(buf), " %.17g", s.schmidt_magnitudes(i));
    out << buf;
  }
  out << "\n";
  if (a.check_convergence && a.input.empty()) {
    double dk = convergence_delta_k(cfg, ccli.threads, false, s.schmidt_number);
    std::printf("convergence: |dK| = %.6f at doubled angular resolution (budget 0.005)\n", dk);
    if (!(dk < 0.005)) {
      std::cerr << "error: quadrature is under-sampled (|dK| >= 0.005)\n";
      return exit_convergence;
    }
  }
  return exit_ok;
}

struct TemporalArgs {
  std::string input, output, heatmap;
  int pad = 4;
};

int run_temporal(const ConfigCli& ccli, const TemporalArgs& a) {
  SourceConfig cfg = resolve_config(ccli);
  JointAmplitude F;
  std::string config_echo = cfg.to_json();
  if (!a.input.empty()) {
    GridFile g = load_grid(a.input);
    warn_version(g, a.input);
    F = jsa_from_gridfile(g);
    if (!g.config_json.empty()) config_echo = g.config_json;
  } else {
    F = integrated_from_config(cfg, ccli.threads);
  }
  if (!F.normalized) F.normalize();
  JointTemporal T = to_temporal(F, a.pad);
  GridFile g = gridfile_from_temporal(T, config_echo);
  save_grid(g, a.output);
  if (!a.heatmap.empty()) write_heatmap_for(g, a.heatmap);
  TemporalDurations d = temporal_marginal_duration(T);
  std::printf("temporal marginal FWHM: e %.1f fs, o %.1f fs; correlation %.4f  ->  %s\n",
              d.fwhm_e * 1e15, d.fwhm_o * 1e15, temporal_correlation(T), a.output.c_str());
  return exit_ok;
}

struct HomArgs {
  std::string input1, input2, output;
  std::string ray = "e";
  double tau_span_fs = 1500.0;
  int tau_points = 121;
};

int run_hom(const HomArgs& a) {
  GridFile g1 = load_grid(a.input1);
  warn_version(g1, a.input1);
  GridFile g2 = a.input2.empty() ? g1 : load_grid(a.input2);
  if (!a.input2.empty()) warn_version(g2, a.input2);

  JointAmplitude F1 = jsa_from_gridfile(g1);
  JointAmplitude F2 = jsa_from_gridfile(g2);
  if (!F1.grid.same_axes(F2.grid, 1e-9))
    throw std::invalid_argument("input grids have mismatched frequency axes");
  auto sign_of = [](const GridFile& g) {
    auto it = g.meta.find("chirp_sign");
    return it == g.meta.end() ? std::string("?") : it->second;
  };

  RayKind which = a.ray == "o" ? RayKind::Ordinary : RayKind::Extraordinary;
  if (a.ray != "e" && a.ray != "o") throw std::invalid_argument("--ray must be e or o");
  ReducedState r1 = reduce(F1, which);
  ReducedState r2 = reduce(F2, which);

  double v = visibility(r1, r2);
  double o = operational_distance(r1, r2);
  Eigen::VectorXd taus(a.tau_points);
  for (int i = 0; i < a.tau_points; ++i)
    taus(i) = (-a.tau_span_fs + 2.0 * a.tau_span_fs * i / double(a.tau_points - 1)) * 1e-15;
  DipCurve dip = dip_curve(r1, r2, taus);

  std::printf("chirp signs: %s / %s, ray: %s\n", sign_of(g1).c_str(), sign_of(g2).c_str(),
              a.ray.c_str());
  std::printf("V = Tr(rho1 rho2)        = %.6f\n", v);
  std::printf("operational distance O   = %.6f\n", o);
  std::printf("purities P1, P2          = %.6f, %.6f\n", r1.purity(), r2.purity());
  std::printf("mean-purity lower bound  = %.6f\n", purity_bound(std::clamp(v, 0.0, 1.0)));
  std::printf("fitted dip: V = %.6f, FWHM = %.1f fs, centre = %.2f fs, baseline = %.6f\n",
              dip.fitted_visibility, dip.fitted_fwhm * 1e15, dip.fitted_centre * 1e15,
              dip.baseline);

  if (!a.output.empty()) {
    std::ofstream out(a.output);
    if (!out) throw std::runtime_error("cannot open '" + a.output + "' for writing");
    out << "# biphoton hom dip\n# config: " << g1.config_json << "\n";
    out << "# columns: delay_fs coincidence_probability\n";
    char buf[96];
    for (Eigen::Index i = 0; i < taus.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", taus(i) * 1e15, dip.coincidence(i));
      out << buf;
    }
  }
  return exit_ok;
}

struct SweepArgs {
  std::string x_desc, y_desc, output, heatmap, fidelity = "fast";
};

SweepParameter parse_sweep_param(const std::string& desc) {
  SweepParameter p;
  auto fail = [&]() {
    throw std::invalid_argument("sweep descriptor '" + desc +
                                "' must be name:min:max:steps");
  };
  size_t a = desc.find(':');
  if (a == std::string::npos) fail();
  p.name = desc.substr(0, a);
  size_t b = desc.find(':', a + 1);
  if (b == std::string::npos) fail();
  size_t c = desc.find(':', b + 1);
  if (c == std::string::npos) fail();
  try {
    p.min = std::stod(desc.substr(a + 1, b - a - 1));
    p.max = std::stod(desc.substr(b + 1, c - b - 1));
    p.steps = std::stoi(desc.substr(c + 1));
  } catch (const std::exception&) {
    fail();
  }
  p.validate();
  return p;
}

int run_sweep_cmd(const ConfigCli& ccli, const SweepArgs& a) {
  SweepSpec spec;
  spec.base = resolve_config(ccli);
  spec.x = parse_sweep_param(a.x_desc);
  spec.y = parse_sweep_param(a.y_desc);
  spec.threads = ccli.threads;
  if (a.fidelity == "fast") spec.fidelity = SweepFidelity::Fast;
  else if (a.fidelity == "full") spec.fidelity = SweepFidelity::Full;
  else throw std::invalid_argument("--fidelity must be fast or full");

  SweepResult r = run_sweep(spec);

  auto make_grid = [&](const Eigen::MatrixXd& m, const std::string& kind) {
    GridFile g;
    g.kind = kind;
    g.complex_values = false;
    g.axis1_name = spec.x.name;
    g.axis2_name = spec.y.name;
    g.axis1_unit = g.axis2_unit = "param";
    g.axis1 = r.x_values;
    g.axis2 = r.y_values;
    g.values = m.cast<std::complex<double>>();
    g.meta["fidelity"] = a.fidelity;
    g.config_json = spec.base.to_json();
    return g;
  };
  save_grid(make_grid(r.purity, "sweep-purity"), a.output);
  save_grid(make_grid(r.schmidt_number, "sweep-schmidt"), a.output + ".k");
  if (!a.heatmap.empty()) write_heatmap_for(make_grid(r.purity, "sweep-purity"), a.heatmap);

  Eigen::Index bi, bj;
  r.purity.maxCoeff(&bi, &bj);
  std::printf("sweep %s x %s (%s fidelity): best P = %.4f at (%s = %g, %s = %g)  ->  %s\n",
              spec.x.name.c_str(), spec.y.name.c_str(), a.fidelity.c_str(), r.purity(bi, bj),
              spec.x.name.c_str(), r.x_values(bi), spec.y.name.c_str(), r.y_values(bj),
              a.output.c_str());
  return exit_ok;
}

struct AnalyzeArgs {
  std::string input, format = "csv_grid", report, heatmap;
};

int run_analyze(const AnalyzeArgs& a) {
  MeasuredFormat fmt;
  if (a.format == "csv_grid") fmt = MeasuredFormat::CsvGrid;
  else if (a.format == "three_column") fmt = MeasuredFormat::ThreeColumn;
  else throw std::invalid_argument("--format must be csv_grid or three_column");
  MeasuredJSI d = load_measured(a.input, fmt);
  MeasuredReport r = analyze_measured(d);

  std::ofstream file;
  std::ostream& out = open_report(file, a.report);
  char buf[160];
  out << "# biphoton measured-data analysis: " << a.input << "\n";
  std::snprintf(buf, sizeof(buf), "K_no_phase: %.6f\nP_no_phase: %.6f\n",
                r.schmidt.schmidt_number, r.schmidt.purity);
  out << buf;
  std::snprintf(buf, sizeof(buf), "marginal_fwhm_e_nm: %.4f\nmarginal_fwhm_o_nm: %.4f\n",
                r.fwhm_e_nm.value_or(std::nan("")), r.fwhm_o_nm.value_or(std::nan("")));
  out << buf;
  int present = 0;
  double rmin = 0, rmax = 0;
  for (const auto& c : r.ridge_nm)
    if (c) {
      if (present == 0) { rmin = rmax = *c; }
      rmin = std::min(rmin, *c);
      rmax = std::max(rmax, *c);
      ++present;
    }
  std::snprintf(buf, sizeof(buf),
                "ridge: %d/%d slices fitted, centre range [%.4f, %.4f] nm\n", present,
                int(r.ridge_nm.size()), rmin, rmax);
  out << buf;
  out << "ridge_centres_nm:";
  for (const auto& c : r.ridge_nm) {
    if (c) std::snprintf(buf, sizeof(buf), " %.6f", *c);
    else std::snprintf(buf, sizeof(buf), " nan");
    out << buf;
  }
  out << "\n";
  out << "# reference values, measured matched KDP source: positive chirp K=1.02 P=0.979, "
         "negative chirp K=1.12 P=0.894;\n";
  out << "# marginal FWHMs (e/o): positive 3.5/16.4 nm, negative 3.4/19.8 nm\n";

  if (!a.heatmap.empty()) {
    HeatmapAnnotations notes;
    notes.axis1_name = "lambda_e";
    notes.axis1_unit = "nm";
    notes.axis2_name = "lambda_o";
    notes.axis2_unit = "nm";
    notes.axis1_min = d.lambda_e_nm.minCoeff();
    notes.axis1_max = d.lambda_e_nm.maxCoeff();
    notes.axis2_min = d.lambda_o_nm.minCoeff();
    notes.axis2_max = d.lambda_o_nm.maxCoeff();
    render_heatmap(d.counts, a.heatmap, notes);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-velocity-matched downconversion source designer"};
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);

  ConfigCli ccli;
  JsaArgs jsa_args;
  SchmidtArgs schmidt_args;
  TemporalArgs temporal_args;
  HomArgs hom_args;
  SweepArgs sweep_args;
  AnalyzeArgs analyze_args;

  CLI::App* check = app.add_subcommand("check", "Group-velocity / factorability diagnostics");
  add_config_options(check, ccli);

  CLI::App* jsa = app.add_subcommand("jsa", "Compute a joint spectral amplitude grid");
  add_config_options(jsa, ccli);
  jsa->add_flag("--planewave", jsa_args.planewave, "Single plane-wave pair of angles");
  jsa->add_option("--delta-p-deg", jsa_args.delta_p_deg, "Pump angle (planewave mode)");
  jsa->add_option("--delta-e-deg", jsa_args.delta_e_deg, "e-ray angle (planewave mode)");
  jsa->add_flag("--exact-filter", jsa_args.exact_filter,
                "Use the paired-collection filter gF(de)gF(do) instead of gF^2(de)");
  jsa->add_flag("--check-convergence", jsa_args.check_convergence,
                "Re-run at doubled angular resolution and require |dK| < 0.005");
  jsa->add_option("-o,--output", jsa_args.output, "Output grid file")->required();
  jsa->add_option("--heatmap", jsa_args.heatmap, "Write a |F|^2 heatmap (PPM)");

  CLI::App* schmidt = app.add_subcommand("schmidt", "Schmidt decomposition report");
  add_config_options(schmidt, ccli);
  schmidt->add_option("--input", schmidt_args.input, "JSA grid file (default: compute)");
  schmidt->add_option("--report", schmidt_args.report, "Report file (default stdout)");
  schmidt->add_option("--modes", schmidt_args.modes, "How many Schmidt magnitudes to list");
  schmidt->add_flag("--check-convergence", schmidt_args.check_convergence,
                    "Re-run at doubled angular resolution and require |dK| < 0.005");

  CLI::App* temporal = app.add_subcommand("temporal", "Joint temporal intensity");
  add_config_options(temporal, ccli);
  temporal->add_option("--input", temporal_args.input, "JSA grid file (default: compute)");
  temporal->add_option("-o,--output", temporal_args.output, "Output grid file")->required();
  temporal->add_option("--heatmap", temporal_args.heatmap, "Write a |f|^2 heatmap (PPM)");
  temporal->add_option("--pad", temporal_args.pad, "Zero-padding factor")
      ->check(CLI::PositiveNumber);

  CLI::App* hom = app.add_subcommand("hom", "Two-source Hong-Ou-Mandel prediction");
  hom->add_option("--input1", hom_args.input1, "First JSA grid file")->required();
  hom->add_option("--input2", hom_args.input2, "Second JSA grid file (default: first)");
  hom->add_option("--ray", hom_args.ray, "Interfering photons: e or o");
  hom->add_option("--tau-span-fs", hom_args.tau_span_fs, "Half-range of delays, fs");
  hom->add_option("--tau-points", hom_args.tau_points, "Delay samples");
  hom->add_option("-o,--output", hom_args.output, "Dip curve output (two-column text)");

  CLI::App* sweep = app.add_subcommand("sweep", "2-D parameter sweep of purity and K");
  add_config_options(sweep, ccli);
  sweep->add_option("--x", sweep_args.x_desc, "First parameter, name:min:max:steps")
      ->required();
  sweep->add_option("--y", sweep_args.y_desc, "Second parameter, name:min:max:steps")
      ->required();
  sweep->add_option("--fidelity", sweep_args.fidelity, "fast (64x64, 9x9) or full");
  sweep->add_option("-o,--output", sweep_args.output, "Purity grid output; K goes to <o>.k")
      ->required();
  sweep->add_option("--heatmap", sweep_args.heatmap, "Write a purity heatmap (PPM)");

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze a measured joint spectrum");
  analyze->add_option("--input", analyze_args.input, "Measured-data file")->required();
  analyze->add_option("--format", analyze_args.format, "csv_grid or three_column");
  analyze->add_option("--report", analyze_args.report, "Report file (default stdout)");
  analyze->add_option("--heatmap", analyze_args.heatmap, "Write a counts heatmap (PPM)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(ccli);
    if (jsa->parsed()) return run_jsa(ccli, jsa_args);
    if (schmidt->parsed()) return run_schmidt(ccli, schmidt_args);
    if (temporal->parsed()) return run_temporal(ccli, temporal_args);
    if (hom->parsed()) return run_hom(hom_args);
    if (sweep->parsed()) return run_sweep_cmd(ccli, sweep_args);
    if (analyze->parsed()) return run_analyze(analyze_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
