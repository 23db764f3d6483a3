#include "biphoton/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "biphoton/constants.hpp"

namespace biphoton {

using json = nlohmann::ordered_json;

namespace {

void reject_unknown(const json& obj, const char* scope,
                    std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) { ok = true; break; }
    if (!ok)
      throw std::invalid_argument(std::string("unknown key '") + scope + "." + it.key() + "'");
  }
}

double require_positive(const json& v, const char* name) {
  if (!v.is_number())
    throw std::invalid_argument(std::string(name) + " must be a number");
  double x = v.get<double>();
  if (!(x > 0.0))
    throw std::invalid_argument(std::string(name) + " must be > 0");
  return x;
}

int parse_sign(const json& v, const char* name) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "positive" || s == "+") return +1;
    if (s == "negative" || s == "-") return -1;
    throw std::invalid_argument(std::string(name) + " must be 'positive' or 'negative'");
  }
  if (v.is_number_integer()) {
    int s = v.get<int>();
    if (s == 1 || s == -1) return s;
  }
  throw std::invalid_argument(std::string(name) + " must be +1/-1 or 'positive'/'negative'");
}

std::array<double, 6> parse_coeffs(const json& v, const char* name) {
  if (!v.is_array() || v.size() < 1 || v.size() > 6)
    throw std::invalid_argument(std::string(name) + " must be a list of 1..6 numbers");
  std::array<double, 6> c{};
  for (size_t i = 0; i < v.size(); ++i) c[i] = v[i].get<double>();
  return c;
}

}  // namespace

SellmeierSet sellmeier_from_json(const std::string& text) {
  json j = json::parse(text);
  reject_unknown(j, "sellmeier", {"crystal", "no_coeffs", "ne_coeffs", "range_nm"});
  for (const char* k : {"crystal", "no_coeffs", "ne_coeffs", "range_nm"})
    if (!j.contains(k))
      throw std::invalid_argument(std::string("sellmeier file missing key '") + k + "'");
  SellmeierSet s;
  s.name = j["crystal"].get<std::string>();
  s.no_coeffs = parse_coeffs(j["no_coeffs"], "no_coeffs");
  s.ne_coeffs = parse_coeffs(j["ne_coeffs"], "ne_coeffs");
  auto& r = j["range_nm"];
  if (!r.is_array() || r.size() != 2)
    throw std::invalid_argument("range_nm must be [min_nm, max_nm]");
  s.min_wavelength_nm = r[0].get<double>();
  s.max_wavelength_nm = r[1].get<double>();
  if (!(s.min_wavelength_nm > 0.0 && s.max_wavelength_nm > s.min_wavelength_nm))
    throw std::invalid_argument("range_nm must satisfy 0 < min < max");
  return s;
}

SellmeierSet load_sellmeier_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sellmeier file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return sellmeier_from_json(ss.str());
}

SourceConfig SourceConfig::from_json(const std::string& text) {
  SourceConfig c;
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  if (trimmed.empty()) return c;

  json j = json::parse(text);
  reject_unknown(j, "config",
                 {"crystal", "pump", "collection", "grid", "quadrature", "sellmeier"});

  if (j.contains("crystal")) {
    const auto& jc = j["crystal"];
    reject_unknown(jc, "crystal", {"name", "length_mm", "theta_pm_deg", "orientation_sign"});
    if (jc.contains("name")) c.crystal.name = jc["name"].get<std::string>();
    if (jc.contains("length_mm"))
      c.crystal.length_mm = require_positive(jc["length_mm"], "crystal.length_mm");
    if (jc.contains("theta_pm_deg")) {
      const auto& t = jc["theta_pm_deg"];
      if (t.is_string()) {
        if (t.get<std::string>() != "auto")
          throw std::invalid_argument("crystal.theta_pm_deg must be a number or \"auto\"");
        c.crystal.theta_pm_deg.reset();
      } else {
        c.crystal.theta_pm_deg = require_positive(t, "crystal.theta_pm_deg");
      }
    }
    if (jc.contains("orientation_sign"))
      c.crystal.orientation_sign = parse_sign(jc["orientation_sign"], "crystal.orientation_sign");
  }

  if (j.contains("pump")) {
    const auto& jp = j["pump"];
    reject_unknown(jp, "pump",
                   {"center_nm", "fwhm_nm", "angular_fwhm_deg", "beam_fwhm_um", "focal_mm",
                    "chirp_nm_per_fwhm", "chirp_sign"});
    if (jp.contains("center_nm"))
      c.pump.center_nm = require_positive(jp["center_nm"], "pump.center_nm");
    if (jp.contains("fwhm_nm"))
      c.pump.fwhm_nm = require_positive(jp["fwhm_nm"], "pump.fwhm_nm");
    if (jp.contains("angular_fwhm_deg"))
      c.pump.angular_fwhm_deg = require_positive(jp["angular_fwhm_deg"], "pump.angular_fwhm_deg");
    if (jp.contains("beam_fwhm_um"))
      c.pump.beam_fwhm_um = require_positive(jp["beam_fwhm_um"], "pump.beam_fwhm_um");
    if (jp.contains("focal_mm"))
      c.pump.focal_mm = require_positive(jp["focal_mm"], "pump.focal_mm");
    if (jp.contains("chirp_nm_per_fwhm")) {
      if (!jp["chirp_nm_per_fwhm"].is_number())
        throw std::invalid_argument("pump.chirp_nm_per_fwhm must be a number");
      c.pump.chirp_nm_per_fwhm = jp["chirp_nm_per_fwhm"].get<double>();
    }
    if (jp.contains("chirp_sign"))
      c.pump.chirp_sign = parse_sign(jp["chirp_sign"], "pump.chirp_sign");
  }

  if (j.contains("collection")) {
    const auto& jf = j["collection"];
    reject_unknown(jf, "collection", {"fwhm_deg"});
    if (jf.contains("fwhm_deg"))
      c.collection.fwhm_deg = require_positive(jf["fwhm_deg"], "collection.fwhm_deg");
  }

  if (j.contains("grid")) {
    const auto& jg = j["grid"];
    reject_unknown(jg, "grid", {"n", "span_nm", "center_nm"});
    if (jg.contains("n")) {
      if (!jg["n"].is_number_integer() || jg["n"].get<int>() < 2)
        throw std::invalid_argument("grid.n must be an integer >= 2");
      c.grid.n = jg["n"].get<int>();
    }
    if (jg.contains("span_nm"))
      c.grid.span_nm = require_positive(jg["span_nm"], "grid.span_nm");
    if (jg.contains("center_nm"))
      c.grid.center_nm = require_positive(jg["center_nm"], "grid.center_nm");
  }

  if (j.contains("quadrature")) {
    const auto& jq = j["quadrature"];
    reject_unknown(jq, "quadrature", {"n_angles", "span_widths"});
    if (jq.contains("n_angles")) {
      if (!jq["n_angles"].is_number_integer())
        throw std::invalid_argument("quadrature.n_angles must be an integer");
      c.quadrature.n_angles = jq["n_angles"].get<int>();
    }
    if (jq.contains("span_widths"))
      c.quadrature.span_widths = require_positive(jq["span_widths"], "quadrature.span_widths");
  }

  if (j.contains("sellmeier")) c.sellmeier_override = sellmeier_from_json(j["sellmeier"].dump());

  c.validate();
  return c;
}

SourceConfig SourceConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string SourceConfig::to_json() const {
  json j;
  j["crystal"]["name"] = crystal.name;
  j["crystal"]["length_mm"] = crystal.length_mm;
  if (crystal.theta_pm_deg)
    j["crystal"]["theta_pm_deg"] = *crystal.theta_pm_deg;
  else
    j["crystal"]["theta_pm_deg"] = "auto";
  j["crystal"]["orientation_sign"] = crystal.orientation_sign;
  j["pump"]["center_nm"] = pump.center_nm;
  j["pump"]["fwhm_nm"] = pump.fwhm_nm;
  if (pump.beam_fwhm_um && pump.focal_mm) {
    j["pump"]["beam_fwhm_um"] = *pump.beam_fwhm_um;
    j["pump"]["focal_mm"] = *pump.focal_mm;
  } else {
    j["pump"]["angular_fwhm_deg"] = pump_angular_fwhm_deg();
  }
  j["pump"]["chirp_nm_per_fwhm"] = pump.chirp_nm_per_fwhm;
  j["pump"]["chirp_sign"] = pump.chirp_sign == 1 ? "positive" : "negative";
  j["collection"]["fwhm_deg"] = collection.fwhm_deg;
  j["grid"]["n"] = grid.n;
  j["grid"]["span_nm"] = grid.span_nm;
  j["grid"]["center_nm"] = grid.center_nm;
  j["quadrature"]["n_angles"] = quadrature.n_angles;
  j["quadrature"]["span_widths"] = quadrature.span_widths;
  if (sellmeier_override) {
    json s;
    s["crystal"] = sellmeier_override->name;
    s["no_coeffs"] = sellmeier_override->no_coeffs;
    s["ne_coeffs"] = sellmeier_override->ne_coeffs;
    s["range_nm"] = {sellmeier_override->min_wavelength_nm,
                     sellmeier_override->max_wavelength_nm};
    j["sellmeier"] = s;
  }
  return j.dump();
}

void SourceConfig::validate() const {
  if (!(crystal.length_mm > 0.0)) throw std::invalid_argument("crystal.length_mm must be > 0");
  if (crystal.theta_pm_deg && !(*crystal.theta_pm_deg > 0.0 && *crystal.theta_pm_deg < 90.0))
    throw std::invalid_argument("crystal.theta_pm_deg must lie in (0, 90)");
  if (pump.beam_fwhm_um.has_value() != pump.focal_mm.has_value())
    throw std::invalid_argument("pump.beam_fwhm_um and pump.focal_mm must be given together");
  if (pump.angular_fwhm_deg && pump.beam_fwhm_um)
    throw std::invalid_argument(
        "give either pump.angular_fwhm_deg or the beam_fwhm_um/focal_mm pair, not both");
  double ang = pump_angular_fwhm_deg();
  if (!(ang > 0.0 && ang < 5.0))
    throw std::invalid_argument("pump angular FWHM must lie in (0, 5) degrees");
  if (!(collection.fwhm_deg > 0.0 && collection.fwhm_deg < 5.0))
    throw std::invalid_argument("collection.fwhm_deg must lie in (0, 5) degrees");
  if (grid.n < 2) throw std::invalid_argument("grid.n must be >= 2");
  if (quadrature.n_angles < 1 || quadrature.n_angles % 2 == 0)
    throw std::invalid_argument("quadrature.n_angles must be odd and >= 1");
  if (!(quadrature.span_widths > 0.0))
    throw std::invalid_argument("quadrature.span_widths must be > 0");
}

double SourceConfig::pump_angular_fwhm_deg() const {
  if (pump.beam_fwhm_um && pump.focal_mm)
    return degrees_from_radians((*pump.beam_fwhm_um * 1e-6) / (*pump.focal_mm * 1e-3));
  if (pump.angular_fwhm_deg) return *pump.angular_fwhm_deg;
  return 0.16;
}

SellmeierSet SourceConfig::sellmeier() const {
  if (sellmeier_override) return *sellmeier_override;
  return sellmeier_by_name(crystal.name);
}

CrystalSpec SourceConfig::crystal_spec() const {
  CrystalSpec spec;
  spec.sellmeier = sellmeier();
  spec.length = crystal.length_mm * 1e-3;
  spec.orientation_sign = crystal.orientation_sign;
  if (crystal.theta_pm_deg) {
    spec.theta_pm = radians_from_degrees(*crystal.theta_pm_deg);
  } else {
    double lp = pump.center_nm * 1e-9;
    spec.theta_pm = solve_collinear_pm_angle(spec.sellmeier, lp, 2.0 * lp, 2.0 * lp);
  }
  spec.validate();
  return spec;
}

PumpSpec SourceConfig::pump_spec() const {
  PumpSpec p;
  p.omega0 = omega_from_nm(pump.center_nm);
  p.sigma = amplitude_sigma_from_intensity_fwhm(
      omega_span_from_nm(pump.fwhm_nm, pump.center_nm));
  double ang_fwhm = radians_from_degrees(pump_angular_fwhm_deg());
  p.sigma_angular = amplitude_sigma_from_intensity_fwhm(ang_fwhm);
  // Positive chirp = pump wavelength increasing with delta_p, so q < 0. The
  // chirp is quoted in nm at the degenerate scale (2 lambda_p) per angular
  // intensity FWHM (= beam FWHM / focal length through the lens mapping).
  double lambda_deg_nm = 2.0 * pump.center_nm;
  p.chirp_rate = -double(pump.chirp_sign) *
                 omega_span_from_nm(pump.chirp_nm_per_fwhm, lambda_deg_nm) / ang_fwhm;
  p.chirp_sign = pump.chirp_sign;
  p.validate();
  return p;
}

CollectionSpec SourceConfig::collection_spec() const {
  CollectionSpec f;
  f.sigma_angular = amplitude_sigma_from_intensity_fwhm(
      radians_from_degrees(collection.fwhm_deg));
  f.n_angles = quadrature.n_angles;
  f.span_widths = quadrature.span_widths;
  f.validate();
  return f;
}

FrequencyGrid SourceConfig::frequency_grid() const {
  return FrequencyGrid::centered(grid.n, grid.span_nm, grid.center_nm);
}

}  // namespace biphoton
