#include "biphoton/gridfile.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace biphoton {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_axis(std::ostream& out, const Eigen::VectorXd& ax) {
  for (Eigen::Index i = 0; i < ax.size(); ++i) {
    if (i) out << ' ';
    out << fmt17(ax(i));
  }
  out << '\n';
}

double parse_double(const std::string& tok, int line_no) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw std::runtime_error("grid file line " + std::to_string(line_no) +
                             ": malformed number '" + tok + "'");
  return v;
}

Eigen::VectorXd parse_axis(const std::string& line, int line_no) {
  std::istringstream ss(line);
  std::vector<double> vals;
  std::string tok;
  while (ss >> tok) vals.push_back(parse_double(tok, line_no));
  if (vals.size() < 2)
    throw std::runtime_error("grid file line " + std::to_string(line_no) + ": axis too short");
  return Eigen::Map<Eigen::VectorXd>(vals.data(), Eigen::Index(vals.size()));
}

}  // namespace

void save_grid(const GridFile& g, const std::string& path) {
  if (g.values.rows() != g.axis1.size() || g.values.cols() != g.axis2.size())
    throw std::invalid_argument("grid values do not match the axes");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << grid_format_magic << '\n';
  out << "# version: " << g.version << '\n';
  out << "# kind: " << g.kind << '\n';
  out << "# dtype: " << (g.complex_values ? "complex" : "real") << '\n';
  out << "# axis1: " << g.axis1_name << ' ' << g.axis1_unit << ' ' << g.axis1.size() << '\n';
  out << "# axis2: " << g.axis2_name << ' ' << g.axis2_unit << ' ' << g.axis2.size() << '\n';
  for (const auto& [k, v] : g.meta) out << "# meta: " << k << '=' << v << '\n';
  out << "# config: " << g.config_json << '\n';
  write_axis(out, g.axis1);
  write_axis(out, g.axis2);
  for (Eigen::Index i = 0; i < g.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.values.cols(); ++j) {
      if (j) out << ' ';
      if (g.complex_values)
        out << fmt17(g.values(i, j).real()) << ',' << fmt17(g.values(i, j).imag());
      else
        out << fmt17(g.values(i, j).real());
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

GridFile load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open grid file '" + path + "'");
  GridFile g;
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line) || line != grid_format_magic)
    throw std::runtime_error("'" + path + "' is not a biphoton grid file");
  ++line_no;

  Eigen::Index n1 = -1, n2 = -1;
  while (in.peek() == '#') {
    std::getline(in, line);
    ++line_no;
    auto colon = line.find(": ");
    if (colon == std::string::npos || line.size() < 3)
      throw std::runtime_error("grid file line " + std::to_string(line_no) +
                               ": malformed header line");
    std::string key = line.substr(2, colon - 2);
    std::string val = line.substr(colon + 2);
    if (key == "version") {
      g.version = val;
      g.version_mismatch = val != tool_version;
    } else if (key == "kind") {
      g.kind = val;
    } else if (key == "dtype") {
      if (val != "complex" && val != "real")
        throw std::runtime_error("grid file line " + std::to_string(line_no) +
                                 ": dtype must be complex or real");
      g.complex_values = val == "complex";
    } else if (key == "axis1" || key == "axis2") {
      std::istringstream ss(val);
      std::string name, unit;
      long n = 0;
      if (!(ss >> name >> unit >> n) || n < 2)
        throw std::runtime_error("grid file line " + std::to_string(line_no) +
                                 ": malformed axis descriptor");
      if (key == "axis1") { g.axis1_name = name; g.axis1_unit = unit; n1 = n; }
      else { g.axis2_name = name; g.axis2_unit = unit; n2 = n; }
    } else if (key == "meta") {
      auto eq = val.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("grid file line " + std::to_string(line_no) +
                                 ": malformed meta line");
      g.meta[val.substr(0, eq)] = val.substr(eq + 1);
    } else if (key == "config") {
      g.config_json = val;
    } else {
      throw std::runtime_error("grid file line " + std::to_string(line_no) +
                               ": unknown header key '" + key + "'");
    }
  }
  if (n1 < 0 || n2 < 0) throw std::runtime_error("grid file missing axis descriptors");

  if (!std::getline(in, line)) throw std::runtime_error("grid file truncated before axis1");
  g.axis1 = parse_axis(line, ++line_no);
  if (!std::getline(in, line)) throw std::runtime_error("grid file truncated before axis2");
  g.axis2 = parse_axis(line, ++line_no);
  if (g.axis1.size() != n1 || g.axis2.size() != n2)
    throw std::runtime_error("grid file axes do not match their declared lengths");

  g.values.resize(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("grid file truncated at row " + std::to_string(i));
    ++line_no;
    std::istringstream ss(line);
    std::string tok;
    for (Eigen::Index j = 0; j < n2; ++j) {
      if (!(ss >> tok))
        throw std::runtime_error("grid file line " + std::to_string(line_no) + ": row " +
                                 std::to_string(i) + " has only " + std::to_string(j) +
                                 " of " + std::to_string(n2) + " values");
      if (g.complex_values) {
        auto comma = tok.find(',');
        if (comma == std::string::npos)
          throw std::runtime_error("grid file line " + std::to_string(line_no) +
                                   ": expected re,im pair, got '" + tok + "'");
        g.values(i, j) = {parse_double(tok.substr(0, comma), line_no),
                          parse_double(tok.substr(comma + 1), line_no)};
      } else {
        g.values(i, j) = {parse_double(tok, line_no), 0.0};
      }
    }
    if (ss >> tok)
      throw std::runtime_error("grid file line " + std::to_string(line_no) + ": row " +
                               std::to_string(i) + " has trailing values");
  }
  return g;
}

GridFile gridfile_from_jsa(const JointAmplitude& F, const std::string& config_json,
                           const std::map<std::string, std::string>& meta) {
  F.validate();
  GridFile g;
  g.kind = "jsa";
  g.complex_values = true;
  g.axis1 = F.grid.omega_e;
  g.axis2 = F.grid.omega_o;
  g.values = F.values;
  g.meta = meta;
  g.meta["normalized"] = F.normalized ? "1" : "0";
  g.config_json = config_json;
  return g;
}

JointAmplitude jsa_from_gridfile(const GridFile& g) {
  if (g.kind != "jsa")
    throw std::invalid_argument("grid file holds '" + g.kind + "', expected 'jsa'");
  JointAmplitude F;
  F.grid.omega_e = g.axis1;
  F.grid.omega_o = g.axis2;
  F.values = g.values;
  auto it = g.meta.find("normalized");
  F.normalized = it != g.meta.end() && it->second == "1";
  F.validate();
  return F;
}

GridFile gridfile_from_temporal(const JointTemporal& T, const std::string& config_json) {
  GridFile g;
  g.kind = "temporal";
  g.complex_values = true;
  g.axis1_name = "t_e";
  g.axis2_name = "t_o";
  g.axis1_unit = g.axis2_unit = "fs";
  g.axis1 = T.t_e * 1e15;
  g.axis2 = T.t_o * 1e15;
  g.values = T.values;
  g.meta["pad_factor"] = std::to_string(T.pad_factor);
  g.config_json = config_json;
  return g;
}

}  // namespace biphoton
