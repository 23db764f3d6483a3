#pragma once

#include <map>
#include <string>

#include <Eigen/Core>

#include "biphoton/jsa.hpp"
#include "biphoton/temporal.hpp"

namespace biphoton {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* grid_format_magic = "# biphoton grid v1";

// Text container for 2-D gridded data: '#' header lines (format tag, tool
// version, kind, dtype, axis descriptors, metadata, effective config), then
// the two axis vectors, then row-major values. All numbers are printed with
// 17 significant digits so load(save(x)) == x bit-exactly.
struct GridFile {
  std::string kind;                     // "jsa", "jsi", "temporal", "sweep", ...
  bool complex_values = true;
  std::string axis1_name = "omega_e", axis1_unit = "rad/s";
  std::string axis2_name = "omega_o", axis2_unit = "rad/s";
  Eigen::VectorXd axis1, axis2;
  Eigen::MatrixXcd values;              // row i follows axis1, column j axis2
  std::map<std::string, std::string> meta;
  std::string config_json;              // effective SourceConfig echo
  std::string version = tool_version;
  bool version_mismatch = false;        // set by load

  Eigen::MatrixXd real_values() const { return values.real(); }
};

void save_grid(const GridFile& g, const std::string& path);
GridFile load_grid(const std::string& path);

// Converters for the common payloads.
GridFile gridfile_from_jsa(const JointAmplitude& F, const std::string& config_json,
                           const std::map<std::string, std::string>& meta = {});
JointAmplitude jsa_from_gridfile(const GridFile& g);

// Temporal grids are written with time axes in fs.
GridFile gridfile_from_temporal(const JointTemporal& T, const std::string& config_json);

}  // namespace biphoton
