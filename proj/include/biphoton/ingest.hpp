#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "biphoton/schmidt.hpp"

namespace biphoton {

// Measured joint spectral intensity from a two-monochromator scan.
struct MeasuredJSI {
  Eigen::VectorXd lambda_e_nm;     // strictly increasing after load
  Eigen::VectorXd lambda_o_nm;
  Eigen::MatrixXd counts;          // counts(i, j) at (lambda_e[i], lambda_o[j])
  std::optional<Eigen::MatrixXd> integration_time;

  void validate() const;
};

enum class MeasuredFormat {
  CsvGrid,      // first row = lambda_o axis, first column = lambda_e axis, body = counts
  ThreeColumn,  // header lambda_e,lambda_o,counts; rows re-gridded onto the lattice
};

// Errors carry the offending line number and cell where applicable.
MeasuredJSI load_measured(const std::string& path, MeasuredFormat format);
MeasuredJSI parse_measured(const std::string& text, MeasuredFormat format,
                           const std::string& origin = "<input>");
void save_measured(const MeasuredJSI& d, const std::string& path);  // csv_grid layout

struct MeasuredReport {
  SchmidtResult schmidt;                           // no-phase analysis
  // Marginal FWHMs; absent when a marginal has no half-maximum crossing
  // inside the scan (flat or boundary-peaked data).
  std::optional<double> fwhm_e_nm, fwhm_o_nm;
  std::vector<std::optional<double>> ridge_nm;      // gaussian-fit centre per o slice
};

MeasuredReport analyze_measured(const MeasuredJSI& d);

}  // namespace biphoton
