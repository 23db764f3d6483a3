#include "biphoton/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "biphoton/fitting.hpp"
#include "biphoton/jsa.hpp"

namespace biphoton {

namespace {

[[noreturn]] void fail(const std::string& origin, int line_no, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
}

double parse_num(const std::string& tok, const std::string& origin, int line_no) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    fail(origin, line_no, "malformed number '" + tok + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') { out.push_back(cur); cur.clear(); }
    else if (ch != '\r') cur += ch;
  }
  out.push_back(cur);
  return out;
}

void check_monotone(const Eigen::VectorXd& ax, const char* name) {
  for (Eigen::Index i = 0; i + 1 < ax.size(); ++i) {
    double d = ax(i + 1) - ax(i);
    if (d == 0.0 || (i > 0 && (d > 0) != (ax(1) - ax(0) > 0)))
      throw std::runtime_error(std::string(name) + " axis is not strictly monotone");
  }
}

// Flip axes to ascending so downstream interpolation can assume order.
void normalize_orientation(MeasuredJSI& d) {
  if (d.lambda_e_nm.size() > 1 && d.lambda_e_nm(1) < d.lambda_e_nm(0)) {
    d.lambda_e_nm.reverseInPlace();
    d.counts = d.counts.colwise().reverse().eval();
    if (d.integration_time) *d.integration_time = d.integration_time->colwise().reverse().eval();
  }
  if (d.lambda_o_nm.size() > 1 && d.lambda_o_nm(1) < d.lambda_o_nm(0)) {
    d.lambda_o_nm.reverseInPlace();
    d.counts = d.counts.rowwise().reverse().eval();
    if (d.integration_time) *d.integration_time = d.integration_time->rowwise().reverse().eval();
  }
}

MeasuredJSI parse_csv_grid(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] != '#') { header = split_csv(line); break; }
  }
  if (header.size() < 3)
    fail(origin, line_no, "csv_grid header row needs a corner cell and >= 2 lambda_o values");

  MeasuredJSI d;
  const size_t ncols = header.size() - 1;
  d.lambda_o_nm.resize(Eigen::Index(ncols));
  for (size_t j = 0; j < ncols; ++j)
    d.lambda_o_nm(Eigen::Index(j)) = parse_num(header[j + 1], origin, line_no);

  std::vector<double> le;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto toks = split_csv(line);
    if (toks.size() != ncols + 1)
      fail(origin, line_no, "ragged row: expected " + std::to_string(ncols + 1) +
                                " cells, got " + std::to_string(toks.size()));
    le.push_back(parse_num(toks[0], origin, line_no));
    std::vector<double> row(ncols);
    for (size_t j = 0; j < ncols; ++j) {
      row[j] = parse_num(toks[j + 1], origin, line_no);
      if (row[j] < 0.0) fail(origin, line_no, "negative counts");
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw std::runtime_error(origin + ": csv_grid needs >= 2 data rows");

  d.lambda_e_nm = Eigen::Map<Eigen::VectorXd>(le.data(), Eigen::Index(le.size()));
  d.counts.resize(Eigen::Index(rows.size()), Eigen::Index(ncols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < ncols; ++j)
      d.counts(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  return d;
}

MeasuredJSI parse_three_column(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  struct Triple { double le, lo, c; int line_no; };
  std::vector<Triple> triples;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto toks = split_csv(line);
    if (!have_header) {
      if (toks.size() != 3 || toks[0] != "lambda_e" || toks[1] != "lambda_o" ||
          toks[2] != "counts")
        fail(origin, line_no, "expected header 'lambda_e,lambda_o,counts'");
      have_header = true;
      continue;
    }
    if (toks.size() != 3) fail(origin, line_no, "expected 3 columns");
    Triple t{parse_num(toks[0], origin, line_no), parse_num(toks[1], origin, line_no),
             parse_num(toks[2], origin, line_no), line_no};
    if (t.c < 0.0) fail(origin, line_no, "negative counts");
    triples.push_back(t);
  }
  if (!have_header) throw std::runtime_error(origin + ": missing three_column header");
  if (triples.size() < 3) throw std::runtime_error(origin + ": too few samples to grid");

  std::vector<double> le, lo;
  for (const auto& t : triples) { le.push_back(t.le); lo.push_back(t.lo); }
  auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(le);
  uniq(lo);

  MeasuredJSI d;
  d.lambda_e_nm = Eigen::Map<Eigen::VectorXd>(le.data(), Eigen::Index(le.size()));
  d.lambda_o_nm = Eigen::Map<Eigen::VectorXd>(lo.data(), Eigen::Index(lo.size()));
  d.counts.setConstant(Eigen::Index(le.size()), Eigen::Index(lo.size()), -1.0);

  std::map<double, Eigen::Index> ie, io;
  for (size_t i = 0; i < le.size(); ++i) ie[le[i]] = Eigen::Index(i);
  for (size_t j = 0; j < lo.size(); ++j) io[lo[j]] = Eigen::Index(j);
  for (const auto& t : triples) {
    Eigen::Index i = ie[t.le], j = io[t.lo];
    if (d.counts(i, j) >= 0.0)
      fail(origin, t.line_no, "duplicate lattice cell (" + std::to_string(t.le) + ", " +
                                  std::to_string(t.lo) + ")");
    d.counts(i, j) = t.c;
  }
  for (Eigen::Index i = 0; i < d.counts.rows(); ++i)
    for (Eigen::Index j = 0; j < d.counts.cols(); ++j)
      if (d.counts(i, j) < 0.0) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "missing lattice cell (lambda_e=%g, lambda_o=%g)",
                      d.lambda_e_nm(i), d.lambda_o_nm(j));
        throw std::runtime_error(origin + ": " + buf);
      }
  return d;
}

}  // namespace

void MeasuredJSI::validate() const {
  if (counts.rows() != lambda_e_nm.size() || counts.cols() != lambda_o_nm.size())
    throw std::invalid_argument("counts matrix does not match the axes");
  if (!counts.allFinite() || counts.minCoeff() < 0.0)
    throw std::invalid_argument("counts must be finite and non-negative");
  check_monotone(lambda_e_nm, "lambda_e");
  check_monotone(lambda_o_nm, "lambda_o");
  if (integration_time &&
      (integration_time->rows() != counts.rows() || integration_time->cols() != counts.cols()))
    throw std::invalid_argument("integration-time matrix does not match the counts");
}

MeasuredJSI parse_measured(const std::string& text, MeasuredFormat format,
                           const std::string& origin) {
  MeasuredJSI d = format == MeasuredFormat::CsvGrid ? parse_csv_grid(text, origin)
                                                    : parse_three_column(text, origin);
  check_monotone(d.lambda_e_nm, "lambda_e");
  check_monotone(d.lambda_o_nm, "lambda_o");
  normalize_orientation(d);
  d.validate();
  return d;
}

MeasuredJSI load_measured(const std::string& path, MeasuredFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open measured-data file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_measured(ss.str(), format, path);
}

void save_measured(const MeasuredJSI& d, const std::string& path) {
  d.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  char buf[40];
  auto w = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
  };
  for (Eigen::Index j = 0; j < d.lambda_o_nm.size(); ++j) {
    out << ',';
    w(d.lambda_o_nm(j));
  }
  out << '\n';
  for (Eigen::Index i = 0; i < d.lambda_e_nm.size(); ++i) {
    w(d.lambda_e_nm(i));
    for (Eigen::Index j = 0; j < d.lambda_o_nm.size(); ++j) {
      out << ',';
      w(d.counts(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

MeasuredReport analyze_measured(const MeasuredJSI& d) {
  d.validate();
  if (!(d.counts.maxCoeff() > 0.0))
    throw std::invalid_argument("analyze_measured: all-zero counts");
  MeasuredReport r;
  r.schmidt = k_no_phase(d.counts);

  Eigen::VectorXd me = d.counts.rowwise().sum();
  Eigen::VectorXd mo = d.counts.colwise().sum().transpose();
  r.fwhm_e_nm = interpolated_fwhm(d.lambda_e_nm, me);
  r.fwhm_o_nm = interpolated_fwhm(d.lambda_o_nm, mo);

  r.ridge_nm = ridge_axis_units(d.lambda_e_nm, d.counts, RidgeMode::GaussianFit);
  return r;
}

}  // namespace biphoton
