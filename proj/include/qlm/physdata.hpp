#pragma once

// Physical surface data (sigma, |H|, alpha_H) and its text-table format:
//
//   # n=32
//   # provenance=schwarzschild   (optional)
//   theta P Q normH alpha_theta
//   <one row per grid node, 17 significant digits>
//
// Columns may be separated by whitespace or commas. Node positions are not
// resampled: theta must match the declared grid.

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "qlm/embedding.hpp"

namespace qlm {

enum class Provenance { schwarzschild, minkowski, file };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::schwarzschild:
      return "schwarzschild";
    case Provenance::minkowski:
      return "minkowski";
    case Provenance::file:
      return "file";
  }
  return "unknown";
}

struct PhysicalData {
  AxisymMetric metric;
  Field norm_H;
  OneForm alpha_H;
  Provenance provenance;

  const Grid& grid() const { return metric.grid(); }

  void validate() const {
    metric.check(norm_H);
    metric.check(alpha_H.theta);
    for (int j = 0; j < metric.size(); ++j) {
      if (!(norm_H(j) > 0.0)) {
        throw InvalidParameter("|H| must be positive (node " + std::to_string(j) + ")");
      }
    }
  }
};

/// Time-symmetric Schwarzschild slice, coordinate sphere of areal radius r:
/// round metric, |H| = (2/r) sqrt(1 - 2m/r), alpha_H = 0.
inline PhysicalData schwarzschild_sphere(const GridPtr& grid, double mass, double radius) {
  if (!(mass >= 0.0)) throw InvalidParameter("mass must be non-negative");
  if (!(radius > 2.0 * mass)) {
    throw HorizonError("sphere radius must exceed the horizon radius 2m (r=" + std::to_string(radius) +
                       ", m=" + std::to_string(mass) + ")");
  }
  const int n = grid->size();
  PhysicalData d{round_sphere(grid, radius), Field::Constant(n, 2.0 / radius * std::sqrt(1.0 - 2.0 * mass / radius)),
                 OneForm{Field::Zero(n)}, Provenance::schwarzschild};
  d.validate();
  return d;
}

/// Data (|H_tau0|, alpha_{H_tau0}) of Sigma_tau0 regarded as a surface in Minkowski space.
inline PhysicalData minkowski_surface_data(const AxisymMetric& m, const Field& tau0) {
  const ExtrinsicData e = extrinsic_data(embed_lifted(m, tau0));
  return PhysicalData{m, e.require_norm_H(), e.require_alpha_H(), Provenance::minkowski};
}

// --- persistence -----------------------------------------------------------

inline void store_physical_data(const PhysicalData& d, std::ostream& out) {
  const Grid& g = d.grid();
  out << "# n=" << g.size() << '\n';
  out << "# provenance=" << to_string(d.provenance) << '\n';
  out << "theta P Q normH alpha_theta\n";
  out << std::setprecision(17);
  for (int j = 0; j < g.size(); ++j) {
    out << g.theta()(j) << ' ' << d.metric.P()(j) << ' ' << d.metric.Q()(j) << ' ' << d.norm_H(j) << ' '
        << d.alpha_H.theta(j) << '\n';
  }
}

inline void store_physical_data(const PhysicalData& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  store_physical_data(d, out);
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

namespace detail {

inline std::vector<std::string> split_columns(const std::string& line) {
  std::string s = line;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(s);
  std::vector<std::string> cols;
  for (std::string tok; is >> tok;) cols.push_back(tok);
  return cols;
}

inline double parse_number(const std::string& tok, int row, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("row " + std::to_string(row) + ", column " + column + ": '" + tok + "' is not a number",
                          row, column);
  }
}

}  // namespace detail

/// Reads a table written by store_physical_data (or by hand). The grid is
/// regenerated from the `# n=<N>` line; `grid` may be passed to share an
/// existing grid of that size.
inline PhysicalData load_physical_data(std::istream& in, GridPtr grid = nullptr) {
  static const std::vector<std::string> kColumns{"theta", "P", "Q", "normH", "alpha_theta"};
  int declared_n = -1;
  bool have_header = false;
  std::vector<std::array<double, 5>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const auto pos = line.find("n=");
      if (pos != std::string::npos && declared_n < 0) {
        try {
          declared_n = std::stoi(line.substr(pos + 2));
        } catch (const std::exception&) {
          throw ValidationError("malformed grid declaration: '" + line + "'");
        }
      }
      continue;
    }
    const auto cols = detail::split_columns(line);
    if (!have_header) {
      if (cols != kColumns) {
        throw ValidationError("header must name columns theta, P, Q, normH, alpha_theta; got '" + line + "'");
      }
      have_header = true;
      continue;
    }
    const int row = static_cast<int>(rows.size()) + 1;
    if (cols.size() != kColumns.size()) {
      throw ValidationError("row " + std::to_string(row) + " has " + std::to_string(cols.size()) +
                                " columns, expected 5",
                            row);
    }
    std::array<double, 5> r{};
    for (std::size_t c = 0; c < 5; ++c) r[c] = detail::parse_number(cols[c], row, kColumns[c]);
    rows.push_back(r);
  }
  if (declared_n < 0) throw ValidationError("missing grid declaration '# n=<N>'");
  if (!have_header) throw ValidationError("missing header line");
  if (!grid) grid = make_grid(declared_n);
  if (grid->size() != declared_n) throw NodeMismatch("declared n does not match the supplied grid");
  if (static_cast<int>(rows.size()) != declared_n) {
    throw NodeMismatch("table has " + std::to_string(rows.size()) + " rows but the grid declares n=" +
                       std::to_string(declared_n));
  }
  Field p(declared_n), q(declared_n), h(declared_n), a(declared_n);
  for (int j = 0; j < declared_n; ++j) {
    const auto& r = rows[j];
    const int row = j + 1;
    if (std::abs(r[0] - grid->theta()(j)) > 1e-12) {
      throw NodeMismatch("row " + std::to_string(row) + ": theta does not match grid node " + std::to_string(j), row,
                         "theta");
    }
    if (!(r[1] > 0.0)) throw ValidationError("row " + std::to_string(row) + ": P must be positive", row, "P");
    if (!(r[2] > 0.0)) throw ValidationError("row " + std::to_string(row) + ": Q must be positive", row, "Q");
    if (!(r[3] > 0.0)) throw ValidationError("row " + std::to_string(row) + ": normH must be positive", row, "normH");
    p(j) = r[1];
    q(j) = r[2];
    h(j) = r[3];
    a(j) = r[4];
  }
  return PhysicalData{AxisymMetric(grid, p, q), h, OneForm{a}, Provenance::file};
}

inline PhysicalData load_physical_data(const std::string& path, GridPtr grid = nullptr) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return load_physical_data(in, std::move(grid));
}

}  // namespace qlm
