#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pftmip/pftmip.hpp"

#ifndef PFTMIP_DATA_DIR
#error "PFTMIP_DATA_DIR must point at the fixture directory"
#endif

namespace support {

inline std::string data_path(const std::string& name) { return std::string(PFTMIP_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) { return slurp(data_path(name)); }

inline const std::vector<std::string>& pft_fixtures() {
  static const std::vector<std::string> names = {
      "shortest_path.pft.csv",     "shortest_path_raw.pft.csv", "set_cover_uniform.pft.csv",
      "set_cover_waterfront.pft.csv", "flow_capture_p2.pft.csv", "flow_capture_p3.pft.csv",
      "flow_capture_p4.pft.csv",   "transportation.pft.csv",    "max_flow.pft.csv",
      "facility_location.pft.csv"};
  return names;
}

// Constraint rows read straight off the table (sense letters untouched), so
// checks built on these share nothing with compile_pft.
inline std::vector<oracle::DenseRow> rows_of(const pftmip::Pft& pft) {
  std::vector<oracle::DenseRow> rows;
  for (const auto& c : pft.constraints) {
    char s = c.sense == pftmip::RowSense::Le ? '<' : c.sense == pftmip::RowSense::Ge ? '>' : '=';
    rows.push_back({c.coeffs, s, c.rhs});
  }
  return rows;
}

inline std::vector<double> objective_of(const pftmip::Pft& pft) {
  std::vector<double> c;
  for (const auto& v : pft.variables) c.push_back(v.objective);
  return c;
}

inline void bounds_of(const pftmip::Pft& pft, std::vector<double>& lo, std::vector<double>& hi) {
  lo.clear();
  hi.clear();
  for (const auto& v : pft.variables) {
    const bool bin = v.kind == pftmip::VarKind::Binary;
    lo.push_back(v.lower.value_or(0.0));
    hi.push_back(v.upper.value_or(bin ? 1.0 : oracle::inf));
  }
}

inline bool pft_feasible(const pftmip::Pft& pft, const std::vector<double>& x, double tol = 1e-7) {
  std::vector<double> lo, hi;
  bounds_of(pft, lo, hi);
  return oracle::satisfies(rows_of(pft), lo, hi, x, tol);
}

// Rows of a built model, for the same kind of re-check on builder output.
inline std::vector<oracle::DenseRow> rows_of(const pftmip::LinearProgram& lp) {
  std::vector<oracle::DenseRow> rows;
  for (const auto& r : lp.eq_rows) rows.push_back({r.coeffs, '=', r.rhs});
  for (const auto& r : lp.ub_rows) rows.push_back({r.coeffs, '<', r.rhs});
  return rows;
}

inline bool lp_feasible(const pftmip::LinearProgram& lp, const std::vector<double>& x, double tol = 1e-7) {
  std::vector<double> lo, hi;
  for (const auto& b : lp.bounds) {
    lo.push_back(b.lower);
    hi.push_back(b.upper);
  }
  return oracle::satisfies(rows_of(lp), lo, hi, x, tol);
}

inline bool integral(const pftmip::MipProblem& mip, const std::vector<double>& x, double tol = 1e-6) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (pftmip::is_discrete(mip.kinds()[j]) && std::abs(x[j] - std::round(x[j])) > tol) return false;
  }
  return true;
}

inline double value_of(const pftmip::MipProblem& mip, const pftmip::MipOutcome& out, const std::string& name) {
  return out.x.at(*mip.index_of(name));
}

inline std::vector<std::string> selected(const pftmip::MipProblem& mip, const pftmip::MipOutcome& out) {
  std::vector<std::string> s;
  for (std::size_t j = 0; j < out.x.size(); ++j) {
    if (std::abs(out.x[j]) > 1e-9) s.push_back(mip.names()[j]);
  }
  return s;
}

inline pftmip::DistanceMatrix matrix(const std::vector<std::vector<double>>& d, const std::string& row_prefix = "",
                                     const std::string& col_prefix = "") {
  pftmip::DistanceMatrix m;
  for (std::size_t i = 0; i < d.size(); ++i) m.from_ids.push_back(row_prefix + std::to_string(i + 1));
  for (std::size_t j = 0; j < d.front().size(); ++j) m.to_ids.push_back(col_prefix + std::to_string(j + 1));
  m.d = d;
  return m;
}

inline std::vector<std::pair<int, int>> index_pairs(const pftmip::AdjacencySet& adj) {
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : adj.index_pairs()) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return out;
}

inline std::vector<oracle::Edge> edges_of(const pftmip::Network& net, bool use_capacity) {
  std::vector<oracle::Edge> e;
  for (const auto& a : net.arcs()) {
    e.push_back({static_cast<int>(*net.node_index(a.tail)), static_cast<int>(*net.node_index(a.head)),
                 use_capacity ? a.capacity : a.weight});
  }
  return e;
}

}  // namespace support
