#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pftmip/error.hpp"

namespace pftmip {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Direction { Minimize, Maximize };

enum class RowSense { Le, Eq, Ge };

// Solver status codes. The numeric values are part of the public contract
// (0 optimal, 1 iteration limit, 2 infeasible, 3 unbounded, 4 numerical).
enum class Status : int {
  Optimal = 0,
  IterationLimit = 1,
  Infeasible = 2,
  Unbounded = 3,
  Numerical = 4,
};

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::IterationLimit: return "IterationLimit";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
    case Status::Numerical: return "Numerical";
  }
  return "Unknown";
}

inline std::string_view to_string(RowSense s) {
  switch (s) {
    case RowSense::Le: return "le";
    case RowSense::Eq: return "eq";
    case RowSense::Ge: return "ge";
  }
  return "?";
}

// Accepts the PFT tokens (le, eq, ge) and the usual operator spellings.
inline RowSense parse_sense(std::string_view token) {
  if (token == "le" || token == "<=" || token == "≤") return RowSense::Le;
  if (token == "eq" || token == "=" || token == "==") return RowSense::Eq;
  if (token == "ge" || token == ">=" || token == "≥") return RowSense::Ge;
  throw MalformedProblem("unknown constraint sense '" + std::string(token) + "'");
}

struct Bound {
  double lower = 0.0;
  double upper = kInf;
};

// One linear row: coeffs . x (relation) rhs. The relation is implied by
// which list of LinearProgram holds it.
struct Row {
  std::vector<double> coeffs;
  double rhs = 0.0;
  std::string name;
};

// A row before normalization, as written by a modeler.
struct SenseRow {
  std::vector<double> coeffs;
  RowSense sense = RowSense::Le;
  double rhs = 0.0;
  std::string name;
};

struct StandardRows {
  std::vector<Row> eq_rows;
  std::vector<Row> ub_rows;
};

// Splits rows into equality and <= lists. A >= row is multiplied by -1.
// Relative order within each output list follows the input order.
inline StandardRows to_standard_form(std::span<const SenseRow> rows) {
  StandardRows out;
  const std::size_t width = rows.empty() ? 0 : rows.front().coeffs.size();
  for (const auto& r : rows) {
    if (r.coeffs.size() != width) {
      throw MalformedProblem("row '" + r.name + "' has " + std::to_string(r.coeffs.size()) +
                             " coefficients, expected " + std::to_string(width));
    }
    switch (r.sense) {
      case RowSense::Eq:
        out.eq_rows.push_back({r.coeffs, r.rhs, r.name});
        break;
      case RowSense::Le:
        out.ub_rows.push_back({r.coeffs, r.rhs, r.name});
        break;
      case RowSense::Ge: {
        Row flipped{r.coeffs, -r.rhs, r.name};
        // + 0.0 keeps negative zeros out of the printed forms
        for (auto& a : flipped.coeffs) a = -a + 0.0;
        flipped.rhs += 0.0;
        out.ub_rows.push_back(std::move(flipped));
        break;
      }
    }
  }
  return out;
}

// Continuous LP: optimize objective . x subject to
//   eq_rows:  a . x == b
//   ub_rows:  a . x <= b
//   bounds:   lower <= x <= upper
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Row> eq_rows;
  std::vector<Row> ub_rows;
  std::vector<Bound> bounds;
  Direction direction = Direction::Minimize;

  std::size_t num_vars() const noexcept { return objective.size(); }

  // Throws MalformedProblem on any invariant violation.
  void validate() const {
    const std::size_t n = objective.size();
    if (bounds.size() != n) {
      throw MalformedProblem("bounds size " + std::to_string(bounds.size()) +
                             " does not match variable count " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(objective[j])) {
        throw MalformedProblem("objective coefficient " + std::to_string(j) + " is not finite");
      }
      const Bound& b = bounds[j];
      if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower == kInf || b.upper == -kInf) {
        throw MalformedProblem("variable " + std::to_string(j) + " has an invalid bound");
      }
      if (b.lower > b.upper) {
        throw MalformedProblem("variable " + std::to_string(j) + " has lower bound above upper bound");
      }
    }
    auto check_rows = [n](const std::vector<Row>& rows, const char* kind) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (r.coeffs.size() != n) {
          throw MalformedProblem(std::string(kind) + " row " + std::to_string(i) + " has " +
                                 std::to_string(r.coeffs.size()) + " coefficients, expected " +
                                 std::to_string(n));
        }
        if (!std::isfinite(r.rhs)) {
          throw MalformedProblem(std::string(kind) + " row " + std::to_string(i) + " has a non-finite rhs");
        }
        for (double a : r.coeffs) {
          if (!std::isfinite(a)) {
            throw MalformedProblem(std::string(kind) + " row " + std::to_string(i) +
                                   " has a non-finite coefficient");
          }
        }
      }
    };
    check_rows(eq_rows, "equality");
    check_rows(ub_rows, "inequality");
  }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct SolveLimits {
  std::size_t max_iterations = 100000;  // simplex pivots per LP solve
  std::size_t max_nodes = 1000000;      // branch-and-bound nodes
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  double integrality_tol = 1e-6;
};

struct LpOutcome {
  Status status = Status::Numerical;
  std::vector<double> x;  // empty unless Optimal
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  std::size_t iterations = 0;
  std::vector<double> eq_residuals;  // a . x - b per equality row
  std::vector<double> ub_slacks;     // b - a . x per inequality row

  bool optimal() const noexcept { return status == Status::Optimal; }
};

}  // namespace pftmip
