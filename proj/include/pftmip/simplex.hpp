#pragma once

// Bounded-variable primal simplex on a dense tableau.
//
// Every original variable is rewritten over a column with lower bound 0:
//   finite lower bound      x = l + y,      y in [0, u - l]
//   only an upper bound     x = u - y,      y in [0, inf)
//   free                    x = y+ - y-,    both in [0, inf)
// Inequality rows receive a slack column. Rows are sign-normalized to a
// nonnegative right-hand side; rows without a usable +1 slack get an
// artificial column. Phase one drives the artificial sum to zero, phase two
// optimizes the real objective with artificials pinned at zero.
//
// Entering column: Dantzig (largest reduced cost magnitude). After
// 3 * (rows + columns) iterations without strict objective improvement the
// rule switches to Bland (lowest eligible index) for the rest of the solve.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "pftmip/linear_program.hpp"

namespace pftmip {

namespace detail {

class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SolveLimits& limits) : lp_(lp), limits_(limits) {
    build();
  }

  LpOutcome run() {
    LpOutcome out;
    out.status = solve_phase(phase_one_costs(), /*allow_artificial=*/true);
    if (out.status != Status::Optimal) {
      // Phase one is bounded below by zero; anything else is a limit or breakdown.
      out.iterations = iterations_;
      return out;
    }
    if (phase_one_objective() > limits_.feasibility_tol * std::max<double>(1.0, rows_)) {
      out.status = Status::Infeasible;
      out.iterations = iterations_;
      return out;
    }
    expel_artificials();
    bland_ = false;
    out.status = solve_phase(phase_two_costs(), /*allow_artificial=*/false);
    out.iterations = iterations_;
    if (out.status != Status::Optimal) return out;

    out.x = recover_solution();
    finish(out);
    return out;
  }

 private:
  enum class At : unsigned char { Basic, Lower, Upper };

  enum class MapKind : unsigned char { Shift, Mirror, Split };

  struct VarMap {
    MapKind kind;
    std::size_t col;
    std::size_t col2;  // Split only
  };

  static constexpr double kPivotTol = 1e-9;

  void build() {
    const std::size_t n = lp_.num_vars();
    const double sign = lp_.direction == Direction::Maximize ? -1.0 : 1.0;

    // structural columns
    maps_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Bound& b = lp_.bounds[j];
      if (std::isfinite(b.lower)) {
        maps_.push_back({MapKind::Shift, cols_, 0});
        upper_.push_back(b.upper - b.lower);
        cost_.push_back(sign * lp_.objective[j]);
        ++cols_;
      } else if (std::isfinite(b.upper)) {
        maps_.push_back({MapKind::Mirror, cols_, 0});
        upper_.push_back(kInf);
        cost_.push_back(-sign * lp_.objective[j]);
        ++cols_;
      } else {
        maps_.push_back({MapKind::Split, cols_, cols_ + 1});
        upper_.push_back(kInf);
        upper_.push_back(kInf);
        cost_.push_back(sign * lp_.objective[j]);
        cost_.push_back(-sign * lp_.objective[j]);
        cols_ += 2;
      }
    }
    structural_ = cols_;

    const std::size_t n_eq = lp_.eq_rows.size();
    const std::size_t n_ub = lp_.ub_rows.size();
    rows_ = n_eq + n_ub;

    // Rewrite every row over the structural columns; the constant part of the
    // variable substitution moves to the right-hand side.
    std::vector<std::vector<double>> coeffs(rows_, std::vector<double>(structural_, 0.0));
    std::vector<double> rhs(rows_, 0.0);
    auto transcribe = [&](const Row& row, std::size_t r) {
      double b = row.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = row.coeffs[j];
        if (a == 0.0) continue;
        const VarMap& m = maps_[j];
        switch (m.kind) {
          case MapKind::Shift:
            coeffs[r][m.col] += a;
            b -= a * lp_.bounds[j].lower;
            break;
          case MapKind::Mirror:
            coeffs[r][m.col] -= a;
            b -= a * lp_.bounds[j].upper;
            break;
          case MapKind::Split:
            coeffs[r][m.col] += a;
            coeffs[r][m.col2] -= a;
            break;
        }
      }
      rhs[r] = b;
    };
    for (std::size_t i = 0; i < n_eq; ++i) transcribe(lp_.eq_rows[i], i);
    for (std::size_t i = 0; i < n_ub; ++i) transcribe(lp_.ub_rows[i], n_eq + i);

    // slack columns for inequality rows
    const std::size_t slack_begin = cols_;
    cols_ += n_ub;
    for (std::size_t i = 0; i < n_ub; ++i) {
      upper_.push_back(kInf);
      cost_.push_back(0.0);
    }

    std::vector<double> slack_sign(rows_, 0.0);
    for (std::size_t i = 0; i < n_ub; ++i) slack_sign[n_eq + i] = 1.0;
    std::vector<double> flip(rows_, 1.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (rhs[r] < 0.0) flip[r] = -1.0;
    }

    // artificial columns where the slack cannot start basic
    artificial_begin_ = cols_;
    std::vector<std::size_t> art_row;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (slack_sign[r] * flip[r] <= 0.0) art_row.push_back(r);
    }
    cols_ += art_row.size();
    for (std::size_t k = 0; k < art_row.size(); ++k) {
      upper_.push_back(kInf);
      cost_.push_back(0.0);
    }

    tab_.assign(rows_ * cols_, 0.0);
    beta_.assign(rows_, 0.0);
    basis_.assign(rows_, 0);
    at_.assign(cols_, At::Lower);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < structural_; ++c) cell(r, c) = flip[r] * coeffs[r][c];
      if (r >= n_eq) cell(r, slack_begin + (r - n_eq)) = flip[r];
      beta_[r] = flip[r] * rhs[r];
    }
    for (std::size_t r = n_eq; r < rows_; ++r) {
      if (flip[r] > 0.0) {
        basis_[r] = slack_begin + (r - n_eq);
        at_[basis_[r]] = At::Basic;
      }
    }
    for (std::size_t k = 0; k < art_row.size(); ++k) {
      const std::size_t c = artificial_begin_ + k;
      cell(art_row[k], c) = 1.0;
      basis_[art_row[k]] = c;
      at_[c] = At::Basic;
    }
  }

  double& cell(std::size_t r, std::size_t c) { return tab_[r * cols_ + c]; }
  double cell(std::size_t r, std::size_t c) const { return tab_[r * cols_ + c]; }

  bool is_artificial(std::size_t c) const { return c >= artificial_begin_; }

  double nonbasic_value(std::size_t c) const { return at_[c] == At::Upper ? upper_[c] : 0.0; }

  std::vector<double> phase_one_costs() const {
    std::vector<double> c(cols_, 0.0);
    for (std::size_t k = artificial_begin_; k < cols_; ++k) c[k] = 1.0;
    return c;
  }

  std::vector<double> phase_two_costs() const { return cost_; }

  // Basic values: beta minus the contribution of nonbasic columns at upper.
  void refresh_basic_values() {
    xb_ = beta_;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at_[c] != At::Upper) continue;
      const double u = upper_[c];
      for (std::size_t r = 0; r < rows_; ++r) xb_[r] -= cell(r, c) * u;
    }
  }

  double objective(const std::vector<double>& c) const {
    double z = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) z += c[basis_[r]] * xb_[r];
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at_[k] == At::Upper) z += c[k] * upper_[k];
    }
    return z;
  }

  double phase_one_objective() {
    refresh_basic_values();
    return objective(phase_one_costs());
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = cell(pr, pc);
    for (std::size_t c = 0; c < cols_; ++c) cell(pr, c) /= p;
    beta_[pr] /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = cell(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols_; ++c) cell(r, c) -= f * cell(pr, c);
      beta_[r] -= f * beta_[pr];
      cell(r, pc) = 0.0;
    }
    at_[basis_[pr]] = At::Lower;
    basis_[pr] = pc;
    at_[pc] = At::Basic;
  }

  Status solve_phase(const std::vector<double>& c, bool allow_artificial) {
    const std::size_t stall_limit = 3 * (rows_ + cols_);
    std::size_t stalled = 0;
    refresh_basic_values();
    double best = objective(c);
    std::vector<double> d(cols_);

    for (;;) {
      if (iterations_ >= limits_.max_iterations) return Status::IterationLimit;

      // reduced costs
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at_[k] == At::Basic) {
          d[k] = 0.0;
          continue;
        }
        double z = c[k];
        for (std::size_t r = 0; r < rows_; ++r) z -= c[basis_[r]] * cell(r, k);
        d[k] = z;
      }

      std::size_t enter = cols_;
      double enter_score = 0.0;
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at_[k] == At::Basic) continue;
        if (!allow_artificial && is_artificial(k)) continue;
        if (upper_[k] <= 0.0) continue;  // fixed column can never move
        const bool improves = (at_[k] == At::Lower && d[k] < -limits_.optimality_tol) ||
                              (at_[k] == At::Upper && d[k] > limits_.optimality_tol);
        if (!improves) continue;
        if (bland_) {
          enter = k;
          break;
        }
        if (std::abs(d[k]) > enter_score) {
          enter_score = std::abs(d[k]);
          enter = k;
        }
      }
      if (enter == cols_) return Status::Optimal;

      const double dir = at_[enter] == At::Lower ? 1.0 : -1.0;

      // ratio test; a basic variable moves by -alpha * step
      double step = upper_[enter];
      std::size_t leave_row = rows_;
      bool leave_to_upper = false;
      double leave_alpha = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double alpha = cell(r, enter) * dir;
        if (std::abs(alpha) <= kPivotTol) continue;
        const std::size_t b = basis_[r];
        double ratio;
        bool to_upper;
        if (alpha > 0.0) {
          ratio = std::max(0.0, xb_[r]) / alpha;
          to_upper = false;
        } else {
          if (!std::isfinite(upper_[b])) continue;
          ratio = std::max(0.0, upper_[b] - xb_[r]) / -alpha;
          to_upper = true;
        }
        // A bound flip of the entering column wins exact ties.
        bool take = ratio < step - 1e-12;
        if (!take && leave_row != rows_ && ratio <= step + 1e-12) {
          take = bland_ ? b < basis_[leave_row] : std::abs(alpha) > std::abs(leave_alpha);
        }
        if (take) {
          step = ratio;
          leave_row = r;
          leave_to_upper = to_upper;
          leave_alpha = alpha;
        }
      }

      if (!std::isfinite(step)) return Status::Unbounded;
      ++iterations_;

      if (leave_row == rows_) {
        at_[enter] = at_[enter] == At::Lower ? At::Upper : At::Lower;
      } else {
        const std::size_t leaving = basis_[leave_row];
        pivot(leave_row, enter);
        at_[leaving] = leave_to_upper ? At::Upper : At::Lower;
      }
      refresh_basic_values();

      const double z = objective(c);
      if (z < best - 1e-12) {
        best = z;
        stalled = 0;
      } else if (++stalled > stall_limit) {
        bland_ = true;
      }
    }
  }

  // After phase one, pivot basic artificials out where a structural or slack
  // column has a usable entry; the rest sit on redundant rows. All artificial
  // columns are then fixed at zero.
  void expel_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::size_t best = cols_;
      double best_abs = kPivotTol;
      for (std::size_t c = 0; c < artificial_begin_; ++c) {
        if (at_[c] == At::Basic) continue;
        if (std::abs(cell(r, c)) > best_abs) {
          best_abs = std::abs(cell(r, c));
          best = c;
        }
      }
      if (best == cols_) continue;
      // Degenerate: the artificial is at zero, so the point does not move.
      pivot(r, best);
    }
    for (std::size_t c = artificial_begin_; c < cols_; ++c) upper_[c] = 0.0;
    refresh_basic_values();
  }

  std::vector<double> recover_solution() {
    refresh_basic_values();
    std::vector<double> y(cols_, 0.0);
    for (std::size_t c = 0; c < cols_; ++c) y[c] = nonbasic_value(c);
    for (std::size_t r = 0; r < rows_; ++r) y[basis_[r]] = xb_[r];

    const std::size_t n = lp_.num_vars();
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const VarMap& m = maps_[j];
      switch (m.kind) {
        case MapKind::Shift: x[j] = lp_.bounds[j].lower + y[m.col]; break;
        case MapKind::Mirror: x[j] = lp_.bounds[j].upper - y[m.col]; break;
        case MapKind::Split: x[j] = y[m.col] - y[m.col2]; break;
      }
      // snap to a bound when within roundoff of it
      const Bound& b = lp_.bounds[j];
      if (std::isfinite(b.lower) && std::abs(x[j] - b.lower) < 1e-11) x[j] = b.lower;
      if (std::isfinite(b.upper) && std::abs(x[j] - b.upper) < 1e-11) x[j] = b.upper;
    }
    return x;
  }

  void finish(LpOutcome& out) const {
    out.objective_value = dot(lp_.objective, out.x) + 0.0;
    out.eq_residuals.reserve(lp_.eq_rows.size());
    out.ub_slacks.reserve(lp_.ub_rows.size());
    double worst = 0.0;
    for (const Row& r : lp_.eq_rows) {
      const double g = dot(r.coeffs, out.x) - r.rhs;
      out.eq_residuals.push_back(g);
      worst = std::max(worst, std::abs(g));
    }
    for (const Row& r : lp_.ub_rows) {
      const double s = r.rhs - dot(r.coeffs, out.x);
      out.ub_slacks.push_back(s);
      worst = std::max(worst, -s);
    }
    for (std::size_t j = 0; j < out.x.size(); ++j) {
      worst = std::max(worst, lp_.bounds[j].lower - out.x[j]);
      worst = std::max(worst, out.x[j] - lp_.bounds[j].upper);
    }
    if (worst > limits_.feasibility_tol) {
      out.status = Status::Numerical;
      out.x.clear();
      out.objective_value = std::numeric_limits<double>::quiet_NaN();
    }
  }

  const LinearProgram& lp_;
  SolveLimits limits_;

  std::vector<VarMap> maps_;
  std::size_t structural_ = 0;
  std::size_t artificial_begin_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;

  std::vector<double> tab_;   // rows_ x cols_, B^-1 A
  std::vector<double> beta_;  // B^-1 b
  std::vector<double> xb_;    // current basic values
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
  std::vector<At> at_;

  std::size_t iterations_ = 0;
  bool bland_ = false;
};

}  // namespace detail

// Solves a continuous LP. Throws MalformedProblem on invariant violations;
// infeasibility and unboundedness are reported through the status.
inline LpOutcome solve_lp(const LinearProgram& lp, const SolveLimits& limits = {}) {
  lp.validate();
  if (limits.max_iterations == 0 || !(limits.feasibility_tol > 0.0) || !(limits.optimality_tol > 0.0)) {
    throw MalformedProblem("solve limits must be positive");
  }
  return detail::BoundedSimplex(lp, limits).run();
}

}  // namespace pftmip
