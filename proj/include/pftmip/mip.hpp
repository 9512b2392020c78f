#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pftmip/linear_program.hpp"
#include "pftmip/simplex.hpp"

namespace pftmip {

enum class VarKind { Continuous, Integer, Binary };

inline bool is_discrete(VarKind k) noexcept { return k != VarKind::Continuous; }

// A LinearProgram with per-variable integrality and display names.
class MipProblem {
 public:
  MipProblem() = default;

  // Binary variables are clamped to [0, 1] intersected with any tighter
  // bound already present. Throws MalformedProblem on bad shape, duplicate
  // or empty names, or an empty binary domain.
  MipProblem(LinearProgram base, std::vector<VarKind> kinds, std::vector<std::string> names)
      : base_(std::move(base)), kinds_(std::move(kinds)), names_(std::move(names)) {
    const std::size_t n = base_.num_vars();
    if (kinds_.size() != n || names_.size() != n) {
      throw MalformedProblem("kinds/names must have one entry per variable");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
      if (name.empty()) throw MalformedProblem("variable names must be non-empty");
      if (!seen.insert(name).second) throw MalformedProblem("duplicate variable name '" + name + "'");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (kinds_[j] != VarKind::Binary) continue;
      Bound& b = base_.bounds.at(j);
      b.lower = std::max(b.lower, 0.0);
      b.upper = std::min(b.upper, 1.0);
    }
    base_.validate();
  }

  const LinearProgram& base() const noexcept { return base_; }
  const std::vector<VarKind>& kinds() const noexcept { return kinds_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t num_vars() const noexcept { return base_.num_vars(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  // Returns a copy with one more equality row.
  MipProblem with_eq_row(Row row) const {
    MipProblem copy = *this;
    copy.base_.eq_rows.push_back(std::move(row));
    copy.base_.validate();
    return copy;
  }

 private:
  LinearProgram base_;
  std::vector<VarKind> kinds_;
  std::vector<std::string> names_;
};

struct MipOutcome {
  Status status = Status::Numerical;
  std::vector<double> x;  // incumbent, empty when none was found
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  std::size_t nodes_explored = 0;
  std::size_t lp_iterations = 0;
  // Proven bound on the optimum in the problem's own direction: a lower
  // bound when minimizing, an upper bound when maximizing.
  double best_bound = std::numeric_limits<double>::quiet_NaN();
  // Objective of the root LP relaxation (NaN when the root was not solved to optimality).
  double root_relaxation = std::numeric_limits<double>::quiet_NaN();

  bool optimal() const noexcept { return status == Status::Optimal; }
};

struct BranchDecision {
  bool integral = true;
  std::size_t var = 0;
  double floor_upper = 0.0;  // down child: x[var] <= floor_upper
  double ceil_lower = 0.0;   // up child:   x[var] >= ceil_lower
};

// Picks the most fractional discrete variable (|frac - 0.5| smallest, ties
// to the lowest index), or reports the relaxation as integral.
inline BranchDecision branch(std::span<const double> x, std::span<const VarKind> kinds,
                             double integrality_tol = 1e-6) {
  BranchDecision d;
  double best = kInf;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!is_discrete(kinds[j])) continue;
    const double v = x[j];
    const double f = v - std::floor(v);
    if (f <= integrality_tol || f >= 1.0 - integrality_tol) continue;
    const double score = std::abs(f - 0.5);
    if (score < best - 1e-12) {
      best = score;
      d.integral = false;
      d.var = j;
      d.floor_upper = std::floor(v);
      d.ceil_lower = std::ceil(v);
    }
  }
  return d;
}

inline BranchDecision branch(const LpOutcome& node_relaxation, const MipProblem& mip,
                             double integrality_tol = 1e-6) {
  return branch(node_relaxation.x, mip.kinds(), integrality_tol);
}

namespace detail {

struct Node {
  std::vector<Bound> bounds;
  double bound;       // parent relaxation value, minimization sense
  std::size_t order;  // insertion sequence
};

struct NodeAfter {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.order > b.order;
  }
};

}  // namespace detail

// LP-based branch and bound with best-bound node selection (ties broken by
// insertion order). Every node is re-solved from scratch.
inline MipOutcome solve_mip(const MipProblem& mip, const SolveLimits& limits = {}) {
  const LinearProgram& base = mip.base();
  base.validate();
  const double sense = base.direction == Direction::Maximize ? -1.0 : 1.0;
  const double tol = limits.integrality_tol;

  MipOutcome out;
  double incumbent = kInf;  // minimization sense
  std::vector<double> incumbent_x;

  std::priority_queue<detail::Node, std::vector<detail::Node>, detail::NodeAfter> open;
  std::size_t order = 0;
  // Integer bounds can be rounded inward before solving.
  std::vector<Bound> root = base.bounds;
  for (std::size_t j = 0; j < root.size(); ++j) {
    if (!is_discrete(mip.kinds()[j])) continue;
    if (std::isfinite(root[j].lower)) root[j].lower = std::ceil(root[j].lower - tol);
    if (std::isfinite(root[j].upper)) root[j].upper = std::floor(root[j].upper + tol);
    if (root[j].lower > root[j].upper) {
      out.status = Status::Infeasible;
      return out;
    }
  }
  open.push({std::move(root), -kInf, order++});

  LinearProgram work = base;
  bool saw_unbounded = false;
  bool hit_limit = false;
  bool numerical = false;

  while (!open.empty()) {
    if (out.nodes_explored >= limits.max_nodes) {
      hit_limit = true;
      break;
    }
    detail::Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - 1e-9) continue;

    work.bounds = node.bounds;
    const LpOutcome relax = solve_lp(work, limits);
    ++out.nodes_explored;
    out.lp_iterations += relax.iterations;
    if (out.nodes_explored == 1 && relax.optimal()) out.root_relaxation = relax.objective_value;

    if (relax.status == Status::Infeasible) continue;
    if (relax.status == Status::Unbounded) {
      saw_unbounded = true;
      break;
    }
    if (relax.status == Status::IterationLimit) {
      hit_limit = true;
      continue;
    }
    if (relax.status != Status::Optimal) {
      numerical = true;
      continue;
    }

    const double value = sense * relax.objective_value;
    if (value >= incumbent - 1e-9) continue;

    const BranchDecision d = branch(relax, mip, tol);
    if (d.integral) {
      incumbent = value;
      incumbent_x = relax.x;
      // integral values are reported exactly
      for (std::size_t j = 0; j < incumbent_x.size(); ++j) {
        if (is_discrete(mip.kinds()[j])) incumbent_x[j] = std::round(incumbent_x[j]) + 0.0;
      }
      continue;
    }

    detail::Node down{node.bounds, value, order++};
    down.bounds[d.var].upper = d.floor_upper;
    detail::Node up{std::move(node.bounds), value, order++};
    up.bounds[d.var].lower = d.ceil_lower;
    open.push(std::move(down));
    open.push(std::move(up));
  }

  if (saw_unbounded) {
    out.status = Status::Unbounded;
    return out;
  }

  if (!incumbent_x.empty()) {
    out.x = std::move(incumbent_x);
    out.objective_value = dot(base.objective, out.x) + 0.0;
  }

  double bound = incumbent;
  if (hit_limit || numerical) {
    while (!open.empty()) {
      bound = std::min(bound, open.top().bound);
      open.pop();
    }
  }
  if (std::isfinite(bound)) out.best_bound = sense * bound;

  if (hit_limit) {
    out.status = Status::IterationLimit;
  } else if (out.x.empty()) {
    out.status = numerical ? Status::Numerical : Status::Infeasible;
  } else {
    out.status = numerical ? Status::Numerical : Status::Optimal;
    if (!numerical) out.best_bound = out.objective_value;
  }
  return out;
}

}  // namespace pftmip
