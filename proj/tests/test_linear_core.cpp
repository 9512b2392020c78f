#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace pftmip;

namespace {

LinearProgram one_var(double lo, double hi) {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.bounds = {{lo, hi}};
  return lp;
}

void expect_feasible(const LinearProgram& lp, const LpOutcome& out) {
  ASSERT_TRUE(out.optimal());
  EXPECT_TRUE(support::lp_feasible(lp, out.x));
  for (double r : out.eq_residuals) EXPECT_LE(std::abs(r), 1e-7);
  for (double s : out.ub_slacks) EXPECT_GE(s, -1e-7);
}

}  // namespace

TEST(SolveLp, LowerBoundOptimum) {
  const LinearProgram lp = one_var(0.0, kInf);
  const LpOutcome out = solve_lp(lp);
  expect_feasible(lp, out);
  EXPECT_EQ(out.x[0], 0.0);
  EXPECT_EQ(out.objective_value, 0.0);
}

TEST(SolveLp, EmptyFeasibleSetIsInfeasible) {
  LinearProgram lp = one_var(0.0, kInf);
  lp.ub_rows.push_back({{1.0}, -1.0});
  const LpOutcome out = solve_lp(lp);
  EXPECT_EQ(out.status, Status::Infeasible);
  EXPECT_EQ(static_cast<int>(out.status), 2);
  EXPECT_TRUE(out.x.empty());
  EXPECT_TRUE(std::isnan(out.objective_value));
}

TEST(SolveLp, UnboundedRay) {
  LinearProgram lp;
  lp.objective = {-1.0, 0.0};
  lp.bounds = {{0.0, kInf}, {0.0, kInf}};
  lp.ub_rows.push_back({{-1.0, 1.0}, 2.0});
  const LpOutcome out = solve_lp(lp);
  EXPECT_EQ(out.status, Status::Unbounded);
  EXPECT_EQ(static_cast<int>(out.status), 3);
}

TEST(SolveLp, StatusNumbering) {
  EXPECT_EQ(static_cast<int>(Status::Optimal), 0);
  EXPECT_EQ(static_cast<int>(Status::IterationLimit), 1);
  EXPECT_EQ(static_cast<int>(Status::Infeasible), 2);
  EXPECT_EQ(static_cast<int>(Status::Unbounded), 3);
  EXPECT_EQ(static_cast<int>(Status::Numerical), 4);
}

TEST(SolveLp, MaximizeReportsOriginalObjective) {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
  LinearProgram lp;
  lp.direction = Direction::Maximize;
  lp.objective = {3.0, 2.0};
  lp.bounds = {{0.0, 3.0}, {0.0, kInf}};
  lp.ub_rows = {{{1.0, 1.0}, 4.0}, {{1.0, 3.0}, 6.0}};
  const LpOutcome out = solve_lp(lp);
  expect_feasible(lp, out);
  EXPECT_NEAR(out.objective_value, 11.0, 1e-9);
  EXPECT_NEAR(out.x[0], 3.0, 1e-9);
  EXPECT_NEAR(out.x[1], 1.0, 1e-9);
}

TEST(SolveLp, EqualityAndNegativeLowerBounds) {
  // min x - y, x + y = 1, x in [-2, 5], y in [-3, 0.5]
  LinearProgram lp;
  lp.objective = {1.0, -1.0};
  lp.bounds = {{-2.0, 5.0}, {-3.0, 0.5}};
  lp.eq_rows = {{{1.0, 1.0}, 1.0}};
  const LpOutcome out = solve_lp(lp);
  expect_feasible(lp, out);
  EXPECT_NEAR(out.objective_value, 0.0, 1e-9);
  EXPECT_NEAR(out.x[0], 0.5, 1e-9);
}

TEST(SolveLp, FreeAndUpperOnlyVariables) {
  // min -x - y with x free, y <= 2 (no lower), x + y <= 3, x - y <= 1
  LinearProgram lp;
  lp.objective = {-1.0, -2.0};
  lp.bounds = {{-kInf, kInf}, {-kInf, 2.0}};
  lp.ub_rows = {{{1.0, 1.0}, 3.0}, {{1.0, -1.0}, 1.0}};
  const LpOutcome out = solve_lp(lp);
  expect_feasible(lp, out);
  EXPECT_NEAR(out.x[0], 1.0, 1e-9);
  EXPECT_NEAR(out.x[1], 2.0, 1e-9);
  EXPECT_NEAR(out.objective_value, -5.0, 1e-9);
}

TEST(SolveLp, TransportationRelaxationIsIntegral) {
  const Pft pft = parse_pft(support::fixture("transportation.pft.csv"));
  const LinearProgram lp = compile_pft(pft).base();
  const LpOutcome out = solve_lp(lp);
  expect_feasible(lp, out);
  EXPECT_EQ(out.objective_value, 8600.0);
  for (double v : out.x) EXPECT_NEAR(v, std::round(v), 1e-9);
}

TEST(SolveLp, MalformedInputsThrow) {
  LinearProgram lp = one_var(0.0, 1.0);
  lp.ub_rows.push_back({{1.0, 2.0}, 1.0});
  EXPECT_THROW(solve_lp(lp), MalformedProblem);

  LinearProgram nan_cost = one_var(0.0, 1.0);
  nan_cost.objective[0] = std::nan("");
  EXPECT_THROW(solve_lp(nan_cost), MalformedProblem);

  LinearProgram inf_rhs = one_var(0.0, 1.0);
  inf_rhs.eq_rows.push_back({{1.0}, kInf});
  EXPECT_THROW(solve_lp(inf_rhs), MalformedProblem);

  EXPECT_THROW(solve_lp(one_var(2.0, 1.0)), MalformedProblem);

  SolveLimits bad;
  bad.max_iterations = 0;
  EXPECT_THROW(solve_lp(one_var(0.0, 1.0), bad), MalformedProblem);
}

TEST(SolveLp, IterationLimitReported) {
  const LinearProgram lp = compile_pft(parse_pft(support::fixture("transportation.pft.csv"))).base();
  SolveLimits tight;
  tight.max_iterations = 1;
  EXPECT_EQ(solve_lp(lp, tight).status, Status::IterationLimit);
}

TEST(ToStandardForm, GeRowsFlipSign) {
  const std::vector<SenseRow> rows = {{{1.0, 1.0}, RowSense::Ge, 3.0, "a"}};
  const StandardRows s = to_standard_form(rows);
  ASSERT_EQ(s.ub_rows.size(), 1u);
  EXPECT_TRUE(s.eq_rows.empty());
  EXPECT_EQ(s.ub_rows[0].coeffs, (std::vector<double>{-1.0, -1.0}));
  EXPECT_EQ(s.ub_rows[0].rhs, -3.0);
}

TEST(ToStandardForm, EqualityPassesThrough) {
  const std::vector<SenseRow> rows = {{{2.0}, RowSense::Eq, 4.0, "e"}};
  const StandardRows s = to_standard_form(rows);
  ASSERT_EQ(s.eq_rows.size(), 1u);
  EXPECT_EQ(s.eq_rows[0].coeffs, std::vector<double>{2.0});
  EXPECT_EQ(s.eq_rows[0].rhs, 4.0);
}

TEST(ToStandardForm, PreNegatedStartRow) {
  // -X12 - X13 - X14 = -1, negated by the caller
  std::vector<double> a = {-1.0, -1.0, -1.0};
  for (double& v : a) v = -v;
  const std::vector<SenseRow> rows = {{a, RowSense::Eq, 1.0, "Flow1"}};
  const StandardRows s = to_standard_form(rows);
  EXPECT_EQ(s.eq_rows[0].coeffs, (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(s.eq_rows[0].rhs, 1.0);
}

TEST(ToStandardForm, OrderPreservedAndNoNegativeZero) {
  const std::vector<SenseRow> rows = {{{0.0, 1.0}, RowSense::Ge, 0.0, "g1"},
                                      {{1.0, 0.0}, RowSense::Le, 2.0, "l1"},
                                      {{3.0, 3.0}, RowSense::Ge, 1.0, "g2"}};
  const StandardRows s = to_standard_form(rows);
  ASSERT_EQ(s.ub_rows.size(), 3u);
  EXPECT_EQ(s.ub_rows[0].name, "g1");
  EXPECT_EQ(s.ub_rows[1].name, "l1");
  EXPECT_EQ(s.ub_rows[2].name, "g2");
  EXPECT_FALSE(std::signbit(s.ub_rows[0].coeffs[0]));
  EXPECT_FALSE(std::signbit(s.ub_rows[0].rhs));
}

TEST(ToStandardForm, RaggedRowsAndUnknownSense) {
  const std::vector<SenseRow> rows = {{{1.0}, RowSense::Le, 1.0, "a"}, {{1.0, 2.0}, RowSense::Le, 1.0, "b"}};
  EXPECT_THROW(to_standard_form(rows), MalformedProblem);
  EXPECT_THROW(parse_sense("lt"), MalformedProblem);
  EXPECT_EQ(parse_sense(">="), RowSense::Ge);
  EXPECT_EQ(parse_sense("eq"), RowSense::Eq);
}

// Beale's example cycles under the textbook largest-coefficient rule.
TEST(SolveLpProperty, DegenerateBealeTerminates) {
  LinearProgram lp;
  lp.objective = {-0.75, 150.0, -0.02, 6.0};
  lp.bounds.assign(4, Bound{});
  lp.ub_rows = {{{0.25, -60.0, -0.04, 9.0}, 0.0}, {{0.5, -90.0, -0.02, 3.0}, 0.0}, {{0.0, 0.0, 1.0, 0.0}, 1.0}};
  SolveLimits limits;
  limits.max_iterations = 200;
  const LpOutcome out = solve_lp(lp, limits);
  expect_feasible(lp, out);
  EXPECT_NEAR(out.objective_value, -0.05, 1e-9);
  EXPECT_LE(out.iterations, limits.max_iterations);
}

// A stack of identical degenerate constraints through the origin.
TEST(SolveLpProperty, HighlyDegenerateVertex) {
  LinearProgram lp;
  lp.objective = {-1.0, -1.0, -1.0};
  lp.bounds.assign(3, Bound{});
  for (int k = 1; k <= 8; ++k) lp.ub_rows.push_back({{1.0 * k, -1.0, 0.0}, 0.0});
  for (int k = 1; k <= 8; ++k) lp.ub_rows.push_back({{0.0, 1.0 * k, -1.0}, 0.0});
  lp.ub_rows.push_back({{1.0, 1.0, 1.0}, 3.0});
  const LpOutcome out = solve_lp(lp);
  expect_feasible(lp, out);
  EXPECT_NEAR(out.objective_value, -3.0, 1e-9);
}

namespace {

LinearProgram random_lp(std::mt19937& rng, int n, int m) {
  std::uniform_int_distribution<int> coef(0, 9), cost(-9, 9), rhs(5, 40);
  LinearProgram lp;
  for (int j = 0; j < n; ++j) lp.objective.push_back(cost(rng));
  lp.bounds.assign(n, Bound{0.0, 10.0});
  for (int i = 0; i < m; ++i) {
    Row r;
    for (int j = 0; j < n; ++j) r.coeffs.push_back(coef(rng));
    r.rhs = rhs(rng);
    lp.ub_rows.push_back(r);
  }
  return lp;
}

}  // namespace

TEST(SolveLpProperty, WeakDualityAgainstSampledPoints) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const LinearProgram lp = random_lp(rng, 2 + trial % 5, 2 + trial % 4);
    const LpOutcome out = solve_lp(lp);
    expect_feasible(lp, out);
    int checked = 0;
    for (int k = 0; k < 2000 && checked < 50; ++k) {
      std::vector<double> x;
      for (std::size_t j = 0; j < lp.num_vars(); ++j) x.push_back(10.0 * unit(rng) * unit(rng));
      if (!support::lp_feasible(lp, x, 0.0)) continue;
      ++checked;
      EXPECT_GE(dot(lp.objective, x), out.objective_value - 1e-6);
    }
  }
}

TEST(SolveLpProperty, Deterministic) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearProgram lp = random_lp(rng, 6, 5);
    const LpOutcome a = solve_lp(lp);
    const LpOutcome b = solve_lp(lp);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.objective_value, b.objective_value);
  }
}

// Random equality systems built around a known feasible point.
TEST(SolveLpProperty, OptimalOutcomesAreFeasible) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5, m = 3;
    std::vector<double> x0;
    for (int j = 0; j < n; ++j) x0.push_back(coef(rng) + 5);
    LinearProgram lp;
    for (int j = 0; j < n; ++j) lp.objective.push_back(coef(rng));
    lp.bounds.assign(n, Bound{0.0, 12.0});
    for (int i = 0; i < m; ++i) {
      Row r;
      for (int j = 0; j < n; ++j) r.coeffs.push_back(coef(rng));
      r.rhs = dot(r.coeffs, x0);
      (i % 2 ? lp.ub_rows : lp.eq_rows).push_back(r);
    }
    const LpOutcome out = solve_lp(lp);
    expect_feasible(lp, out);
    EXPECT_LE(out.objective_value, dot(lp.objective, x0) + 1e-6);
  }
}
