#pragma once

// Builders that turn structured inputs into MipProblem instances for the
// network, coverage, coloring, location and distribution models.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pftmip/error.hpp"
#include "pftmip/linear_program.hpp"
#include "pftmip/mip.hpp"
#include "pftmip/network.hpp"

namespace pftmip {

namespace detail {

// Accumulates variables and sparse rows, then emits a dense MipProblem.
class ModelBuilder {
 public:
  std::size_t add_var(std::string name, VarKind kind, double cost, Bound bound = {}) {
    names_.push_back(std::move(name));
    kinds_.push_back(kind);
    costs_.push_back(cost);
    bounds_.push_back(bound);
    return names_.size() - 1;
  }

  void add_row(std::vector<std::pair<std::size_t, double>> terms, RowSense sense, double rhs, std::string name) {
    rows_.push_back({std::move(terms), sense, rhs, std::move(name)});
  }

  MipProblem finish(Direction direction) const {
    const std::size_t n = names_.size();
    std::vector<SenseRow> dense;
    dense.reserve(rows_.size());
    for (const auto& r : rows_) {
      SenseRow row{std::vector<double>(n, 0.0), r.sense, r.rhs, r.name};
      for (const auto& [j, a] : r.terms) row.coeffs[j] += a;
      dense.push_back(std::move(row));
    }
    StandardRows std_rows = to_standard_form(dense);
    LinearProgram lp;
    lp.objective = costs_;
    lp.bounds = bounds_;
    lp.direction = direction;
    lp.eq_rows = std::move(std_rows.eq_rows);
    lp.ub_rows = std::move(std_rows.ub_rows);
    return MipProblem(std::move(lp), kinds_, names_);
  }

 private:
  struct SparseRow {
    std::vector<std::pair<std::size_t, double>> terms;
    RowSense sense;
    double rhs;
    std::string name;
  };

  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  std::vector<double> costs_;
  std::vector<Bound> bounds_;
  std::vector<SparseRow> rows_;
};

inline void require_node(const Network& net, const std::string& id, const char* role) {
  if (!net.has_node(id)) throw InputError(std::string(role) + " node '" + id + "' is not in the network");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// shortest path

// Binary X per arc. Flow rows (in - out) per node with -1 at s, +1 at t and
// 0 elsewhere; a single-entry row (inflow <= 1) per node that has entering
// arcs; minimize total arc weight.
inline MipProblem build_shortest_path(const Network& net, const std::string& s, const std::string& t) {
  detail::require_node(net, s, "source");
  detail::require_node(net, t, "sink");
  if (s == t) throw InputError("source and sink must differ");

  detail::ModelBuilder mb;
  for (const Arc& a : net.arcs()) mb.add_var(pair_name("X", a.tail, a.head), VarKind::Binary, a.weight);

  for (const auto& node : net.node_ids()) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t k = 0; k < net.arcs().size(); ++k) {
      const Arc& a = net.arcs()[k];
      if (a.head == node) terms.emplace_back(k, 1.0);
      if (a.tail == node) terms.emplace_back(k, -1.0);
    }
    const double b = node == s ? -1.0 : node == t ? 1.0 : 0.0;
    mb.add_row(std::move(terms), RowSense::Eq, b, "Flow" + node);
  }
  for (const auto& node : net.node_ids()) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t k = 0; k < net.arcs().size(); ++k) {
      if (net.arcs()[k].head == node) terms.emplace_back(k, 1.0);
    }
    if (terms.empty()) continue;
    mb.add_row(std::move(terms), RowSense::Le, 1.0, "In" + node);
  }
  return mb.finish(Direction::Minimize);
}

// ---------------------------------------------------------------------------
// minimum-cost tour (MTZ)

// Binary X_ij for every ordered pair i != j (row-major by i), then integer
// order variables U_1..U_N with U_1 = 1 and 2 <= U_i <= N. Entry and exit
// rows per city and u_i - u_j + N X_ij <= N - 1 for i, j != first city.
inline MipProblem build_tour(const DistanceMatrix& d) {
  d.validate();
  if (!d.square()) throw InputError("tour distance matrix must be square with matching ids");
  const std::size_t n = d.rows();
  if (n < 3) throw InputError("a tour needs at least 3 cities");
  const auto& ids = d.from_ids;
  const double big = static_cast<double>(n);

  detail::ModelBuilder mb;
  std::vector<std::vector<std::size_t>> x(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      x[i][j] = mb.add_var(pair_name("X", ids[i], ids[j]), VarKind::Binary, d.at(i, j));
    }
  }
  std::vector<std::size_t> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Bound b = i == 0 ? Bound{1.0, 1.0} : Bound{2.0, big};
    u[i] = mb.add_var("U" + ids[i], VarKind::Integer, 0.0, b);
  }

  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) terms.emplace_back(x[i][j], 1.0);
    }
    mb.add_row(std::move(terms), RowSense::Eq, 1.0, "Enter" + ids[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) terms.emplace_back(x[i][j], 1.0);
    }
    mb.add_row(std::move(terms), RowSense::Eq, 1.0, "Exit" + ids[i]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      if (i == j) continue;
      mb.add_row({{u[i], 1.0}, {u[j], -1.0}, {x[i][j], big}}, RowSense::Le, big - 1.0,
                 "Order" + ids[i] + "_" + ids[j]);
    }
  }
  return mb.finish(Direction::Minimize);
}

// Adds X_ij = 1 to a tour model.
inline MipProblem force_arc(const MipProblem& tour, const std::string& i, const std::string& j) {
  if (i == j) throw InputError("cannot force an arc from a city to itself");
  const std::string name = pair_name("X", i, j);
  const auto idx = tour.index_of(name);
  if (!idx) throw InputError("arc " + i + "->" + j + " is not in the model");
  Row row{std::vector<double>(tour.num_vars(), 0.0), 1.0, "Force" + i + "_" + j};
  row.coeffs[*idx] = 1.0;
  return tour.with_eq_row(std::move(row));
}

// ---------------------------------------------------------------------------
// set covering

// Binary X_i per area; each area needs a placement in its closed
// neighborhood (itself plus boundary-sharing areas); minimize total cost.
inline MipProblem build_set_cover(const AdjacencySet& adj, std::span<const double> cost) {
  const std::size_t n = adj.size();
  if (cost.size() != n) throw InputError("cost vector length must equal the area count");
  for (double c : cost) {
    if (!(c > 0.0) || std::isinf(c)) throw InputError("area costs must be positive and finite");
  }
  detail::ModelBuilder mb;
  for (std::size_t i = 0; i < n; ++i) mb.add_var("X" + adj.area_ids()[i], VarKind::Binary, cost[i]);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> terms{{j, 1.0}};
    for (std::size_t i : adj.neighbors(j)) terms.emplace_back(i, 1.0);
    std::sort(terms.begin(), terms.end());
    mb.add_row(std::move(terms), RowSense::Ge, 1.0, "Cover" + adj.area_ids()[j]);
  }
  return mb.finish(Direction::Minimize);
}

// ---------------------------------------------------------------------------
// flow capturing

// All simple directed s-t paths by depth-first search. Successors are tried
// in node-declaration order, so the output order is deterministic. Each
// path's flow is the minimum arc weight along it unless `flows` (one per
// enumerated path) overrides it.
inline PathSet enumerate_st_paths(const Network& net, const std::string& s, const std::string& t,
                                  std::span<const double> flows = {}) {
  detail::require_node(net, s, "source");
  detail::require_node(net, t, "sink");
  if (s == t) throw InputError("source and sink must differ");

  const std::size_t n = net.node_ids().size();
  std::vector<std::vector<std::pair<std::size_t, double>>> succ(n);
  for (const Arc& a : net.arcs()) succ[*net.node_index(a.tail)].emplace_back(*net.node_index(a.head), a.weight);
  for (auto& list : succ) std::sort(list.begin(), list.end());

  PathSet out;
  const std::size_t target = *net.node_index(t);
  std::vector<std::size_t> stack{*net.node_index(s)};
  std::vector<bool> on_path(n, false);
  on_path[stack.front()] = true;
  std::vector<double> bottleneck{kInf};

  std::function<void()> dfs = [&]() {
    const std::size_t at = stack.back();
    if (at == target) {
      std::vector<std::string> path;
      for (std::size_t v : stack) path.push_back(net.node_ids()[v]);
      out.paths.push_back(std::move(path));
      out.flow.push_back(bottleneck.back());
      return;
    }
    for (const auto& [next, w] : succ[at]) {
      if (on_path[next]) continue;
      on_path[next] = true;
      stack.push_back(next);
      bottleneck.push_back(std::min(bottleneck.back(), w));
      dfs();
      bottleneck.pop_back();
      stack.pop_back();
      on_path[next] = false;
    }
  };
  dfs();

  if (!flows.empty()) {
    if (flows.size() != out.paths.size()) {
      throw InputError("expected " + std::to_string(out.paths.size()) + " path flows, got " +
                       std::to_string(flows.size()));
    }
    out.flow.assign(flows.begin(), flows.end());
  }
  return out;
}

// Binary X_j per candidate node and Y_r per path. Exactly p placements;
// Y_r - sum of X_j on path r <= 0; maximize the sum of f_r Y_r.
inline MipProblem build_flow_capture(const PathSet& ps, std::span<const std::string> candidates, std::size_t p) {
  if (ps.flow.size() != ps.paths.size()) throw InputError("path set needs one flow per path");
  if (p > candidates.size()) {
    throw InputError("p = " + std::to_string(p) + " exceeds the " + std::to_string(candidates.size()) +
                     " candidate nodes");
  }
  std::set<std::string> endpoints;
  for (const auto& path : ps.paths) {
    if (path.size() < 2) throw InputError("paths need at least two nodes");
    endpoints.insert(path.front());
    endpoints.insert(path.back());
  }
  std::set<std::string> unique;
  for (const auto& c : candidates) {
    if (endpoints.count(c)) throw InputError("candidate '" + c + "' is a path start or terminal node");
    if (!unique.insert(c).second) throw InputError("duplicate candidate '" + c + "'");
  }
  for (double f : ps.flow) {
    if (!(f >= 0.0) || std::isinf(f)) throw InputError("path flows must be finite and nonnegative");
  }

  detail::ModelBuilder mb;
  std::map<std::string, std::size_t> xvar;
  for (const auto& c : candidates) xvar[c] = mb.add_var("X" + c, VarKind::Binary, 0.0);
  std::vector<std::size_t> yvar;
  for (std::size_t r = 0; r < ps.size(); ++r) {
    yvar.push_back(mb.add_var("Y" + std::to_string(r + 1), VarKind::Binary, ps.flow[r]));
  }

  std::vector<std::pair<std::size_t, double>> all;
  for (const auto& c : candidates) all.emplace_back(xvar[c], 1.0);
  mb.add_row(std::move(all), RowSense::Eq, static_cast<double>(p), "p");
  for (std::size_t r = 0; r < ps.size(); ++r) {
    std::vector<std::pair<std::size_t, double>> terms{{yvar[r], 1.0}};
    for (const auto& node : ps.paths[r]) {
      const auto it = xvar.find(node);
      if (it != xvar.end()) terms.emplace_back(it->second, -1.0);
    }
    mb.add_row(std::move(terms), RowSense::Le, 0.0, "Path" + std::to_string(r + 1));
  }
  return mb.finish(Direction::Maximize);
}

// ---------------------------------------------------------------------------
// coloring

// Variable x[k * N + i] is 1 when area i takes color k (one block per color).
// Each area gets exactly one color; neighbors never share a color. The
// objective (total assignments) is constant, so solving is a feasibility test.
inline MipProblem build_coloring(const AdjacencySet& adj, std::size_t colors) {
  if (colors == 0) throw InputError("at least one color is required");
  const std::size_t n = adj.size();
  const auto& ids = adj.area_ids();
  detail::ModelBuilder mb;
  for (std::size_t k = 0; k < colors; ++k) {
    for (std::size_t i = 0; i < n; ++i) mb.add_var("X" + ids[i] + "_" + std::to_string(k + 1), VarKind::Binary, 1.0);
  }
  const auto pairs = adj.index_pairs();
  for (std::size_t k = 0; k < colors; ++k) {
    for (const auto& [a, b] : pairs) {
      mb.add_row({{k * n + a, 1.0}, {k * n + b, 1.0}}, RowSense::Le, 1.0,
                 "Border" + ids[a] + "_" + ids[b] + "_" + std::to_string(k + 1));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t k = 0; k < colors; ++k) terms.emplace_back(k * n + i, 1.0);
    mb.add_row(std::move(terms), RowSense::Eq, 1.0, "One" + ids[i]);
  }
  return mb.finish(Direction::Minimize);
}

// Color (1-based) per area from a coloring solution.
inline std::vector<std::size_t> decode_coloring(const AdjacencySet& adj, std::size_t colors,
                                                std::span<const double> x) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> color(n, 0);
  for (std::size_t k = 0; k < colors; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (x[k * n + i] > 0.5) color[i] = k + 1;
    }
  }
  return color;
}

struct ColoringResult {
  bool found = false;
  std::size_t colors = 0;           // K* when found, otherwise the K_max tried
  std::vector<std::size_t> color;   // 1-based color per area, empty when not found
  MipOutcome outcome;               // solve that decided the answer
};

// Smallest K in 1..max_colors with a proper coloring, by ascending scan.
inline ColoringResult min_colors(const AdjacencySet& adj, std::size_t max_colors, const SolveLimits& limits = {}) {
  if (max_colors == 0) throw InputError("max_colors must be at least 1");
  ColoringResult res;
  for (std::size_t k = 1; k <= max_colors; ++k) {
    res.outcome = solve_mip(build_coloring(adj, k), limits);
    if (res.outcome.optimal()) {
      res.found = true;
      res.colors = k;
      res.color = decode_coloring(adj, k, res.outcome.x);
      return res;
    }
  }
  res.colors = max_colors;
  return res;
}

// ---------------------------------------------------------------------------
// service coverage (p-median)

// d rows are demand sites, columns are candidate server sites. Variables:
// Y_ij in candidate-major blocks (each block lists all demands for one
// candidate), then X_j per candidate.
inline MipProblem build_service_coverage(const DistanceMatrix& d, std::size_t p) {
  d.validate();
  const std::size_t n = d.rows();
  const std::size_t m = d.cols();
  if (p > m) throw InputError("p = " + std::to_string(p) + " exceeds the " + std::to_string(m) + " candidates");

  detail::ModelBuilder mb;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      mb.add_var("Y" + d.from_ids[i] + "_" + d.to_ids[j], VarKind::Binary, d.at(i, j));
    }
  }
  const auto y = [n](std::size_t i, std::size_t j) { return j * n + i; };
  std::vector<std::size_t> x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = mb.add_var("X" + d.to_ids[j], VarKind::Binary, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < m; ++j) terms.emplace_back(y(i, j), 1.0);
    mb.add_row(std::move(terms), RowSense::Eq, 1.0, "Serve" + d.from_ids[i]);
  }
  std::vector<std::pair<std::size_t, double>> open;
  for (std::size_t j = 0; j < m; ++j) open.emplace_back(x[j], 1.0);
  mb.add_row(std::move(open), RowSense::Eq, static_cast<double>(p), "p");
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      mb.add_row({{y(i, j), 1.0}, {x[j], -1.0}}, RowSense::Le, 0.0, "Link" + d.from_ids[i] + "_" + d.to_ids[j]);
    }
  }
  return mb.finish(Direction::Minimize);
}

// Candidate index serving each demand site.
inline std::vector<std::size_t> decode_service(const DistanceMatrix& d, std::span<const double> x) {
  const std::size_t n = d.rows();
  std::vector<std::size_t> server(n, d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (x[j * n + i] > 0.5) server[i] = j;
    }
  }
  return server;
}

// ---------------------------------------------------------------------------
// transportation

struct FixedCapacity {
  std::vector<double> capacity;  // U_i per supplier
};
struct DesignCapacity {};
using SupplyMode = std::variant<FixedCapacity, DesignCapacity>;

// Integer X_ij >= 0 (supplier-major). Demand rows are equalities; supply rows
// cap each supplier at U_i, or at total demand in design mode.
inline MipProblem build_transportation(const DistanceMatrix& cost, std::span<const double> demand,
                                       const SupplyMode& mode) {
  cost.validate();
  const std::size_t m = cost.rows();
  const std::size_t n = cost.cols();
  if (demand.size() != n) throw InputError("demand length must equal the store count");
  for (double v : demand) {
    if (!(v >= 0.0) || std::isinf(v)) throw InputError("demands must be finite and nonnegative");
  }
  std::vector<double> cap(m, std::accumulate(demand.begin(), demand.end(), 0.0));
  if (const auto* fixed = std::get_if<FixedCapacity>(&mode)) {
    if (fixed->capacity.size() != m) throw InputError("capacity length must equal the supplier count");
    for (double v : fixed->capacity) {
      if (!(v >= 0.0) || std::isinf(v)) throw InputError("capacities must be finite and nonnegative");
    }
    cap = fixed->capacity;
  }

  detail::ModelBuilder mb;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mb.add_var(pair_name("X", cost.from_ids[i], cost.to_ids[j]), VarKind::Integer, cost.at(i, j));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < m; ++i) terms.emplace_back(i * n + j, 1.0);
    mb.add_row(std::move(terms), RowSense::Eq, demand[j], "Demand" + cost.to_ids[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < n; ++j) terms.emplace_back(i * n + j, 1.0);
    mb.add_row(std::move(terms), RowSense::Le, cap[i], "Supply" + cost.from_ids[i]);
  }
  return mb.finish(Direction::Minimize);
}

// Units shipped by each supplier in a supplier-major solution.
inline std::vector<double> shipped_totals(std::size_t suppliers, std::size_t stores, std::span<const double> x) {
  std::vector<double> out(suppliers, 0.0);
  for (std::size_t i = 0; i < suppliers; ++i) {
    for (std::size_t j = 0; j < stores; ++j) out[i] += x[i * stores + j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// maximum flow

// Continuous X per arc in [0, capacity]; conservation (in - out = 0) at
// every node except s and t; maximize the net flow leaving s (arcs back
// into s count negatively, so circulation through s earns nothing). An optional
// sink capacity caps the total flow entering t.
inline MipProblem build_max_flow(const Network& net, const std::string& s, const std::string& t,
                                 std::optional<double> sink_capacity = std::nullopt) {
  detail::require_node(net, s, "source");
  detail::require_node(net, t, "sink");
  if (s == t) throw InputError("source and sink must differ");
  if (sink_capacity && !(*sink_capacity >= 0.0)) throw InputError("sink capacity must be nonnegative");

  detail::ModelBuilder mb;
  for (const Arc& a : net.arcs()) {
    mb.add_var(pair_name("X", a.tail, a.head), VarKind::Continuous, a.tail == s ? 1.0 : a.head == s ? -1.0 : 0.0,
               {0.0, a.capacity});
  }
  for (const auto& node : net.node_ids()) {
    if (node == s || node == t) continue;
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t k = 0; k < net.arcs().size(); ++k) {
      if (net.arcs()[k].head == node) terms.emplace_back(k, 1.0);
      if (net.arcs()[k].tail == node) terms.emplace_back(k, -1.0);
    }
    mb.add_row(std::move(terms), RowSense::Eq, 0.0, "Node" + node);
  }
  if (sink_capacity) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t k = 0; k < net.arcs().size(); ++k) {
      if (net.arcs()[k].head == t) terms.emplace_back(k, 1.0);
    }
    mb.add_row(std::move(terms), RowSense::Le, *sink_capacity, "SinkCap");
  }
  return mb.finish(Direction::Maximize);
}

// ---------------------------------------------------------------------------
// facility location

// Integer Y_ij >= 0 (facility-major) then binary X_i. Demand rows are
// equalities; linking rows sum_j Y_ij - u_i X_i <= 0; minimize unit plus
// fixed cost.
inline MipProblem build_facility_location(const DistanceMatrix& unit_cost, std::span<const double> fixed_cost,
                                          std::span<const double> demand, std::span<const double> capacity) {
  unit_cost.validate();
  const std::size_t m = unit_cost.rows();
  const std::size_t n = unit_cost.cols();
  if (fixed_cost.size() != m || capacity.size() != m) {
    throw InputError("fixed cost and capacity need one entry per facility");
  }
  if (demand.size() != n) throw InputError("demand length must equal the store count");
  auto check = [](std::span<const double> v, const char* what) {
    for (double a : v) {
      if (!(a >= 0.0) || std::isinf(a)) throw InputError(std::string(what) + " must be finite and nonnegative");
    }
  };
  check(fixed_cost, "fixed costs");
  check(demand, "demands");
  check(capacity, "capacities");

  detail::ModelBuilder mb;
  const auto& fac = unit_cost.from_ids;
  const auto& store = unit_cost.to_ids;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) mb.add_var(pair_name("Y", fac[i], store[j]), VarKind::Integer, unit_cost.at(i, j));
  }
  std::vector<std::size_t> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = mb.add_var("X" + fac[i], VarKind::Binary, fixed_cost[i]);

  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < m; ++i) terms.emplace_back(i * n + j, 1.0);
    mb.add_row(std::move(terms), RowSense::Eq, demand[j], "Demand" + store[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < n; ++j) terms.emplace_back(i * n + j, 1.0);
    terms.emplace_back(x[i], -capacity[i]);
    mb.add_row(std::move(terms), RowSense::Le, 0.0, "Capacity" + fac[i]);
  }
  return mb.finish(Direction::Minimize);
}

}  // namespace pftmip
