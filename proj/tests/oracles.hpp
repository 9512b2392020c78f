#pragma once

// Test-only reference computations. None of these call into the solver;
// they work from raw data (arc lists, matrices, adjacency) so agreement with
// the library is a genuine cross-check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// --- independent constraint evaluation -------------------------------------

struct DenseRow {
  std::vector<double> a;
  char sense;  // '<', '=', '>'
  double b;
};

inline bool satisfies(const std::vector<DenseRow>& rows, const std::vector<double>& lo,
                      const std::vector<double>& hi, const std::vector<double>& x, double tol = 1e-7) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lo[j] - tol || x[j] > hi[j] + tol) return false;
  }
  for (const auto& r : rows) {
    long double lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += static_cast<long double>(r.a[j]) * x[j];
    const double v = static_cast<double>(lhs);
    if (r.sense == '<' && v > r.b + tol) return false;
    if (r.sense == '>' && v < r.b - tol) return false;
    if (r.sense == '=' && std::abs(v - r.b) > tol) return false;
  }
  return true;
}

// Exhaustive search over {0,1}^n. Returns the best objective (min or max)
// or nullopt when no binary point is feasible.
inline std::optional<double> best_binary(const std::vector<DenseRow>& rows, const std::vector<double>& c,
                                         bool maximize) {
  const std::size_t n = c.size();
  std::vector<double> x(n), lo(n, 0.0), hi(n, 1.0);
  std::optional<double> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1 ? 1.0 : 0.0;
    if (!satisfies(rows, lo, hi, x, 1e-9)) continue;
    double z = 0;
    for (std::size_t j = 0; j < n; ++j) z += c[j] * x[j];
    if (!best || (maximize ? z > *best : z < *best)) best = z;
  }
  return best;
}

// --- graphs ----------------------------------------------------------------

struct Edge {
  int u, v;
  double w;
};

inline double dijkstra(int n, const std::vector<Edge>& edges, int s, int t) {
  std::vector<double> dist(n, inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const auto& e : edges) {
      if (e.u != u) continue;
      if (d + e.w < dist[e.v]) {
        dist[e.v] = d + e.w;
        pq.push({dist[e.v], e.v});
      }
    }
  }
  return dist[t];
}

// Edmonds-Karp on a capacity matrix. A finite sink_cap adds a super-sink
// behind t with that capacity.
inline double max_flow(int n, const std::vector<Edge>& arcs, int s, int t, double sink_cap = inf) {
  int nodes = n, sink = t;
  if (std::isfinite(sink_cap)) {
    nodes = n + 1;
    sink = n;
  }
  std::vector<std::vector<double>> cap(nodes, std::vector<double>(nodes, 0.0));
  for (const auto& a : arcs) cap[a.u][a.v] += a.w;
  if (sink != t) cap[t][sink] = sink_cap;
  double total = 0;
  while (true) {
    std::vector<int> prev(nodes, -1);
    prev[s] = s;
    std::deque<int> q{s};
    while (!q.empty() && prev[sink] < 0) {
      int u = q.front();
      q.pop_front();
      for (int v = 0; v < nodes; ++v) {
        if (prev[v] < 0 && cap[u][v] > 1e-12) {
          prev[v] = u;
          q.push_back(v);
        }
      }
    }
    if (prev[sink] < 0) break;
    double aug = inf;
    for (int v = sink; v != s; v = prev[v]) aug = std::min(aug, cap[prev[v]][v]);
    for (int v = sink; v != s; v = prev[v]) {
      cap[prev[v]][v] -= aug;
      cap[v][prev[v]] += aug;
    }
    total += aug;
  }
  return total;
}

// --- tours -----------------------------------------------------------------

// Cheapest Hamiltonian cycle by permuting cities 1..N-1 behind city 0. Every
// (i, j) in `forced` must appear as a directed arc of the tour.
inline std::optional<double> tsp(const std::vector<std::vector<double>>& d,
                                 const std::vector<std::pair<int, int>>& forced = {}) {
  const int n = static_cast<int>(d.size());
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::optional<double> best;
  do {
    std::vector<int> next(n);
    int at = 0;
    double len = 0;
    for (int v : perm) {
      next[at] = v;
      len += d[at][v];
      at = v;
    }
    next[at] = 0;
    len += d[at][0];
    bool ok = true;
    for (auto [i, j] : forced) ok = ok && next[i] == j;
    if (ok && (!best || len < *best)) best = len;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// --- location --------------------------------------------------------------

template <class F>
void for_each_subset(int m, int p, F&& f) {
  std::vector<int> pick(p);
  std::iota(pick.begin(), pick.end(), 0);
  if (p > m) return;
  while (true) {
    f(pick);
    int k = p - 1;
    while (k >= 0 && pick[k] == m - p + k) --k;
    if (k < 0) return;
    ++pick[k];
    for (int r = k + 1; r < p; ++r) pick[r] = pick[r - 1] + 1;
  }
}

// d[i][j]: demand i to candidate j. Each demand goes to its nearest open site.
inline double p_median(const std::vector<std::vector<double>>& d, int p) {
  const int m = static_cast<int>(d.front().size());
  double best = inf;
  for_each_subset(m, p, [&](const std::vector<int>& open) {
    double z = 0;
    for (const auto& row : d) {
      double near = inf;
      for (int j : open) near = std::min(near, row[j]);
      z += near;
    }
    best = std::min(best, z);
  });
  return best;
}

// Flow captured by the best p-subset of candidates; a path counts once if
// any chosen node lies on it.
inline double flow_capture(const std::vector<std::vector<std::string>>& paths, const std::vector<double>& flow,
                           const std::vector<std::string>& candidates, int p) {
  double best = -inf;
  for_each_subset(static_cast<int>(candidates.size()), p, [&](const std::vector<int>& pick) {
    double z = 0;
    for (std::size_t r = 0; r < paths.size(); ++r) {
      bool hit = false;
      for (int k : pick) hit = hit || std::find(paths[r].begin(), paths[r].end(), candidates[k]) != paths[r].end();
      if (hit) z += flow[r];
    }
    best = std::max(best, z);
  });
  return best;
}

// Cheapest subset of areas whose closed neighborhoods cover every area.
struct CoverResult {
  double cost;
  int count;
};
inline CoverResult set_cover(int n, const std::vector<std::pair<int, int>>& pairs, const std::vector<double>& cost) {
  std::vector<std::uint32_t> reach(n);
  for (int i = 0; i < n; ++i) reach[i] = 1u << i;
  for (auto [a, b] : pairs) {
    reach[a] |= 1u << b;
    reach[b] |= 1u << a;
  }
  const std::uint32_t all = (1u << n) - 1;
  CoverResult best{inf, 0};
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    std::uint32_t covered = 0;
    double c = 0;
    int cnt = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        covered |= reach[i];
        c += cost[i];
        ++cnt;
      }
    }
    if (covered == all && c < best.cost) best = {c, cnt};
  }
  return best;
}

// --- coloring --------------------------------------------------------------

inline bool colorable(int n, const std::vector<std::vector<int>>& adj, int k, std::vector<int>& color, int v = 0) {
  if (v == n) return true;
  for (int c = 0; c < k; ++c) {
    bool ok = true;
    for (int u : adj[v]) ok = ok && color[u] != c;
    if (!ok) continue;
    color[v] = c;
    if (colorable(n, adj, k, color, v + 1)) return true;
    color[v] = -1;
  }
  return false;
}

inline int chromatic_number(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : pairs) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int k = 1; k <= n; ++k) {
    std::vector<int> color(n, -1);
    if (colorable(n, adj, k, color)) return k;
  }
  return n;
}

// --- min-cost flow (transportation) ----------------------------------------

// Successive shortest paths with Bellman-Ford. Suppliers 0..m-1 with
// capacity cap, stores with demand dem, unit cost c[i][j]. Returns the
// minimum cost of meeting all demand, or inf when capacity is short.
inline double transportation(const std::vector<std::vector<double>>& c, const std::vector<double>& cap,
                             const std::vector<double>& dem) {
  const int m = static_cast<int>(cap.size());
  const int n = static_cast<int>(dem.size());
  const int src = m + n, snk = m + n + 1, V = m + n + 2;
  struct E {
    int to;
    double cap, cost;
    int rev;
  };
  std::vector<std::vector<E>> g(V);
  auto add = [&](int u, int v, double cp, double cs) {
    g[u].push_back({v, cp, cs, static_cast<int>(g[v].size())});
    g[v].push_back({u, 0, -cs, static_cast<int>(g[u].size()) - 1});
  };
  for (int i = 0; i < m; ++i) add(src, i, cap[i], 0);
  for (int j = 0; j < n; ++j) add(m + j, snk, dem[j], 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) add(i, m + j, inf, c[i][j]);
  double need = std::accumulate(dem.begin(), dem.end(), 0.0), cost = 0;
  while (need > 1e-9) {
    std::vector<double> dist(V, inf);
    std::vector<std::pair<int, int>> pv(V, {-1, -1});
    dist[src] = 0;
    for (int it = 0; it < V; ++it) {
      bool changed = false;
      for (int u = 0; u < V; ++u) {
        if (dist[u] == inf) continue;
        for (int k = 0; k < static_cast<int>(g[u].size()); ++k) {
          const E& e = g[u][k];
          if (e.cap > 1e-9 && dist[u] + e.cost < dist[e.to] - 1e-12) {
            dist[e.to] = dist[u] + e.cost;
            pv[e.to] = {u, k};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[snk] == inf) return inf;
    double aug = need;
    for (int v = snk; v != src; v = pv[v].first) aug = std::min(aug, g[pv[v].first][pv[v].second].cap);
    for (int v = snk; v != src; v = pv[v].first) {
      E& e = g[pv[v].first][pv[v].second];
      e.cap -= aug;
      g[v][e.rev].cap += aug;
    }
    need -= aug;
    cost += aug * dist[snk];
  }
  return cost;
}

// Every open set, each evaluated as a transportation problem plus fixed cost.
inline double facility_location(const std::vector<std::vector<double>>& c, const std::vector<double>& fixed,
                                const std::vector<double>& dem, const std::vector<double>& cap) {
  const int m = static_cast<int>(fixed.size());
  double best = inf;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<double> open_cap(m, 0.0);
    double f = 0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        open_cap[i] = cap[i];
        f += fixed[i];
      }
    }
    best = std::min(best, f + transportation(c, open_cap, dem));
  }
  return best;
}

// --- random instances ------------------------------------------------------

inline std::vector<std::vector<double>> random_symmetric(std::mt19937& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = dist(rng);
  return d;
}

inline std::vector<std::vector<double>> random_matrix(std::mt19937& rng, int rows, int cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::vector<double>> d(rows, std::vector<double>(cols));
  for (auto& r : d)
    for (auto& v : r) v = dist(rng);
  return d;
}

}  // namespace oracle
