#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pftmip/error.hpp"
#include "pftmip/linear_program.hpp"

namespace pftmip {

struct Arc {
  std::string tail;
  std::string head;
  double weight = 0.0;
  double capacity = kInf;
};

// Directed graph with ordered node ids. Endpoints must exist, no self-loops,
// (tail, head) pairs unique, weights and capacities nonnegative.
class Network {
 public:
  Network() = default;

  Network(std::vector<std::string> node_ids, std::vector<Arc> arcs)
      : node_ids_(std::move(node_ids)), arcs_(std::move(arcs)) {
    std::set<std::string> ids;
    for (const auto& id : node_ids_) {
      if (id.empty()) throw InputError("empty node id");
      if (!ids.insert(id).second) throw InputError("duplicate node id '" + id + "'");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const Arc& a : arcs_) {
      if (!ids.count(a.tail) || !ids.count(a.head)) {
        throw InputError("arc " + a.tail + "->" + a.head + " references an unknown node");
      }
      if (a.tail == a.head) throw InputError("self-loop at node '" + a.tail + "'");
      if (!seen.emplace(a.tail, a.head).second) {
        throw InputError("duplicate arc " + a.tail + "->" + a.head);
      }
      if (!(a.weight >= 0.0) || std::isinf(a.weight)) {
        throw InputError("arc " + a.tail + "->" + a.head + " has an invalid weight");
      }
      if (!(a.capacity >= 0.0)) throw InputError("arc " + a.tail + "->" + a.head + " has a negative capacity");
    }
  }

  // Node ids in order of first appearance among the arcs.
  static Network from_arcs(std::vector<Arc> arcs) {
    std::vector<std::string> ids;
    auto add = [&ids](const std::string& id) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    };
    for (const Arc& a : arcs) {
      add(a.tail);
      add(a.head);
    }
    return Network(std::move(ids), std::move(arcs));
  }

  const std::vector<std::string>& node_ids() const noexcept { return node_ids_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  bool has_node(const std::string& id) const {
    return std::find(node_ids_.begin(), node_ids_.end(), id) != node_ids_.end();
  }

  std::optional<std::size_t> node_index(const std::string& id) const {
    const auto it = std::find(node_ids_.begin(), node_ids_.end(), id);
    if (it == node_ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - node_ids_.begin());
  }

  std::optional<std::size_t> arc_index(const std::string& tail, const std::string& head) const {
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      if (arcs_[k].tail == tail && arcs_[k].head == head) return k;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::string> node_ids_;
  std::vector<Arc> arcs_;
};

// Dense matrix d[from][to] with labelled rows and columns.
struct DistanceMatrix {
  std::vector<std::string> from_ids;
  std::vector<std::string> to_ids;
  std::vector<std::vector<double>> d;

  double at(std::size_t i, std::size_t j) const { return d.at(i).at(j); }
  std::size_t rows() const noexcept { return from_ids.size(); }
  std::size_t cols() const noexcept { return to_ids.size(); }
  bool square() const noexcept { return from_ids == to_ids; }

  // Entries finite and nonnegative; shape matches the id lists.
  void validate() const {
    if (d.size() != from_ids.size()) throw InputError("distance matrix row count does not match its ids");
    for (const auto& row : d) {
      if (row.size() != to_ids.size()) throw InputError("distance matrix column count does not match its ids");
      for (double v : row) {
        if (!(v >= 0.0) || std::isinf(v)) throw InputError("distance entries must be finite and nonnegative");
      }
    }
  }
};

// Unordered boundary-sharing pairs over a list of areas.
class AdjacencySet {
 public:
  AdjacencySet() = default;
  explicit AdjacencySet(std::vector<std::string> area_ids) : area_ids_(std::move(area_ids)) {
    std::set<std::string> ids;
    for (const auto& id : area_ids_) {
      if (!ids.insert(id).second) throw InputError("duplicate area id '" + id + "'");
    }
  }

  // Adds {a, b}; returns false when the pair was already present.
  bool add_pair(const std::string& a, const std::string& b) {
    const auto ia = index_of(a);
    const auto ib = index_of(b);
    if (!ia || !ib) throw InputError("pair {" + a + "," + b + "} references an unknown area");
    if (*ia == *ib) throw InputError("area '" + a + "' cannot neighbor itself");
    return pairs_.emplace(std::min(*ia, *ib), std::max(*ia, *ib)).second;
  }

  const std::vector<std::string>& area_ids() const noexcept { return area_ids_; }
  std::size_t size() const noexcept { return area_ids_.size(); }
  std::size_t pair_count() const noexcept { return pairs_.size(); }

  // Pairs as area indices (smaller first), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> index_pairs() const { return {pairs_.begin(), pairs_.end()}; }

  bool adjacent(std::size_t a, std::size_t b) const { return pairs_.count({std::min(a, b), std::max(a, b)}) > 0; }

  std::vector<std::size_t> neighbors(std::size_t a) const {
    std::vector<std::size_t> out;
    for (const auto& [p, q] : pairs_) {
      if (p == a) out.push_back(q);
      if (q == a) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<std::size_t> index_of(const std::string& id) const {
    const auto it = std::find(area_ids_.begin(), area_ids_.end(), id);
    if (it == area_ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - area_ids_.begin());
  }

 private:
  std::vector<std::string> area_ids_;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

// Simple s-t paths with a flow value per path.
struct PathSet {
  std::vector<std::vector<std::string>> paths;
  std::vector<double> flow;

  std::size_t size() const noexcept { return paths.size(); }
};

// "X" + "1" + "4" -> "X14" for single-character ids, "X" + "a_b" otherwise.
inline std::string pair_name(std::string_view prefix, const std::string& a, const std::string& b) {
  std::string out(prefix);
  out += a;
  if (a.size() != 1 || b.size() != 1) out += '_';
  out += b;
  return out;
}

}  // namespace pftmip
