#pragma once

// Readers and writers for the spatial artifacts: `.gal` contiguity weights,
// linear (from, to, distance) CSV tables, network arc lists and two-column
// assignment tables. Also great-circle distance between coordinates.

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pftmip/csv.hpp"
#include "pftmip/error.hpp"
#include "pftmip/network.hpp"

namespace pftmip {

// ---------------------------------------------------------------------------
// .gal weights

struct GalEntry {
  std::string area;
  std::vector<std::string> neighbors;

  bool operator==(const GalEntry&) const = default;
};

struct SpatialWeights {
  // Header tokens verbatim; token [1] is the area count. GeoDA writes
  // "<flag> <count> <dataset> <key>", shorter variants are kept as-is.
  std::vector<std::string> header;
  std::vector<GalEntry> entries;

  bool operator==(const SpatialWeights&) const = default;

  std::size_t declared_count() const { return std::stoul(header.at(1)); }
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::size_t> parse_count(std::string_view tok) {
  if (tok.empty()) return std::nullopt;
  std::size_t v = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(ch - '0');
  }
  return v;
}

}  // namespace detail

// Header line, then per area an `<id> <count>` line followed by a line of
// `count` neighbor ids (possibly empty when count is 0).
inline SpatialWeights parse_gal(std::string_view text) {
  auto lines = csv::split_lines(text);
  while (!lines.empty() && csv::is_blank(lines.back())) lines.pop_back();
  if (lines.empty()) throw ParseError(1, 0, "empty .gal file");

  SpatialWeights w;
  w.header = detail::split_ws(lines[0]);
  if (w.header.size() < 2) throw ParseError(1, 0, "header needs at least two tokens (second is the area count)");
  const auto count = detail::parse_count(w.header[1]);
  if (!count) throw ParseError(1, 2, "area count '" + w.header[1] + "' is not a number");

  std::size_t li = 1;
  std::set<std::string> seen;
  std::vector<std::size_t> neighbor_line;
  while (li < lines.size()) {
    const std::size_t ln = li + 1;
    const auto head = detail::split_ws(lines[li]);
    if (head.empty()) throw ParseError(ln, 0, "expected '<area-id> <neighbor-count>'");
    if (head.size() != 2) throw ParseError(ln, 0, "expected '<area-id> <neighbor-count>', found " +
                                                      std::to_string(head.size()) + " tokens");
    const auto k = detail::parse_count(head[1]);
    if (!k) throw ParseError(ln, 2, "neighbor count '" + head[1] + "' is not a number");
    if (!seen.insert(head[0]).second) throw ParseError(ln, 1, "duplicate area '" + head[0] + "'");
    if (w.entries.size() == *count) {
      throw ParseError(ln, 0, "more entries than the declared " + std::to_string(*count) + " areas");
    }
    GalEntry e{head[0], {}};
    ++li;
    if (*k == 0) {
      // islands may or may not carry an empty neighbor line
      if (li < lines.size() && csv::is_blank(lines[li])) ++li;
      neighbor_line.push_back(ln);
    } else {
      if (li >= lines.size()) throw ParseError(ln + 1, 0, "truncated file: neighbor line missing");
      e.neighbors = detail::split_ws(lines[li]);
      if (e.neighbors.size() != *k) {
        throw ParseError(li + 1, 0, "area '" + e.area + "' declares " + std::to_string(*k) + " neighbors, line has " +
                                        std::to_string(e.neighbors.size()));
      }
      neighbor_line.push_back(li + 1);
      ++li;
    }
    w.entries.push_back(std::move(e));
  }
  if (w.entries.size() != *count) {
    throw ParseError(lines.size() + 1, 0, "truncated file: declared " + std::to_string(*count) + " areas, found " +
                                              std::to_string(w.entries.size()));
  }
  for (std::size_t a = 0; a < w.entries.size(); ++a) {
    for (const auto& nb : w.entries[a].neighbors) {
      if (!seen.count(nb)) throw ParseError(neighbor_line[a], 0, "neighbor '" + nb + "' is not a listed area");
    }
  }
  return w;
}

inline std::string render_gal(const SpatialWeights& w) {
  std::string out;
  for (std::size_t i = 0; i < w.header.size(); ++i) {
    if (i) out += ' ';
    out += w.header[i];
  }
  out += '\n';
  for (const auto& e : w.entries) {
    out += e.area + ' ' + std::to_string(e.neighbors.size()) + '\n';
    for (std::size_t i = 0; i < e.neighbors.size(); ++i) {
      if (i) out += ' ';
      out += e.neighbors[i];
    }
    out += '\n';
  }
  return out;
}

struct PairsResult {
  AdjacencySet adjacency;
  std::vector<std::string> warnings;  // one per one-sided neighbor mention
};

// Unordered, deduplicated pairs from every directed mention. A mention that
// the other side omits still yields the pair, with a warning.
inline PairsResult weights_to_pairs(const SpatialWeights& w) {
  std::vector<std::string> ids;
  ids.reserve(w.entries.size());
  std::map<std::string, std::set<std::string>> listed;
  for (const auto& e : w.entries) {
    ids.push_back(e.area);
    listed[e.area].insert(e.neighbors.begin(), e.neighbors.end());
  }
  PairsResult res{AdjacencySet(ids), {}};
  for (const auto& e : w.entries) {
    for (const auto& nb : e.neighbors) {
      if (nb == e.area) {
        res.warnings.push_back("area '" + e.area + "' lists itself as a neighbor; ignored");
        continue;
      }
      res.adjacency.add_pair(e.area, nb);
      if (!listed[nb].count(e.area)) {
        res.warnings.push_back("asymmetric weights: '" + e.area + "' lists '" + nb + "' but not the reverse");
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// linear distance table

// Header row, then one (from, to, distance) record per line, columns chosen
// by 0-based index. Ids keep their order of first appearance, so a file
// written in candidate blocks keeps that block order in to_ids. Missing
// diagonal entries of a square id set default to 0.
inline DistanceMatrix parse_distance_matrix(std::string_view text, std::size_t from_col, std::size_t to_col,
                                            std::size_t dist_col) {
  const auto lines = csv::split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "missing header row");
  const std::size_t need = std::max({from_col, to_col, dist_col}) + 1;

  DistanceMatrix m;
  std::map<std::string, std::size_t> from_index;
  std::map<std::string, std::size_t> to_index;
  std::map<std::pair<std::size_t, std::size_t>, double> value;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (csv::is_blank(lines[li])) continue;
    const std::size_t ln = li + 1;
    const auto cells = csv::split_record(lines[li]);
    if (cells.size() < need) throw ParseError(ln, 0, "expected at least " + std::to_string(need) + " cells");
    const std::string from(csv::trim(cells[from_col]));
    const std::string to(csv::trim(cells[to_col]));
    if (from.empty() || to.empty()) throw ParseError(ln, 0, "empty id");
    const auto d = csv::parse_number(cells[dist_col]);
    if (!d || !std::isfinite(*d)) throw ParseError(ln, dist_col + 1, "distance '" + cells[dist_col] + "' is not a number");
    if (*d < 0.0) throw ParseError(ln, dist_col + 1, "negative distance for (" + from + ", " + to + ")");
    if (!from_index.count(from)) {
      from_index[from] = m.from_ids.size();
      m.from_ids.push_back(from);
    }
    if (!to_index.count(to)) {
      to_index[to] = m.to_ids.size();
      m.to_ids.push_back(to);
    }
    if (!value.emplace(std::make_pair(from_index[from], to_index[to]), *d).second) {
      throw ParseError(ln, 0, "duplicate pair (" + from + ", " + to + ")");
    }
  }

  std::set<std::string> from_set(m.from_ids.begin(), m.from_ids.end());
  std::set<std::string> to_set(m.to_ids.begin(), m.to_ids.end());
  const bool square_ids = from_set == to_set;
  if (square_ids) m.to_ids = m.from_ids;  // share one ordering for tours
  m.d.assign(m.from_ids.size(), std::vector<double>(m.to_ids.size(), 0.0));
  for (std::size_t i = 0; i < m.from_ids.size(); ++i) {
    for (std::size_t j = 0; j < m.to_ids.size(); ++j) {
      const std::size_t tj = to_index.at(m.to_ids[j]);
      const auto it = value.find({i, tj});
      if (it != value.end()) {
        m.d[i][j] = it->second;
      } else if (!(square_ids && m.from_ids[i] == m.to_ids[j])) {
        throw ParseError(lines.size(), 0, "missing pair (" + m.from_ids[i] + ", " + m.to_ids[j] + ")");
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// geodesic distance

struct GeoPoint {
  std::string id;
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

inline constexpr double kEarthRadiusMiles = 3958.7613;

// Great-circle (haversine) distance on a sphere of mean Earth radius.
inline double geodesic_miles(const GeoPoint& a, const GeoPoint& b) {
  for (const GeoPoint* p : {&a, &b}) {
    if (!(p->lat >= -90.0 && p->lat <= 90.0) || !(p->lon >= -180.0 && p->lon <= 180.0)) {
      throw InputError("coordinates of '" + p->id + "' are out of range");
    }
  }
  constexpr double rad = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * rad;
  const double dlon = (b.lon - a.lon) * rad;
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  double h = s1 * s1 + std::cos(a.lat * rad) * std::cos(b.lat * rad) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(h));
}

// ---------------------------------------------------------------------------
// assignment tables

using Assignment = std::vector<std::pair<std::string, std::string>>;

inline std::string write_assignment_csv(const Assignment& assignment, std::string_view id_header,
                                        std::string_view label_header) {
  std::string out = csv::join({std::string(id_header), std::string(label_header)}) + "\n";
  for (const auto& [id, label] : assignment) out += csv::join({id, label}) + "\n";
  return out;
}

struct AssignmentTable {
  std::string id_header;
  std::string label_header;
  Assignment rows;
};

inline AssignmentTable parse_assignment_csv(std::string_view text) {
  const auto lines = csv::split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "missing header row");
  AssignmentTable t;
  const auto header = csv::split_record(lines[0]);
  if (header.size() != 2) throw ParseError(1, 0, "assignment header needs exactly two columns");
  t.id_header = header[0];
  t.label_header = header[1];
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto cells = csv::split_record(lines[li]);
    if (cells.size() != 2) throw ParseError(li + 1, 0, "expected two cells");
    t.rows.emplace_back(cells[0], cells[1]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// network and keyed value tables

// Header `tail,head,weight,capacity`; blank weight is 0, blank capacity +inf.
inline Network parse_network_csv(std::string_view text) {
  const auto lines = csv::split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "missing header row");
  const auto header = csv::split_record(lines[0]);
  if (header.size() < 3) throw ParseError(1, 0, "network header must be tail,head,weight[,capacity]");
  std::vector<Arc> arcs;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (csv::is_blank(lines[li])) continue;
    const std::size_t ln = li + 1;
    const auto cells = csv::split_record(lines[li]);
    if (cells.size() != header.size()) {
      throw ParseError(ln, 0, "expected " + std::to_string(header.size()) + " cells, found " +
                                  std::to_string(cells.size()));
    }
    Arc a{std::string(csv::trim(cells[0])), std::string(csv::trim(cells[1])), 0.0, kInf};
    if (!csv::is_blank(cells[2])) {
      const auto w = csv::parse_number(cells[2]);
      if (!w) throw ParseError(ln, 3, "weight '" + cells[2] + "' is not a number");
      a.weight = *w;
    }
    if (cells.size() > 3 && !csv::is_blank(cells[3])) {
      const auto c = csv::parse_number(cells[3]);
      if (!c) throw ParseError(ln, 4, "capacity '" + cells[3] + "' is not a number");
      a.capacity = *c;
    }
    arcs.push_back(std::move(a));
  }
  try {
    return Network::from_arcs(std::move(arcs));
  } catch (const InputError& e) {
    throw ParseError(0, 0, e.what());
  }
}

struct KeyedRow {
  std::string key;
  std::vector<double> values;
};

// Header row, then `<key>,<number>[,<number>...]` records of uniform width.
inline std::vector<KeyedRow> parse_keyed_table(std::string_view text, std::size_t value_columns) {
  const auto lines = csv::split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "missing header row");
  std::vector<KeyedRow> rows;
  std::set<std::string> keys;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (csv::is_blank(lines[li])) continue;
    const std::size_t ln = li + 1;
    const auto cells = csv::split_record(lines[li]);
    if (cells.size() != value_columns + 1) {
      throw ParseError(ln, 0, "expected " + std::to_string(value_columns + 1) + " cells, found " +
                                  std::to_string(cells.size()));
    }
    KeyedRow r{std::string(csv::trim(cells[0])), {}};
    if (!keys.insert(r.key).second) throw ParseError(ln, 1, "duplicate key '" + r.key + "'");
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto v = csv::parse_number(cells[c]);
      if (!v) throw ParseError(ln, c + 1, "'" + cells[c] + "' is not a number");
      r.values.push_back(*v);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace pftmip
