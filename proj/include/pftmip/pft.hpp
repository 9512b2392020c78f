#pragma once

// Problem formulation tables: one row per decision variable, one column per
// constraint, plus objective and optional bound columns.
//
// PFT v1 text dialect (UTF-8 CSV, quoted cells may hold commas):
//
//   #PFT v1 dir=<min|max> title=<free text>
//   var,kind,<con-1>,...,<con-K>,obj[,lb,ub]
//   <name>,<B|I|C>,<a_1>,...,<a_K>,<c>[,<lb>,<ub>]     one line per variable
//   @sense,,<le|eq|ge>,...,                             one sense per column
//   @rhs,,<b_1>,...,<b_K>,                              right-hand sides
//
// Blank coefficient cells are zero; blank bound cells take the kind default.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "pftmip/csv.hpp"
#include "pftmip/error.hpp"
#include "pftmip/linear_program.hpp"
#include "pftmip/mip.hpp"

namespace pftmip {

struct PftVariable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double objective = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;

  bool operator==(const PftVariable&) const = default;
};

struct PftConstraint {
  std::string name;
  RowSense sense = RowSense::Le;
  double rhs = 0.0;
  std::vector<double> coeffs;  // one per variable

  bool operator==(const PftConstraint&) const = default;
};

struct Pft {
  std::string title;
  Direction direction = Direction::Minimize;
  std::vector<PftVariable> variables;
  std::vector<PftConstraint> constraints;
  bool has_bound_columns = false;

  bool operator==(const Pft&) const = default;

  std::optional<std::size_t> constraint_index(std::string_view name) const {
    for (std::size_t k = 0; k < constraints.size(); ++k) {
      if (constraints[k].name == name) return k;
    }
    return std::nullopt;
  }

  // Returns a copy without the named constraint column.
  Pft without_constraint(std::string_view name) const {
    Pft copy = *this;
    std::erase_if(copy.constraints, [&](const PftConstraint& c) { return c.name == name; });
    return copy;
  }
};

inline char kind_letter(VarKind k) {
  switch (k) {
    case VarKind::Binary: return 'B';
    case VarKind::Integer: return 'I';
    case VarKind::Continuous: return 'C';
  }
  return '?';
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

inline std::optional<Direction> parse_direction(std::string_view v) {
  if (v == "min") return Direction::Minimize;
  if (v == "max") return Direction::Maximize;
  return std::nullopt;
}

inline void parse_pragma(std::string_view line, Pft& pft) {
  constexpr std::string_view kMagic = "#PFT v1";
  if (line.substr(0, kMagic.size()) != kMagic) {
    throw ParseError(1, 0, "missing '#PFT v1' pragma");
  }
  std::string_view rest = line.substr(kMagic.size());
  bool have_dir = false;
  while (!rest.empty()) {
    rest = csv::trim(rest);
    if (rest.empty()) break;
    if (rest.substr(0, 6) == "title=") {
      pft.title = std::string(rest.substr(6));
      break;
    }
    const std::size_t sp = rest.find(' ');
    const std::string_view tok = rest.substr(0, sp);
    rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp);
    if (tok.substr(0, 4) == "dir=") {
      const auto d = parse_direction(tok.substr(4));
      if (!d) throw ParseError(1, 0, "direction must be 'min' or 'max', got '" + std::string(tok.substr(4)) + "'");
      pft.direction = *d;
      have_dir = true;
    } else {
      throw ParseError(1, 0, "unknown pragma field '" + std::string(tok) + "'");
    }
  }
  if (!have_dir) throw ParseError(1, 0, "pragma lacks dir=<min|max>");
}

inline double parse_cell_number(std::string_view cell, std::size_t line, std::size_t col) {
  if (csv::is_blank(cell)) return 0.0;
  const auto v = csv::parse_number(cell);
  if (!v || !std::isfinite(*v)) {
    throw ParseError(line, col, "expected a finite number, got '" + std::string(cell) + "'");
  }
  return *v;
}

}  // namespace detail

// Parses PFT v1 text. Throws ParseError with line/column on malformed input.
inline Pft parse_pft(std::string_view text) {
  const auto lines = csv::split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "missing '#PFT v1' pragma");

  Pft pft;
  detail::parse_pragma(lines[0], pft);

  std::size_t header_line = 1;
  while (header_line < lines.size() && csv::is_blank(lines[header_line])) ++header_line;
  if (header_line >= lines.size()) throw ParseError(2, 0, "missing header line");

  const auto header = csv::split_record(lines[header_line]);
  const std::size_t hl = header_line + 1;
  if (header.size() < 3 || csv::trim(header[0]) != "var" || csv::trim(header[1]) != "kind") {
    throw ParseError(hl, 1, "header must start with 'var,kind'");
  }
  std::size_t obj_col = header.size();
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (csv::trim(header[c]) == "obj") {
      obj_col = c;
      break;
    }
  }
  if (obj_col == header.size()) throw ParseError(hl, 0, "header lacks an 'obj' column");
  const std::size_t tail = header.size() - obj_col - 1;
  if (tail == 2) {
    if (csv::trim(header[obj_col + 1]) != "lb" || csv::trim(header[obj_col + 2]) != "ub") {
      throw ParseError(hl, obj_col + 2, "columns after 'obj' must be 'lb,ub'");
    }
    pft.has_bound_columns = true;
  } else if (tail != 0) {
    throw ParseError(hl, obj_col + 2, "columns after 'obj' must be 'lb,ub'");
  }

  const std::size_t k = obj_col - 2;
  std::unordered_set<std::string> con_names;
  for (std::size_t c = 2; c < obj_col; ++c) {
    std::string name(csv::trim(header[c]));
    if (name.empty()) throw ParseError(hl, c + 1, "empty constraint name");
    if (!con_names.insert(name).second) throw ParseError(hl, c + 1, "duplicate constraint name '" + name + "'");
    pft.constraints.push_back({std::move(name), RowSense::Le, 0.0, {}});
  }

  std::unordered_set<std::string> var_names;
  bool have_sense = false;
  bool have_rhs = false;
  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    const std::size_t ln = li + 1;
    if (csv::is_blank(lines[li])) continue;
    const auto cells = csv::split_record(lines[li]);
    const std::string_view tag = csv::trim(cells[0]);

    if (tag == "@sense" || tag == "@rhs") {
      // Either the full header width or the short form ending at the obj cell.
      if (cells.size() != header.size() && cells.size() != k + 3) {
        throw ParseError(ln, 0, "expected " + std::to_string(header.size()) + " cells, found " +
                                    std::to_string(cells.size()));
      }
      const bool is_sense = tag == "@sense";
      if ((is_sense && have_sense) || (!is_sense && have_rhs)) {
        throw ParseError(ln, 1, "duplicate " + std::string(tag) + " line");
      }
      for (std::size_t c = 0; c < k; ++c) {
        const std::string_view cell = csv::trim(cells[c + 2]);
        if (is_sense) {
          if (cell == "le") pft.constraints[c].sense = RowSense::Le;
          else if (cell == "eq") pft.constraints[c].sense = RowSense::Eq;
          else if (cell == "ge") pft.constraints[c].sense = RowSense::Ge;
          else throw ParseError(ln, c + 3, "unknown sense token '" + std::string(cell) + "'");
        } else {
          pft.constraints[c].rhs = detail::parse_cell_number(cell, ln, c + 3);
        }
      }
      (is_sense ? have_sense : have_rhs) = true;
      continue;
    }

    if (!tag.empty() && tag.front() == '@') throw ParseError(ln, 1, "unknown directive '" + std::string(tag) + "'");
    if (have_sense || have_rhs) throw ParseError(ln, 1, "variable line after @sense/@rhs");
    if (cells.size() != header.size()) {
      throw ParseError(ln, 0, "expected " + std::to_string(header.size()) + " cells, found " +
                                  std::to_string(cells.size()));
    }

    PftVariable v;
    v.name = std::string(tag);
    if (v.name.empty()) throw ParseError(ln, 1, "empty variable name");
    if (!var_names.insert(v.name).second) throw ParseError(ln, 1, "duplicate variable name '" + v.name + "'");
    const std::string_view kind = csv::trim(cells[1]);
    if (kind == "B") v.kind = VarKind::Binary;
    else if (kind == "I") v.kind = VarKind::Integer;
    else if (kind == "C") v.kind = VarKind::Continuous;
    else throw ParseError(ln, 2, "unknown kind '" + std::string(kind) + "' (expected B, I or C)");

    for (std::size_t c = 0; c < k; ++c) {
      pft.constraints[c].coeffs.push_back(detail::parse_cell_number(cells[c + 2], ln, c + 3));
    }
    v.objective = detail::parse_cell_number(cells[obj_col], ln, obj_col + 1);
    if (pft.has_bound_columns) {
      for (std::size_t b = 0; b < 2; ++b) {
        const std::size_t col = obj_col + 1 + b;
        if (csv::is_blank(cells[col])) continue;
        const auto val = csv::parse_number(cells[col]);
        if (!val) throw ParseError(ln, col + 1, "expected a bound, got '" + cells[col] + "'");
        (b == 0 ? v.lower : v.upper) = *val;
      }
      if (v.kind == VarKind::Binary && (v.lower || v.upper)) {
        throw ParseError(ln, obj_col + 2, "binary variable '" + v.name + "' must not carry explicit bounds");
      }
    }
    pft.variables.push_back(std::move(v));
  }

  if (!have_sense) throw ParseError(lines.size(), 0, "missing @sense line");
  if (!have_rhs) throw ParseError(lines.size(), 0, "missing @rhs line");
  return pft;
}

// Canonical PFT v1 text. parse_pft(render_pft(p)) == p.
inline std::string render_pft(const Pft& pft) {
  std::string out = "#PFT v1 dir=";
  out += pft.direction == Direction::Maximize ? "max" : "min";
  out += " title=" + pft.title + "\n";

  std::vector<std::string> header{"var", "kind"};
  for (const auto& c : pft.constraints) header.push_back(c.name);
  header.emplace_back("obj");
  if (pft.has_bound_columns) {
    header.emplace_back("lb");
    header.emplace_back("ub");
  }
  out += csv::join(header) + "\n";

  for (std::size_t i = 0; i < pft.variables.size(); ++i) {
    const PftVariable& v = pft.variables[i];
    std::vector<std::string> cells{v.name, std::string(1, kind_letter(v.kind))};
    for (const auto& c : pft.constraints) {
      cells.push_back(c.coeffs[i] == 0.0 ? "" : csv::format_number(c.coeffs[i]));
    }
    cells.push_back(csv::format_number(v.objective));
    if (pft.has_bound_columns) {
      cells.push_back(v.lower ? csv::format_number(*v.lower) : "");
      cells.push_back(v.upper ? csv::format_number(*v.upper) : "");
    }
    out += csv::join(cells) + "\n";
  }

  const std::size_t trailing = pft.has_bound_columns ? 3 : 1;
  std::vector<std::string> sense{"@sense", ""};
  std::vector<std::string> rhs{"@rhs", ""};
  for (const auto& c : pft.constraints) {
    sense.emplace_back(to_string(c.sense));
    rhs.push_back(csv::format_number(c.rhs));
  }
  for (std::size_t t = 0; t < trailing; ++t) {
    sense.emplace_back();
    rhs.emplace_back();
  }
  out += csv::join(sense) + "\n";
  out += csv::join(rhs) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// audit

enum class FindingKind { ZeroColumn, EqColumnSingleton, ZeroRow, UbRowSingleton };

inline std::string_view to_string(FindingKind k) {
  switch (k) {
    case FindingKind::ZeroColumn: return "ZeroColumn";
    case FindingKind::EqColumnSingleton: return "EqColumnSingleton";
    case FindingKind::ZeroRow: return "ZeroRow";
    case FindingKind::UbRowSingleton: return "UbRowSingleton";
  }
  return "?";
}

struct AuditFinding {
  FindingKind kind;
  std::string subject;  // constraint or variable name
  std::string message;
};

struct AuditReport {
  std::vector<AuditFinding> findings;

  std::size_t count(FindingKind k) const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [k](const AuditFinding& f) { return f.kind == k; }));
  }
  bool clean() const noexcept { return findings.empty(); }
};

// Structural checks for trivial infeasibility or redundancy:
//   ZeroColumn         a constraint column that is entirely zero
//   EqColumnSingleton  an equality column with a single nonzero equal to 1
//                      (that variable is a constant)
//   ZeroRow            a variable that appears in no constraint
//   UbRowSingleton     an inequality column with a single nonzero equal to 1
//                      (a simple bound)
inline AuditReport audit_pft(const Pft& pft) {
  AuditReport report;
  for (const auto& c : pft.constraints) {
    std::size_t nonzeros = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
      if (c.coeffs[i] != 0.0) {
        ++nonzeros;
        where = i;
      }
    }
    if (nonzeros == 0) {
      report.findings.push_back({FindingKind::ZeroColumn, c.name,
                                 "constraint '" + c.name + "' has all-zero coefficients (trivial constraint)"});
      continue;
    }
    if (nonzeros != 1 || c.coeffs[where] != 1.0) continue;
    const std::string& var = pft.variables[where].name;
    if (c.sense == RowSense::Eq) {
      report.findings.push_back({FindingKind::EqColumnSingleton, c.name,
                                 "constraint '" + c.name + "' fixes '" + var + "' (a constant, not a variable)"});
    } else {
      report.findings.push_back({FindingKind::UbRowSingleton, c.name,
                                 "constraint '" + c.name + "' is a simple bound on '" + var + "'"});
    }
  }
  for (std::size_t i = 0; i < pft.variables.size(); ++i) {
    const bool used = std::any_of(pft.constraints.begin(), pft.constraints.end(),
                                  [i](const PftConstraint& c) { return c.coeffs[i] != 0.0; });
    if (!used) {
      const std::string& name = pft.variables[i].name;
      report.findings.push_back(
          {FindingKind::ZeroRow, name, "variable '" + name + "' appears in no constraint (unconstrained)"});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// compile

// Each constraint column becomes one row; >= columns are negated into <= rows.
// Default bounds: B in [0,1], I and C in [0, inf); explicit lb/ub override.
inline MipProblem compile_pft(const Pft& pft) {
  const std::size_t n = pft.variables.size();
  LinearProgram lp;
  lp.direction = pft.direction;
  lp.objective.reserve(n);
  lp.bounds.reserve(n);
  std::vector<VarKind> kinds;
  std::vector<std::string> names;
  for (const auto& v : pft.variables) {
    lp.objective.push_back(v.objective);
    Bound b{0.0, v.kind == VarKind::Binary ? 1.0 : kInf};
    if (v.lower) b.lower = *v.lower;
    if (v.upper) b.upper = *v.upper;
    if (b.lower > b.upper) {
      throw MalformedProblem("variable '" + v.name + "' has lower bound above upper bound");
    }
    lp.bounds.push_back(b);
    kinds.push_back(v.kind);
    names.push_back(v.name);
  }
  std::vector<SenseRow> rows;
  rows.reserve(pft.constraints.size());
  for (const auto& c : pft.constraints) {
    if (c.coeffs.size() != n) {
      throw MalformedProblem("constraint '" + c.name + "' has " + std::to_string(c.coeffs.size()) +
                             " coefficients, expected " + std::to_string(n));
    }
    rows.push_back({c.coeffs, c.sense, c.rhs, c.name});
  }
  StandardRows std_rows = to_standard_form(rows);
  lp.eq_rows = std::move(std_rows.eq_rows);
  lp.ub_rows = std::move(std_rows.ub_rows);
  return MipProblem(std::move(lp), std::move(kinds), std::move(names));
}

}  // namespace pftmip
