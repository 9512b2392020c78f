#pragma once

// The `pftmip` command line: load inputs, build a model, solve, report.
// Kept header-only so the test suite can drive run() with in-memory streams.

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pftmip/pftmip.hpp"

namespace pftmip::cli {

// sysexits-style codes for failures that are not solver outcomes
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitNoInput = 66;

struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw MissingInput("cannot write '" + path + "'");
  f << text;
}

struct Options {
  bool json = false;
  bool deterministic = false;
  bool color = false;
};

// What a subcommand hands back for printing.
struct Run {
  std::string title;
  MipProblem mip;
  MipOutcome outcome;
  std::vector<std::string> notes;  // model-specific lines (path, totals, ...)
};

inline int exit_code(Status s) { return static_cast<int>(s); }

inline std::string num(double v) { return csv::format_number(v == 0.0 ? 0.0 : v); }

inline std::string status_text(Status s, bool color) {
  std::string t(to_string(s));
  if (!color) return t;
  return (s == Status::Optimal ? "\033[32m" : "\033[31m") + t + "\033[0m";
}

inline void print_json(const Run& r, std::ostream& out) {
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(r.outcome.status));
  if (std::isfinite(r.outcome.objective_value)) j["objective"] = r.outcome.objective_value;
  else j["objective"] = nullptr;
  j["variables"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < r.outcome.x.size(); ++k) {
    if (std::abs(r.outcome.x[k]) > 1e-9) j["variables"].push_back({{"name", r.mip.names()[k]}, {"value", r.outcome.x[k]}});
  }
  j["nodes"] = r.outcome.nodes_explored;
  j["iterations"] = r.outcome.lp_iterations;
  out << j.dump(2) << "\n";
}

inline void print_text(const Run& r, const Options& opt, double wall_ms, std::ostream& out) {
  const MipOutcome& o = r.outcome;
  out << "problem: " << r.title << "\n";
  out << "status: " << status_text(o.status, opt.color) << "\n";
  if (o.optimal()) out << "objective: " << num(o.objective_value) << "\n";
  if (!o.x.empty()) {
    out << "nonzero variables:\n";
    for (std::size_t k = 0; k < o.x.size(); ++k) {
      if (std::abs(o.x[k]) > 1e-9) out << "  " << r.mip.names()[k] << " = " << num(o.x[k]) << "\n";
    }
  }
  for (const auto& line : r.notes) out << line << "\n";
  const LinearProgram& lp = r.mip.base();
  if (!lp.eq_rows.empty() || !lp.ub_rows.empty()) {
    out << "constraints:\n";
    auto echo = [&](const Row& row, const char* op, std::size_t k) {
      out << "  " << (row.name.empty() ? "row" + std::to_string(k + 1) : row.name);
      if (!o.x.empty()) out << ": " << num(dot(row.coeffs, o.x));
      out << " " << op << " " << num(row.rhs) << "\n";
    };
    for (std::size_t k = 0; k < lp.eq_rows.size(); ++k) echo(lp.eq_rows[k], "=", k);
    for (std::size_t k = 0; k < lp.ub_rows.size(); ++k) echo(lp.ub_rows[k], "<=", lp.eq_rows.size() + k);
  }
  out << "nodes: " << o.nodes_explored << "\n";
  out << "iterations: " << o.lp_iterations << "\n";
  if (!opt.deterministic) out << "wall time: " << num(std::round(wall_ms * 1000.0) / 1000.0) << " ms\n";
}

inline int report(const Run& r, const Options& opt, double wall_ms, std::ostream& out) {
  if (opt.json) print_json(r, out);
  else print_text(r, opt, wall_ms, out);
  return exit_code(r.outcome.status);
}

// id -> value lookups from `key,value...` tables, ordered like `ids`.
inline std::vector<std::vector<double>> keyed_values(const std::string& path, std::size_t width,
                                                     const std::vector<std::string>& ids, const std::string& what) {
  const auto rows = parse_keyed_table(read_file(path), width);
  std::map<std::string, std::vector<double>> by_key;
  for (const auto& r : rows) by_key[r.key] = r.values;
  std::vector<std::vector<double>> out;
  for (const auto& id : ids) {
    const auto it = by_key.find(id);
    if (it == by_key.end()) throw InputError(what + " table has no entry for '" + id + "'");
    out.push_back(it->second);
  }
  if (by_key.size() != ids.size()) throw InputError(what + " table lists ids that are not in the model");
  return out;
}

inline std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t c) {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.at(c));
  return v;
}

// `path,flow` rows with dash-separated node ids, e.g. `1-2-5-7,4`.
inline PathSet read_paths(const std::string& path) {
  const auto rows = parse_keyed_table(read_file(path), 1);
  PathSet ps;
  for (const auto& r : rows) {
    std::vector<std::string> nodes;
    std::stringstream ss(r.key);
    std::string id;
    while (std::getline(ss, id, '-')) nodes.push_back(id);
    if (nodes.size() < 2) throw InputError("path '" + r.key + "' needs at least two nodes");
    ps.paths.push_back(nodes);
    ps.flow.push_back(r.values[0]);
  }
  return ps;
}

inline std::string path_text(const std::vector<std::string>& nodes) {
  std::string s;
  for (const auto& n : nodes) s += (s.empty() ? "" : " -> ") + n;
  return s;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false) {
  CLI::App app{"Mixed-integer models from problem formulation tables and spatial inputs", "pftmip"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  opt.color = color;
  app.add_flag("--json", opt.json, "Print a JSON report instead of text");
  app.add_flag("--deterministic", opt.deterministic, "Omit the wall-time line");

  std::string pft_path, net_path, gal_path, dist_path, cost_path, demand_path, capacity_path, sites_path,
      paths_path, costs_path, out_path, source, sink;
  std::size_t placements = 0, max_colors = 4, open = 0, demand_col = 1, candidate_col = 0, dist_col = 2;
  std::optional<double> sink_cap;
  std::vector<std::string> force_arcs, candidates;
  bool design = false;

  auto* solve = app.add_subcommand("solve", "Solve a PFT file");
  solve->add_option("--pft", pft_path, "PFT v1 CSV")->required();

  auto* audit = app.add_subcommand("audit", "Report structural findings in a PFT file");
  audit->add_option("--pft", pft_path, "PFT v1 CSV")->required();

  auto add_net = [&](CLI::App* sub) {
    sub->add_option("--net", net_path, "Network CSV (tail,head,weight,capacity)")->required();
    sub->add_option("--source", source, "Start node")->required();
    sub->add_option("--sink", sink, "Terminal node")->required();
  };
  auto* sp = app.add_subcommand("shortest-path", "Shortest s-t path");
  add_net(sp);

  auto* tour = app.add_subcommand("tour", "Minimum-cost tour (MTZ)");
  tour->add_option("--dist", dist_path, "Linear distance CSV (from,to,distance)")->required();
  tour->add_option("--force-arc", force_arcs, "Require arc i,j (repeatable)")->take_all()->allow_extra_args(false);

  auto* cover = app.add_subcommand("cover", "Area set covering");
  cover->add_option("--gal", gal_path, "Contiguity weights (.gal)")->required();
  cover->add_option("--costs", costs_path, "area,cost CSV (default cost 1)");
  cover->add_option("--out", out_path, "Write selected areas as CSV");

  auto* fc = app.add_subcommand("flow-capture", "Flow capturing placement");
  add_net(fc);
  fc->add_option("--placements", placements, "Number of placements p")->required();
  fc->add_option("--paths", paths_path, "path,flow CSV overriding enumerated paths");
  fc->add_option("--candidates", candidates, "Candidate nodes (default: all but source and sink)")->delimiter(',');

  auto* color_cmd = app.add_subcommand("color", "Fewest colors for a contiguity map");
  color_cmd->add_option("--gal", gal_path, "Contiguity weights (.gal)")->required();
  color_cmd->add_option("--max-colors", max_colors, "Largest color count to try")->check(CLI::PositiveNumber);
  color_cmd->add_option("--out", out_path, "Write area,color CSV");

  auto* service = app.add_subcommand("service", "Service coverage (p-median)");
  service->add_option("--dist", dist_path, "Linear distance CSV")->required();
  service->add_option("--open", open, "Number of servers p")->required();
  service->add_option("--demand-col", demand_col, "0-based demand id column");
  service->add_option("--candidate-col", candidate_col, "0-based candidate id column");
  service->add_option("--dist-col", dist_col, "0-based distance column");
  service->add_option("--out", out_path, "Write demand,server CSV");

  auto* transport = app.add_subcommand("transport", "Spatial distribution");
  transport->add_option("--cost", cost_path, "supplier,store,cost CSV")->required();
  transport->add_option("--demand", demand_path, "store,units CSV")->required();
  auto* cap_opt = transport->add_option("--capacity", capacity_path, "supplier,capacity CSV");
  auto* design_opt = transport->add_flag("--design-capacity", design, "Size suppliers to total demand");
  cap_opt->excludes(design_opt);

  auto* maxflow = app.add_subcommand("maxflow", "Maximum s-t flow");
  add_net(maxflow);
  maxflow->add_option("--sink-cap", sink_cap, "Cap on total flow into the sink");

  auto* facility = app.add_subcommand("facility", "Capacitated warehouse location");
  facility->add_option("--cost", cost_path, "facility,store,unit cost CSV")->required();
  facility->add_option("--demand", demand_path, "store,units CSV")->required();
  facility->add_option("--sites", sites_path, "facility,fixed_cost,capacity CSV")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (transport->parsed() && !design && capacity_path.empty()) {
    err << "error: transport needs --capacity or --design-capacity\n";
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count(); };

  try {
    Run r;
    if (solve->parsed()) {
      const Pft pft = parse_pft(read_file(pft_path));
      r.title = pft.title;
      r.mip = compile_pft(pft);
      r.outcome = solve_mip(r.mip);
    } else if (audit->parsed()) {
      const Pft pft = parse_pft(read_file(pft_path));
      const AuditReport rep = audit_pft(pft);
      if (opt.json) {
        nlohmann::ordered_json j;
        j["findings"] = nlohmann::ordered_json::array();
        for (const auto& f : rep.findings) {
          j["findings"].push_back({{"kind", std::string(to_string(f.kind))}, {"subject", f.subject}, {"message", f.message}});
        }
        out << j.dump(2) << "\n";
      } else {
        out << "problem: " << pft.title << "\n";
        out << "findings: " << rep.findings.size() << "\n";
        for (const auto& f : rep.findings) out << "  " << to_string(f.kind) << " " << f.subject << ": " << f.message << "\n";
      }
      return 0;
    } else if (sp->parsed()) {
      const Network net = parse_network_csv(read_file(net_path));
      r.title = "shortest path " + source + " -> " + sink;
      r.mip = build_shortest_path(net, source, sink);
      r.outcome = solve_mip(r.mip);
      if (r.outcome.optimal()) {
        std::vector<std::string> nodes{source};
        while (nodes.back() != sink && nodes.size() <= net.node_ids().size()) {
          for (std::size_t k = 0; k < net.arcs().size(); ++k) {
            if (net.arcs()[k].tail == nodes.back() && r.outcome.x[k] > 0.5) {
              nodes.push_back(net.arcs()[k].head);
              break;
            }
          }
        }
        r.notes.push_back("path: " + path_text(nodes));
      }
    } else if (tour->parsed()) {
      const DistanceMatrix d = parse_distance_matrix(read_file(dist_path), 0, 1, 2);
      r.title = "tour over " + std::to_string(d.rows()) + " cities";
      r.mip = build_tour(d);
      for (const auto& spec : force_arcs) {
        const auto comma = spec.find(',');
        if (comma == std::string::npos) {
          err << "error: --force-arc expects i,j, got '" << spec << "'\n";
          return kExitUsage;
        }
        r.mip = force_arc(r.mip, spec.substr(0, comma), spec.substr(comma + 1));
        r.notes.push_back("forced arc: " + spec);
      }
      r.outcome = solve_mip(r.mip);
      if (r.outcome.optimal()) {
        std::vector<std::string> order{d.from_ids[0]};
        std::size_t at = 0;
        for (std::size_t step = 0; step < d.rows(); ++step) {
          for (std::size_t j = 0; j < d.rows(); ++j) {
            const auto idx = r.mip.index_of(pair_name("X", d.from_ids[at], d.to_ids[j]));
            if (j != at && idx && r.outcome.x[*idx] > 0.5) {
              at = j;
              break;
            }
          }
          order.push_back(d.from_ids[at]);
          if (at == 0) break;
        }
        r.notes.push_back("tour: " + path_text(order));
      }
    } else if (cover->parsed()) {
      const auto pairs = weights_to_pairs(parse_gal(read_file(gal_path)));
      for (const auto& w : pairs.warnings) err << "warning: " << w << "\n";
      const auto& ids = pairs.adjacency.area_ids();
      std::vector<double> cost(ids.size(), 1.0);
      if (!costs_path.empty()) cost = column(keyed_values(costs_path, 1, ids, "cost"), 0);
      r.title = "set cover over " + std::to_string(ids.size()) + " areas";
      r.mip = build_set_cover(pairs.adjacency, cost);
      r.outcome = solve_mip(r.mip);
      if (r.outcome.optimal() && !out_path.empty()) {
        Assignment a;
        for (std::size_t i = 0; i < ids.size(); ++i) a.emplace_back(ids[i], r.outcome.x[i] > 0.5 ? "1" : "0");
        write_file(out_path, write_assignment_csv(a, "Area", "Placed"));
      }
    } else if (fc->parsed()) {
      const Network net = parse_network_csv(read_file(net_path));
      const PathSet ps = paths_path.empty() ? enumerate_st_paths(net, source, sink) : read_paths(paths_path);
      if (candidates.empty()) {
        for (const auto& id : net.node_ids())
          if (id != source && id != sink) candidates.push_back(id);
      }
      r.title = "flow capture with p = " + std::to_string(placements) + " over " + std::to_string(ps.size()) + " paths";
      r.mip = build_flow_capture(ps, candidates, placements);
      r.outcome = solve_mip(r.mip);
    } else if (color_cmd->parsed()) {
      const auto pairs = weights_to_pairs(parse_gal(read_file(gal_path)));
      for (const auto& w : pairs.warnings) err << "warning: " << w << "\n";
      const ColoringResult res = min_colors(pairs.adjacency, max_colors);
      r.mip = build_coloring(pairs.adjacency, res.colors);
      r.outcome = res.outcome;
      if (res.found) {
        r.title = "coloring: " + std::to_string(res.colors) + " colors suffice";
        r.notes.push_back("colors: " + std::to_string(res.colors));
        if (!out_path.empty()) {
          Assignment a;
          for (std::size_t i = 0; i < res.color.size(); ++i)
            a.emplace_back(pairs.adjacency.area_ids()[i], std::to_string(res.color[i]));
          write_file(out_path, write_assignment_csv(a, "Area", "Color"));
        }
      } else {
        r.title = "coloring: no proper coloring with at most " + std::to_string(max_colors) + " colors";
      }
    } else if (service->parsed()) {
      const DistanceMatrix d = parse_distance_matrix(read_file(dist_path), demand_col, candidate_col, dist_col);
      r.title = "service coverage: open " + std::to_string(open) + " of " + std::to_string(d.cols());
      r.mip = build_service_coverage(d, open);
      r.outcome = solve_mip(r.mip);
      if (r.outcome.optimal() && !out_path.empty()) {
        Assignment a;
        const auto server = decode_service(d, r.outcome.x);
        for (std::size_t i = 0; i < d.rows(); ++i) a.emplace_back(d.from_ids[i], d.to_ids[server[i]]);
        write_file(out_path, write_assignment_csv(a, "Demand", "Server"));
      }
    } else if (transport->parsed()) {
      const DistanceMatrix c = parse_distance_matrix(read_file(cost_path), 0, 1, 2);
      const auto demand = column(keyed_values(demand_path, 1, c.to_ids, "demand"), 0);
      SupplyMode mode = DesignCapacity{};
      if (!design) mode = FixedCapacity{column(keyed_values(capacity_path, 1, c.from_ids, "capacity"), 0)};
      r.title = design ? "spatial distribution (design capacity)" : "spatial distribution";
      r.mip = build_transportation(c, demand, mode);
      r.outcome = solve_mip(r.mip);
      if (r.outcome.optimal()) {
        const auto shipped = shipped_totals(c.rows(), c.cols(), r.outcome.x);
        for (std::size_t i = 0; i < c.rows(); ++i) r.notes.push_back("shipped from " + c.from_ids[i] + ": " + num(shipped[i]));
      }
    } else if (maxflow->parsed()) {
      const Network net = parse_network_csv(read_file(net_path));
      r.title = "maximum flow " + source + " -> " + sink;
      r.mip = build_max_flow(net, source, sink, sink_cap);
      r.outcome = solve_mip(r.mip);
    } else if (facility->parsed()) {
      const DistanceMatrix c = parse_distance_matrix(read_file(cost_path), 0, 1, 2);
      const auto demand = column(keyed_values(demand_path, 1, c.to_ids, "demand"), 0);
      const auto sites = keyed_values(sites_path, 2, c.from_ids, "sites");
      r.title = "warehouse location";
      r.mip = build_facility_location(c, column(sites, 0), demand, column(sites, 1));
      r.outcome = solve_mip(r.mip);
      if (r.outcome.optimal()) {
        const auto shipped = shipped_totals(c.rows(), c.cols(), r.outcome.x);
        for (std::size_t i = 0; i < c.rows(); ++i) r.notes.push_back("shipped from " + c.from_ids[i] + ": " + num(shipped[i]));
      }
    }
    return report(r, opt, elapsed(), out);
  } catch (const MissingInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {  // MalformedProblem, InputError
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace pftmip::cli
