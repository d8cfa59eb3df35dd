#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "structobs/io.hpp"
#include "structobs/placement.hpp"
#include "structobs/probe.hpp"
#include "structobs/verify.hpp"

namespace structobs::cli {

// Exit codes: 0 success / true verdict, 1 false verdict / infeasible, 2 usage or input error.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kUsage = 2;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

inline std::string list(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

struct Args {
  std::string format = "human";
  std::string input;
  std::string placement;
  std::string output;
  std::string algorithm = "auto";
  bool avoid_input_sensors = false;
  bool allow_zero_f_columns = false;
  std::size_t max_size = 0;
  std::size_t cap = 12;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

inline int cmd_check(const Args& a, std::ostream& out) {
  const SwitchedSystem sys = parse_system(read_file(a.input));
  const SensorPlacement pl = parse_placement(read_file(a.placement), sys.p);
  const Verdict v = check_structural_observability(sys, pl);
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["observable"] = v.observable;
    j["condition_i"] = v.condition_i;
    j["non_accessible"] = v.non_accessible;
    j["condition_ii"] = v.condition_ii;
    j["grank"] = v.matching_size;
    j["required"] = v.required_size;
    out << j.dump(2) << "\n";
  } else {
    out << "observable: " << (v.observable ? "true" : "false") << "\n";
    out << "condition (i): " << (v.condition_i ? "true" : "false") << "\n";
    if (!v.condition_i) out << "  non-accessible (augmented): " << list(v.non_accessible) << "\n";
    out << "condition (ii): " << (v.condition_ii ? "true" : "false") << " (generic rank "
        << v.matching_size << " of " << v.required_size << ")\n";
  }
  return v.observable ? kOk : kFalse;
}

inline int cmd_place(const Args& a, std::ostream& out) {
  const SwitchedSystem sys = parse_system(read_file(a.input), a.allow_zero_f_columns);
  PlacementOptions opts;
  opts.avoid_input_sensors = a.avoid_input_sensors;
  if (a.algorithm == "general") {
    opts.algorithm = Algorithm::General;
  } else if (a.algorithm == "class1") {
    opts.algorithm = Algorithm::Class1;
  } else if (a.algorithm == "nodal") {
    opts.algorithm = Algorithm::Nodal;
  }
  const SensorPlacement pl = place(sys, opts);
  const std::string doc = write_placement(pl);
  write_file(a.output, doc);
  if (a.format == "json") {
    out << doc;
    return kOk;
  }
  out << "class: " << to_string(classify(sys)) << "\n";
  out << "algorithm: " << pl.algorithm << "\n";
  out << "cardinality: " << pl.cardinality() << "\n";
  out << "J: " << list(pl.J) << "\n";
  out << "J_d: " << list(pl.J_d) << "\n";
  out << "J_x (states): " << list(pl.J_x_states) << "\n";
  for (Provenance p : {Provenance::Jprime, Provenance::Jdoubleprime, Provenance::Jtripleprime,
                       Provenance::ClassSpecific}) {
    std::vector<std::size_t> idx;
    for (const auto& [i, q] : pl.provenance) {
      if (q == p) idx.push_back(i);
    }
    if (!idx.empty()) out << to_string(p) << ": " << list(idx) << "\n";
  }
  for (const auto& w : pl.warnings) out << "warning: " << w << "\n";
  out << "wrote " << a.output << "\n";
  return kOk;
}

inline int cmd_oracle(const Args& a, std::ostream& out) {
  const SwitchedSystem sys = parse_system(read_file(a.input));
  const std::size_t N = sys.n + sys.p;
  const std::size_t k = a.max_size == 0 ? N : a.max_size;
  const OracleResult r = brute_force_min_placement(sys, k, a.cap);
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["feasible"] = r.feasible;
    if (r.feasible) j["min_cardinality"] = r.min_size;
    j["minimal_sets"] = r.minimal_sets;
    out << j.dump(2) << "\n";
  } else if (r.feasible) {
    out << "min cardinality: " << r.min_size << "\n";
    out << "minimal sets: " << r.minimal_sets.size() << "\n";
    for (const auto& s : r.minimal_sets) out << "  " << list(s) << "\n";
  } else {
    out << "infeasible up to cardinality " << std::min(k, N) << "\n";
  }
  return r.feasible ? kOk : kFalse;
}

inline int cmd_probe(const Args& a, std::ostream& out) {
  if (a.trials == 0) throw Error("--trials must be at least 1");
  const SwitchedSystem sys = parse_system(read_file(a.input));
  const SensorPlacement pl = parse_placement(read_file(a.placement), sys.p);
  const ProbeResult r = numeric_rank_probe(sys, pl, a.trials, a.seed, a.tol);
  const bool ok = r.agrees && r.bounded;
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["ranks"] = r.ranks;
    j["max_rank"] = r.max_rank;
    j["structural_grank"] = r.structural_grank;
    j["required"] = r.required_size;
    j["agree"] = ok;
    j["observable"] = r.structural_grank == r.required_size;
    out << j.dump(2) << "\n";
  } else {
    out << "trial ranks:";
    for (std::size_t x : r.ranks) out << " " << x;
    out << "\n";
    out << "max numeric rank: " << r.max_rank << "\n";
    out << "structural grank: " << r.structural_grank << " (n+p = " << r.required_size << ")\n";
    out << "agree: " << (ok ? "true" : "false") << "\n";
    if (r.structural_grank < r.required_size) out << "note: not observable (rank deficient)\n";
  }
  return ok ? kOk : kFalse;
}

inline int cmd_dot(const Args& a, std::ostream& out) {
  const SwitchedSystem sys = parse_system(read_file(a.input));
  std::string text;
  if (!a.placement.empty()) {
    const SensorPlacement pl = parse_placement(read_file(a.placement), sys.p);
    placement_to_outputs(pl, sys.n, sys.p);  // range check
    text = export_dot(sys, &pl);
  } else {
    text = export_dot(sys);
  }
  write_file(a.output, text);
  if (a.format == "human") out << "wrote " << a.output << "\n";
  return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural observability and minimum sensor placement for switched systems",
               "structobs"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--format", a.format, "report format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "verify a placement");
  check->add_option("--input", a.input, "system document")->required();
  check->add_option("--placement", a.placement, "placement document")->required();

  auto* place_cmd = app.add_subcommand("place", "compute a minimum dedicated placement");
  place_cmd->add_option("--input", a.input, "system document")->required();
  place_cmd->add_option("--algorithm", a.algorithm)
      ->check(CLI::IsMember({"auto", "general", "class1", "nodal"}))
      ->capture_default_str();
  place_cmd->add_flag("--avoid-input-sensors", a.avoid_input_sensors);
  place_cmd->add_flag("--allow-zero-f-columns", a.allow_zero_f_columns);
  place_cmd->add_option("--output", a.output, "placement document to write")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force minimum placements");
  oracle->add_option("--input", a.input, "system document")->required();
  oracle->add_option("--max-size", a.max_size, "largest cardinality to try (default n+p)");
  oracle->add_option("--cap", a.cap, "refuse systems with n+p above this")->capture_default_str();

  auto* probe = app.add_subcommand("probe", "numeric rank of random realizations");
  probe->add_option("--input", a.input, "system document")->required();
  probe->add_option("--placement", a.placement, "placement document")->required();
  probe->add_option("--trials", a.trials)->capture_default_str();
  probe->add_option("--seed", a.seed)->capture_default_str();
  probe->add_option("--tol", a.tol, "relative singular value cutoff")->capture_default_str();

  auto* dot = app.add_subcommand("dot", "export the union digraph as DOT");
  dot->add_option("--input", a.input, "system document")->required();
  dot->add_option("--placement", a.placement, "placement document");
  dot->add_option("--output", a.output, "DOT file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(a, out);
    if (*place_cmd) return cmd_place(a, out);
    if (*oracle) return cmd_oracle(a, out);
    if (*probe) return cmd_probe(a, out);
    if (*dot) return cmd_dot(a, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace structobs::cli
