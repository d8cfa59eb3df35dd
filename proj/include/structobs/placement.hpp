#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structobs/error.hpp"
#include "structobs/flow.hpp"
#include "structobs/graph.hpp"
#include "structobs/matching.hpp"
#include "structobs/system.hpp"
#include "structobs/verify.hpp"

namespace structobs {

enum class SystemClass { General, Class1, Class2 };

inline std::string_view to_string(SystemClass c) {
  switch (c) {
    case SystemClass::General:
      return "general";
    case SystemClass::Class1:
      return "class1";
    case SystemClass::Class2:
      return "class2";
  }
  return "unknown";
}

enum class Algorithm { Auto, General, Class1, Nodal };

struct PlacementOptions {
  bool avoid_input_sensors = false;
  Algorithm algorithm = Algorithm::Auto;
};

namespace detail {

// Every diagonal position is a star in at least one mode.
template <class Pick>
bool union_diagonal_full(const SwitchedSystem& sys, std::size_t size, Pick pick) {
  for (std::size_t i = 1; i <= size; ++i) {
    bool found = false;
    for (const Mode& mode : sys.modes) {
      if (pick(mode).contains(i, i)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

struct TargetData {
  AugmentedSystem aug;
  SccDecomposition scc;
  std::vector<std::vector<std::size_t>> targets;
};

inline TargetData target_data(const SwitchedSystem& sys) {
  validate(sys, true);
  TargetData t;
  t.aug = augment(sys);
  t.scc = scc_decompose(build_union_digraph(t.aug));
  t.targets = target_sccs(t.scc);
  return t;
}

// Smallest state of a target-SCC, else its smallest input (with a warning).
inline std::size_t pick_representative(const std::vector<std::size_t>& members, std::size_t p,
                                       std::vector<std::string>& warnings) {
  for (std::size_t v : members) {
    if (v > p) return v;
  }
  warnings.push_back("target-SCC {" + std::to_string(members.front()) +
                     ",...} holds only inputs; measuring input d" +
                     std::to_string(members.front()));
  return members.front();
}

}  // namespace detail

/// Q_k = 0 in every mode and every state has a self-loop in some mode.
inline bool is_class1(const SwitchedSystem& sys) {
  for (const Mode& mode : sys.modes) {
    if (!mode.Q.empty()) return false;
  }
  return detail::union_diagonal_full(sys, sys.n, [](const Mode& m) -> const auto& { return m.A; });
}

/// Every state and every input has a self-loop in some mode.
inline bool is_class2(const SwitchedSystem& sys) {
  return detail::union_diagonal_full(sys, sys.n, [](const Mode& m) -> const auto& { return m.A; }) &&
         detail::union_diagonal_full(sys, sys.p, [](const Mode& m) -> const auto& { return m.Q; });
}

/// With p = 0 both class conditions coincide; Class2 is reported.
inline SystemClass classify(const SwitchedSystem& sys) {
  if (is_class2(sys)) return SystemClass::Class2;
  if (is_class1(sys)) return SystemClass::Class1;
  return SystemClass::General;
}

/// Minimum-weight maximum matching of [A'_1; ...; A'_m; T] where T has one row
/// per target-SCC. Columns matched to T rows, unmatched columns, and one state
/// per still-uncovered target-SCC form the placement.
inline SensorPlacement place_general(const SwitchedSystem& sys, const PlacementOptions& opts = {}) {
  const auto td = detail::target_data(sys);
  const std::size_t p = sys.p;
  const std::size_t N = sys.n + p;
  const std::size_t mode_rows = sys.m() * N;
  const auto shift = static_cast<std::int64_t>(N + 1);

  std::vector<Entry> edges;
  std::vector<std::int64_t> weights;
  auto add = [&](std::size_t row, std::size_t col, bool t_row) {
    edges.push_back({row, col});
    std::int64_t w = t_row ? shift : 0;
    if (opts.avoid_input_sensors && col > p) w += 1;
    weights.push_back(w);
  };
  for (std::size_t k = 0; k < sys.m(); ++k) {
    for (const Entry& e : td.aug.aug_modes[k].entries()) add(k * N + e.row, e.col, false);
  }
  for (std::size_t i = 0; i < td.targets.size(); ++i) {
    for (std::size_t v : td.targets[i]) add(mode_rows + i + 1, v, true);
  }
  const Matching mm =
      min_weight_max_matching(Bipartite(mode_rows + td.targets.size(), N, edges, weights));

  std::vector<bool> col_matched(N + 1, false);
  std::vector<bool> covered(td.targets.size(), false);
  std::vector<std::pair<std::size_t, Provenance>> sensors;
  for (const Entry& e : mm.pairs) {
    col_matched[e.col] = true;
    if (e.row > mode_rows) {
      sensors.emplace_back(e.col, Provenance::Jprime);
      covered[e.row - mode_rows - 1] = true;
    }
  }
  for (std::size_t v = 1; v <= N; ++v) {
    if (!col_matched[v]) sensors.emplace_back(v, Provenance::Jdoubleprime);
  }
  // A target-SCC that already holds a sensor needs no further one.
  std::vector<std::size_t> target_ordinal(td.scc.component_count(), 0);
  for (std::size_t i = 0, c = 0; c < td.scc.component_count(); ++c) {
    if (td.scc.is_target[c]) target_ordinal[c] = ++i;
  }
  for (const auto& [v, prov] : sensors) {
    const std::size_t ord = target_ordinal[td.scc.component_of[v - 1]];
    if (ord != 0) covered[ord - 1] = true;
  }

  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < td.targets.size(); ++i) {
    if (covered[i]) continue;
    sensors.emplace_back(detail::pick_representative(td.targets[i], p, warnings),
                         Provenance::Jtripleprime);
  }
  SensorPlacement pl = make_placement(sensors, p, "general");
  pl.warnings = std::move(warnings);
  return pl;
}

/// Disjoint paths from the inputs into the target-SCCs. The last vertex before
/// each ancillary node is measured, inputs left on their direct arc are
/// measured, and every target-SCC not reached gets one state sensor.
inline SensorPlacement place_class1(const SwitchedSystem& sys) {
  if (!is_class1(sys)) {
    validate(sys, true);
    class1_base_modes(sys);  // throws with the specific reason
    throw WrongClass("system is not class 1");
  }
  const auto td = detail::target_data(sys);
  const std::size_t p = sys.p;
  const FlowNetwork net = build_class1_network(sys, td.targets);
  const DisjointPaths paths = max_flow_disjoint_paths(net);

  std::vector<bool> covered(td.targets.size(), false);
  std::vector<std::pair<std::size_t, Provenance>> sensors;
  for (const FlowPath& path : paths.paths) {
    if (path.end == PathEnd::Ancillary) {
      sensors.emplace_back(path.vertices.back(), Provenance::Jprime);
      covered[path.ancillary - 1] = true;
    } else if (path.end == PathEnd::Direct) {
      sensors.emplace_back(path.vertices.front(), Provenance::Jprime);
    }
  }
  for (std::size_t i = 0; i < td.targets.size(); ++i) {
    for (const auto& [v, prov] : sensors) {
      if (std::binary_search(td.targets[i].begin(), td.targets[i].end(), v)) covered[i] = true;
    }
  }
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < td.targets.size(); ++i) {
    if (covered[i]) continue;
    sensors.emplace_back(detail::pick_representative(td.targets[i], p, warnings),
                         Provenance::Jdoubleprime);
  }
  SensorPlacement pl = make_placement(sensors, p, "class1");
  pl.warnings = std::move(warnings);
  return pl;
}

/// One sensor per target-SCC.
inline SensorPlacement place_nodal(const SwitchedSystem& sys) {
  if (!is_class2(sys)) {
    throw WrongClass("nodal placement needs a self-loop on every state and input");
  }
  const auto td = detail::target_data(sys);
  std::vector<std::pair<std::size_t, Provenance>> sensors;
  std::vector<std::string> warnings;
  for (const auto& members : td.targets) {
    sensors.emplace_back(detail::pick_representative(members, sys.p, warnings),
                         Provenance::ClassSpecific);
  }
  SensorPlacement pl = make_placement(sensors, sys.p, "nodal");
  pl.warnings = std::move(warnings);
  return pl;
}

/// Dispatches by class (or as forced) and re-checks the result.
inline SensorPlacement place(const SwitchedSystem& sys, const PlacementOptions& opts = {}) {
  Algorithm algo = opts.algorithm;
  if (algo == Algorithm::Auto) {
    switch (classify(sys)) {
      case SystemClass::Class1:
        algo = Algorithm::Class1;
        break;
      case SystemClass::Class2:
        algo = Algorithm::Nodal;
        break;
      case SystemClass::General:
        algo = Algorithm::General;
        break;
    }
  }
  SensorPlacement pl;
  switch (algo) {
    case Algorithm::Class1:
      pl = place_class1(sys);
      break;
    case Algorithm::Nodal:
      pl = place_nodal(sys);
      break;
    default:
      pl = place_general(sys, opts);
      break;
  }
  const Verdict v = check_structural_observability(sys, pl);
  if (!v.observable) {
    throw InternalVerificationFailure(pl.algorithm + " placement failed the observability check");
  }
  return pl;
}

}  // namespace structobs
