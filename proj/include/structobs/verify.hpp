#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "structobs/error.hpp"
#include "structobs/graph.hpp"
#include "structobs/matching.hpp"
#include "structobs/system.hpp"

namespace structobs {

struct Verdict {
  bool observable = false;
  bool condition_i = false;
  std::vector<std::size_t> non_accessible;  // augmented indices with no path to a sensor
  bool condition_ii = false;
  std::size_t matching_size = 0;
  std::size_t required_size = 0;  // n + p
  std::vector<std::string> diagnostics;
};

/// Precomputes the union digraph and the stacked mode patterns so many
/// candidate sensor sets can be checked against the same system.
class ObservabilityChecker {
 public:
  explicit ObservabilityChecker(const SwitchedSystem& sys)
      : n_(sys.n), p_(sys.p), aug_(augment(checked(sys))), graph_(build_union_digraph(aug_)),
        stacked_(vstack(aug_.aug_modes)) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return p_; }
  const AugmentedSystem& augmented() const noexcept { return aug_; }

  Verdict check(std::span<const std::size_t> J) const {
    const std::size_t N = n_ + p_;
    std::vector<std::size_t> sensors(J.begin(), J.end());
    std::sort(sensors.begin(), sensors.end());
    sensors.erase(std::unique(sensors.begin(), sensors.end()), sensors.end());
    for (std::size_t v : sensors) {
      if (v < 1 || v > N) {
        throw ValidationError(ValidationKind::OutOfRange,
                              "sensor index " + std::to_string(v) + " outside 1.." +
                                  std::to_string(N));
      }
    }

    Verdict v;
    v.required_size = N;
    const Accessibility acc = all_vertices_reach_outputs(graph_, sensors);
    v.condition_i = acc.all_reach;
    v.non_accessible = acc.non_accessible;

    std::vector<Entry> e(stacked_.entries().begin(), stacked_.entries().end());
    for (std::size_t i = 0; i < sensors.size(); ++i) {
      e.push_back({stacked_.rows() + i + 1, sensors[i]});
    }
    const StructuralMatrix full(stacked_.rows() + sensors.size(), N, std::move(e));
    v.matching_size = grank(full);
    v.condition_ii = v.matching_size == N;
    v.observable = v.condition_i && v.condition_ii;

    if (!v.condition_i) {
      v.diagnostics.push_back(std::to_string(v.non_accessible.size()) +
                              " variable(s) have no path to a sensor");
    }
    if (!v.condition_ii) {
      v.diagnostics.push_back("generic rank " + std::to_string(v.matching_size) + " < " +
                              std::to_string(N));
    }
    return v;
  }

 private:
  static const SwitchedSystem& checked(const SwitchedSystem& sys) {
    validate(sys, true);
    return sys;
  }

  std::size_t n_;
  std::size_t p_;
  AugmentedSystem aug_;
  Digraph graph_;
  StructuralMatrix stacked_;
};

inline Verdict check_structural_observability(const SwitchedSystem& sys,
                                              const SensorPlacement& pl) {
  return ObservabilityChecker(sys).check(pl.J);
}

struct OracleResult {
  bool feasible = false;
  std::size_t min_size = 0;
  std::vector<std::vector<std::size_t>> minimal_sets;  // lexicographic order
};

/// Exhaustive search by increasing cardinality; stops at the first size with
/// a passing subset and returns all passing subsets of that size.
inline OracleResult brute_force_min_placement(const SwitchedSystem& sys,
                                              std::size_t max_cardinality,
                                              std::size_t cap = 12) {
  const std::size_t N = sys.n + sys.p;
  if (N > cap) {
    throw CapExceeded("n+p = " + std::to_string(N) + " exceeds the oracle cap of " +
                      std::to_string(cap));
  }
  max_cardinality = std::min(max_cardinality, N);
  const ObservabilityChecker checker(sys);
  OracleResult res;
  for (std::size_t k = 0; k <= max_cardinality; ++k) {
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), std::size_t{1});
    for (;;) {
      if (checker.check(comb).observable) res.minimal_sets.push_back(comb);
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == N - k + i) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (!res.minimal_sets.empty()) {
      res.feasible = true;
      res.min_size = k;
      return res;
    }
  }
  return res;
}

inline OracleResult brute_force_min_placement(const SwitchedSystem& sys) {
  return brute_force_min_placement(sys, sys.n + sys.p);
}

}  // namespace structobs
