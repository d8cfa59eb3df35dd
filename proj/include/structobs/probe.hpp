#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "structobs/error.hpp"
#include "structobs/matching.hpp"
#include "structobs/system.hpp"

namespace structobs {

struct ProbeResult {
  std::vector<std::size_t> ranks;  // one per trial
  std::size_t max_rank = 0;
  std::size_t structural_grank = 0;
  std::size_t required_size = 0;  // n + p
  bool agrees = false;            // max_rank == structural_grank
  bool bounded = true;            // no trial exceeded the structural grank
};

inline std::size_t numeric_rank(const Eigen::MatrixXd& M, double tol) {
  if (M.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXd>(M).singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = tol * s(0);
  return static_cast<std::size_t>((s.array() > cut).count());
}

/// Fills every star of [A'_1; ...; A'_m; C'] with an independent draw from
/// [-1, 1] (magnitudes below 0.05 are redrawn) and compares the numeric rank
/// with the generic rank of the pattern.
inline ProbeResult numeric_rank_probe(const SwitchedSystem& sys, const SensorPlacement& pl,
                                      std::size_t trials, std::uint64_t seed,
                                      double tolerance = 1e-9) {
  if (trials == 0) throw Error("probe needs at least one trial");
  validate(sys, true);
  const std::size_t N = sys.n + sys.p;
  const AugmentedSystem aug = augment(sys);
  std::vector<StructuralMatrix> blocks = aug.aug_modes;
  blocks.push_back(placement_to_outputs(pl, sys.n, sys.p).combined(sys.n, sys.p));
  const StructuralMatrix stacked = vstack(blocks);

  ProbeResult res;
  res.required_size = N;
  res.structural_grank = grank(stacked);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto draw = [&] {
    for (;;) {
      const double v = dist(rng);
      if (std::abs(v) >= 0.05) return v;
    }
  };
  for (std::size_t t = 0; t < trials; ++t) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(stacked.rows()),
                                              static_cast<Eigen::Index>(N));
    for (const Entry& e : stacked.entries()) {
      M(static_cast<Eigen::Index>(e.row - 1), static_cast<Eigen::Index>(e.col - 1)) = draw();
    }
    const std::size_t r = numeric_rank(M, tolerance);
    res.ranks.push_back(r);
    res.max_rank = std::max(res.max_rank, r);
    if (r > res.structural_grank) res.bounded = false;
  }
  res.agrees = res.max_rank == res.structural_grank;
  return res;
}

}  // namespace structobs
