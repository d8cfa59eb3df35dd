#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "structobs/system.hpp"

namespace structobs::testing {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double prob) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<Entry> random_entries(Rng& rng, std::size_t rows, std::size_t cols,
                                         double density) {
  std::vector<Entry> e;
  for (std::size_t i = 1; i <= rows; ++i) {
    for (std::size_t j = 1; j <= cols; ++j) {
      if (coin(rng, density)) e.push_back({i, j});
    }
  }
  return e;
}

// Sparse variant for large sizes: about density * rows * cols entries.
inline std::vector<Entry> sparse_entries(Rng& rng, std::size_t rows, std::size_t cols,
                                         double density) {
  std::vector<Entry> e;
  if (rows == 0 || cols == 0) return e;
  const auto count = static_cast<std::size_t>(density * static_cast<double>(rows * cols));
  for (std::size_t i = 0; i < count; ++i) e.push_back({uniform(rng, 1, rows), uniform(rng, 1, cols)});
  return e;
}

// Gives every empty input column of the F union one random entry.
inline void cover_inputs(Rng& rng, SwitchedSystem& sys) {
  std::vector<bool> used(sys.p + 1, false);
  for (const Mode& mode : sys.modes) {
    for (const Entry& e : mode.F.entries()) used[e.col] = true;
  }
  for (std::size_t j = 1; j <= sys.p; ++j) {
    if (used[j]) continue;
    Mode& mode = sys.modes[uniform(rng, 0, sys.m() - 1)];
    std::vector<Entry> e(mode.F.entries().begin(), mode.F.entries().end());
    e.push_back({uniform(rng, 1, sys.n), j});
    mode.F = StructuralMatrix(sys.n, sys.p, std::move(e));
  }
}

// Puts the diagonal entry i into at least one mode's matrix (pick selects A or Q).
template <class Pick>
void add_union_diagonal(Rng& rng, SwitchedSystem& sys, std::size_t size, Pick pick) {
  for (std::size_t i = 1; i <= size; ++i) {
    const std::size_t forced = uniform(rng, 0, sys.m() - 1);
    for (std::size_t k = 0; k < sys.m(); ++k) {
      if (k != forced && !coin(rng, 0.5)) continue;
      StructuralMatrix& M = pick(sys.modes[k]);
      std::vector<Entry> e(M.entries().begin(), M.entries().end());
      e.push_back({i, i});
      M = StructuralMatrix(M.rows(), M.cols(), std::move(e));
    }
  }
}

inline SwitchedSystem random_general(Rng& rng, std::size_t n, std::size_t p, std::size_t m,
                                     double density) {
  SwitchedSystem sys{n, p, {}};
  for (std::size_t k = 0; k < m; ++k) {
    sys.modes.push_back({StructuralMatrix(n, n, random_entries(rng, n, n, density)),
                         StructuralMatrix(n, p, random_entries(rng, n, p, density)),
                         StructuralMatrix(p, p, random_entries(rng, p, p, density))});
  }
  cover_inputs(rng, sys);
  return sys;
}

inline SwitchedSystem random_class1(Rng& rng, std::size_t n, std::size_t p, std::size_t m,
                                    double density) {
  SwitchedSystem sys = random_general(rng, n, p, m, density);
  for (Mode& mode : sys.modes) mode.Q = StructuralMatrix(p, p);
  add_union_diagonal(rng, sys, n, [](Mode& md) -> StructuralMatrix& { return md.A; });
  return sys;
}

inline SwitchedSystem random_class2(Rng& rng, std::size_t n, std::size_t p, std::size_t m,
                                    double density) {
  SwitchedSystem sys = random_general(rng, n, p, m, density);
  add_union_diagonal(rng, sys, n, [](Mode& md) -> StructuralMatrix& { return md.A; });
  add_union_diagonal(rng, sys, p, [](Mode& md) -> StructuralMatrix& { return md.Q; });
  return sys;
}

inline SwitchedSystem random_large(Rng& rng, std::size_t n, std::size_t p, std::size_t m,
                                   double density) {
  SwitchedSystem sys{n, p, {}};
  for (std::size_t k = 0; k < m; ++k) {
    sys.modes.push_back({StructuralMatrix(n, n, sparse_entries(rng, n, n, density)),
                         StructuralMatrix(n, p, sparse_entries(rng, n, p, density)),
                         StructuralMatrix(p, p, sparse_entries(rng, p, p, density))});
  }
  cover_inputs(rng, sys);
  return sys;
}

// Small instance for oracle comparisons: n + p <= max_size, n >= 1.
struct SmallShape {
  std::size_t n;
  std::size_t p;
  std::size_t m;
  double density;
};

inline SmallShape small_shape(Rng& rng, std::size_t max_size = 8, std::size_t max_modes = 3) {
  static constexpr double densities[] = {0.1, 0.25, 0.5};
  const std::size_t total = uniform(rng, 1, max_size);
  const std::size_t p = uniform(rng, 0, total - 1);
  return {total - p, p, uniform(rng, 1, max_modes), densities[uniform(rng, 0, 2)]};
}

inline SwitchedSystem permute_modes(const SwitchedSystem& sys, const std::vector<std::size_t>& order) {
  SwitchedSystem out{sys.n, sys.p, {}};
  for (std::size_t k : order) out.modes.push_back(sys.modes[k]);
  return out;
}

}  // namespace structobs::testing
