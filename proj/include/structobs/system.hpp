#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structobs/error.hpp"
#include "structobs/structural_matrix.hpp"

namespace structobs {

/// One LTI subsystem: x' = A x + F d, d' = Q d.
struct Mode {
  StructuralMatrix A;  // n x n
  StructuralMatrix F;  // n x p
  StructuralMatrix Q;  // p x p

  friend bool operator==(const Mode&, const Mode&) = default;
};

struct SwitchedSystem {
  std::size_t n = 0;  // states
  std::size_t p = 0;  // unknown inputs
  std::vector<Mode> modes;

  std::size_t m() const noexcept { return modes.size(); }
  std::size_t augmented_size() const noexcept { return n + p; }

  friend bool operator==(const SwitchedSystem&, const SwitchedSystem&) = default;
};

/// Entry-wise union of equally sized patterns.
inline StructuralMatrix union_of(std::span<const StructuralMatrix> matrices) {
  if (matrices.empty()) {
    throw ValidationError(ValidationKind::NonPositiveDimension, "union_of: no operands");
  }
  const std::size_t rows = matrices.front().rows();
  const std::size_t cols = matrices.front().cols();
  std::vector<Entry> all;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const auto& mat = matrices[k];
    if (mat.rows() != rows || mat.cols() != cols) {
      throw ValidationError(ValidationKind::DimensionMismatch,
                            "union_of: operand " + std::to_string(k + 1) + " is " +
                                std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                                ", expected " + std::to_string(rows) + "x" + std::to_string(cols),
                            k + 1);
    }
    all.insert(all.end(), mat.entries().begin(), mat.entries().end());
  }
  return {rows, cols, std::move(all)};
}

namespace detail {

inline void expect_shape(const StructuralMatrix& mat, std::size_t rows, std::size_t cols,
                         std::string_view name, std::size_t mode) {
  if (mat.rows() != rows || mat.cols() != cols) {
    throw ValidationError(ValidationKind::DimensionMismatch,
                          "mode " + std::to_string(mode) + ": " + std::string(name) + " is " +
                              std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                              ", expected " + std::to_string(rows) + "x" + std::to_string(cols),
                          mode);
  }
}

}  // namespace detail

/// Throws ValidationError on the first inconsistency found. The zero-column
/// check runs on the union of F over all modes: an input must drive some state
/// in at least one mode.
inline void validate(const SwitchedSystem& sys, bool allow_zero_f_columns = false) {
  if (sys.n == 0) {
    throw ValidationError(ValidationKind::NonPositiveDimension, "state count n must be positive");
  }
  if (sys.modes.empty()) {
    throw ValidationError(ValidationKind::NonPositiveDimension, "mode count m must be positive");
  }
  for (std::size_t k = 0; k < sys.modes.size(); ++k) {
    const Mode& mode = sys.modes[k];
    detail::expect_shape(mode.A, sys.n, sys.n, "A", k + 1);
    detail::expect_shape(mode.F, sys.n, sys.p, "F", k + 1);
    detail::expect_shape(mode.Q, sys.p, sys.p, "Q", k + 1);
  }
  if (allow_zero_f_columns || sys.p == 0) return;

  std::vector<bool> used(sys.p + 1, false);
  for (const Mode& mode : sys.modes) {
    for (const Entry& e : mode.F.entries()) used[e.col] = true;
  }
  for (std::size_t j = 1; j <= sys.p; ++j) {
    if (!used[j]) {
      throw ValidationError(ValidationKind::ZeroDisturbanceColumn,
                            "input d" + std::to_string(j) + " influences no state in any mode", 0,
                            j);
    }
  }
}

/// Input/state stacking x' = [d; x]: augmented index i <= p is input d_i,
/// i > p is state x_{i-p}.
struct AugmentedSystem {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t m = 0;
  std::vector<StructuralMatrix> aug_modes;  // [[Q_k, 0], [F_k, A_k]]
  StructuralMatrix union_pattern;

  std::size_t size() const noexcept { return n + p; }
  bool is_input(std::size_t augmented_index) const noexcept { return augmented_index <= p; }
};

inline StructuralMatrix augment_mode(const Mode& mode, std::size_t n, std::size_t p) {
  std::vector<Entry> e;
  e.reserve(mode.Q.nnz() + mode.F.nnz() + mode.A.nnz());
  for (const Entry& q : mode.Q.entries()) e.push_back({q.row, q.col});
  for (const Entry& f : mode.F.entries()) e.push_back({f.row + p, f.col});
  for (const Entry& a : mode.A.entries()) e.push_back({a.row + p, a.col + p});
  return {n + p, n + p, std::move(e)};
}

inline AugmentedSystem augment(const SwitchedSystem& sys) {
  AugmentedSystem aug;
  aug.n = sys.n;
  aug.p = sys.p;
  aug.m = sys.m();
  aug.aug_modes.reserve(sys.m());
  for (const Mode& mode : sys.modes) aug.aug_modes.push_back(augment_mode(mode, sys.n, sys.p));
  aug.union_pattern = union_of(aug.aug_modes);
  return aug;
}

// ---------------------------------------------------------------------------
// Sensor placements

enum class Provenance { Jprime, Jdoubleprime, Jtripleprime, ClassSpecific };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Jprime:
      return "Jprime";
    case Provenance::Jdoubleprime:
      return "Jdoubleprime";
    case Provenance::Jtripleprime:
      return "Jtripleprime";
    case Provenance::ClassSpecific:
      return "classSpecific";
  }
  return "unknown";
}

/// Dedicated sensors over augmented indices. J_d holds input sensors (their
/// augmented index equals the input index); J_x holds state sensors in
/// augmented indexing and J_x_states the same sensors as original state indices.
struct SensorPlacement {
  std::vector<std::size_t> J;
  std::vector<std::size_t> J_d;
  std::vector<std::size_t> J_x;
  std::vector<std::size_t> J_x_states;
  std::map<std::size_t, Provenance> provenance;
  std::string algorithm;
  std::vector<std::string> warnings;

  std::size_t cardinality() const noexcept { return J.size(); }

  bool measures(std::size_t augmented_index) const {
    return std::binary_search(J.begin(), J.end(), augmented_index);
  }

  friend bool operator==(const SensorPlacement& a, const SensorPlacement& b) {
    return a.J == b.J && a.J_d == b.J_d && a.J_x_states == b.J_x_states &&
           a.provenance == b.provenance && a.algorithm == b.algorithm;
  }
};

/// Builds a placement from (index, provenance) pairs for a system with p inputs.
/// When an index is listed twice the first provenance wins.
inline SensorPlacement make_placement(std::span<const std::pair<std::size_t, Provenance>> sensors,
                                      std::size_t p, std::string algorithm = {}) {
  SensorPlacement pl;
  pl.algorithm = std::move(algorithm);
  for (const auto& [idx, prov] : sensors) pl.provenance.emplace(idx, prov);
  for (const auto& [idx, prov] : pl.provenance) {
    pl.J.push_back(idx);
    if (idx <= p) {
      pl.J_d.push_back(idx);
    } else {
      pl.J_x.push_back(idx);
      pl.J_x_states.push_back(idx - p);
    }
  }
  return pl;
}

inline SensorPlacement make_placement(std::span<const std::size_t> indices, std::size_t p,
                                      Provenance prov = Provenance::ClassSpecific,
                                      std::string algorithm = {}) {
  std::vector<std::pair<std::size_t, Provenance>> s;
  s.reserve(indices.size());
  for (std::size_t i : indices) s.emplace_back(i, prov);
  return make_placement(s, p, std::move(algorithm));
}

inline SensorPlacement make_placement(std::initializer_list<std::size_t> indices, std::size_t p,
                                      Provenance prov = Provenance::ClassSpecific) {
  std::vector<std::size_t> v(indices);
  return make_placement(std::span<const std::size_t>(v), p, prov);
}

struct OutputMatrices {
  StructuralMatrix C;  // |J_x| x n
  StructuralMatrix D;  // |J_d| x p

  /// C' = [D C] in augmented column order, one row per sensor in ascending
  /// augmented index.
  StructuralMatrix combined(std::size_t n, std::size_t p) const {
    std::vector<Entry> e;
    for (const Entry& x : D.entries()) e.push_back({x.row, x.col});
    for (const Entry& x : C.entries()) e.push_back({x.row + D.rows(), x.col + p});
    return {C.rows() + D.rows(), n + p, std::move(e)};
  }
};

inline OutputMatrices placement_to_outputs(const SensorPlacement& pl, std::size_t n,
                                           std::size_t p) {
  std::vector<Entry> c;
  std::vector<Entry> d;
  for (std::size_t idx : pl.J) {
    if (idx < 1 || idx > n + p) {
      throw ValidationError(ValidationKind::OutOfRange,
                            "sensor index " + std::to_string(idx) + " outside 1.." +
                                std::to_string(n + p));
    }
    if (idx <= p) {
      d.push_back({d.size() + 1, idx});
    } else {
      c.push_back({c.size() + 1, idx - p});
    }
  }
  OutputMatrices out;
  const std::size_t dr = d.size();
  const std::size_t cr = c.size();
  out.D = StructuralMatrix(dr, p, std::move(d));
  out.C = StructuralMatrix(cr, n, std::move(c));
  return out;
}

}  // namespace structobs
