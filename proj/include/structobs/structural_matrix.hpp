#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "structobs/error.hpp"

namespace structobs {

/// A 1-based (row, col) position holding a free parameter.
struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// Zero/nonzero pattern of a real matrix. Entries are kept sorted row-major
/// and duplicate-free, so iteration order is deterministic.
class StructuralMatrix {
 public:
  StructuralMatrix() = default;

  StructuralMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Duplicated coordinates collapse; out-of-range ones throw.
  StructuralMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    for (const Entry& e : entries_) {
      if (e.row < 1 || e.row > rows_ || e.col < 1 || e.col > cols_) {
        throw ValidationError(ValidationKind::OutOfRange,
                              "entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                  ") outside " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_) + " pattern");
      }
    }
    std::sort(entries_.begin(), entries_.end());
    entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
  }

  static StructuralMatrix identity(std::size_t n) {
    std::vector<Entry> e;
    e.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) e.push_back({i, i});
    return {n, n, std::move(e)};
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::span<const Entry> entries() const noexcept { return entries_; }

  bool contains(std::size_t row, std::size_t col) const {
    return std::binary_search(entries_.begin(), entries_.end(), Entry{row, col});
  }

  bool has_full_diagonal() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 1; i <= rows_; ++i) {
      if (!contains(i, i)) return false;
    }
    return true;
  }

  friend bool operator==(const StructuralMatrix&, const StructuralMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// Row-wise concatenation [M_1; M_2; ...]. All blocks must share a column count.
inline StructuralMatrix vstack(std::span<const StructuralMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  std::size_t nnz = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].cols() != cols) {
      throw ValidationError(ValidationKind::DimensionMismatch,
                            "vstack: block " + std::to_string(k + 1) + " has " +
                                std::to_string(blocks[k].cols()) + " columns, expected " +
                                std::to_string(cols),
                            k + 1);
    }
    rows += blocks[k].rows();
    nnz += blocks[k].nnz();
  }
  std::vector<Entry> e;
  e.reserve(nnz);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (const Entry& x : b.entries()) e.push_back({x.row + offset, x.col});
    offset += b.rows();
  }
  return {rows, cols, std::move(e)};
}

}  // namespace structobs
