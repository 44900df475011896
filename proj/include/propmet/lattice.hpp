#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "propmet/arith.hpp"

namespace propmet {

using IntVector = std::vector<Integer>;

/// Subgroup of Z^k spanned by a finite list of integer vectors, stored as its
/// row Hermite normal form. The basis is unique for the lattice, so two
/// lattices are equal iff their bases are equal.
class IntLattice {
 public:
  IntLattice() = default;

  static IntLattice span(std::size_t dim, const std::vector<IntVector>& vectors) {
    for (const auto& v : vectors) {
      if (v.size() != dim) throw UsageError("lattice generator has wrong dimension");
    }
    IntLattice lat;
    lat.dim_ = dim;
    std::vector<IntVector> m = vectors;
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < m.size(); ++c) {
      // Euclid on column c among rows r..end.
      for (;;) {
        std::size_t best = m.size();
        for (std::size_t i = r; i < m.size(); ++i) {
          if (m[i][c] == 0) continue;
          if (best == m.size() || abs(m[i][c]) < abs(m[best][c])) best = i;
        }
        if (best == m.size()) break;
        std::swap(m[r], m[best]);
        bool done = true;
        for (std::size_t i = r + 1; i < m.size(); ++i) {
          if (m[i][c] == 0) continue;
          const Integer q = floor_div(m[i][c], m[r][c]);
          for (std::size_t j = c; j < dim; ++j) m[i][j] -= q * m[r][j];
          if (m[i][c] != 0) done = false;
        }
        if (done) break;
      }
      if (r < m.size() && m[r][c] != 0) {
        if (m[r][c] < 0) {
          for (auto& e : m[r]) e = -e;
        }
        lat.pivots_.push_back(c);
        ++r;
      }
    }
    m.resize(r);
    // Reduce entries above each pivot into [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t p = lat.pivots_[i];
      for (std::size_t k = 0; k < i; ++k) {
        const Integer q = floor_div(m[k][p], m[i][p]);
        if (q == 0) continue;
        for (std::size_t j = p; j < dim; ++j) m[k][j] -= q * m[i][j];
      }
    }
    lat.rows_ = std::move(m);
    return lat;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full_rank() const noexcept { return rows_.size() == dim_; }
  const std::vector<IntVector>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivot_columns() const noexcept { return pivots_; }

  /// Canonical representative of v + L: every pivot coordinate lands in [0, pivot).
  IntVector reduce(IntVector v) const {
    if (v.size() != dim_) throw UsageError("vector has wrong dimension for lattice");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      const Integer q = floor_div(v[p], rows_[i][p]);
      if (q == 0) continue;
      for (std::size_t j = p; j < dim_; ++j) v[j] -= q * rows_[i][j];
    }
    return v;
  }

  bool contains(const IntVector& v) const {
    for (const auto& e : reduce(v)) {
      if (e != 0) return false;
    }
    return true;
  }

  /// Covolume of a full-rank lattice (product of pivots).
  Integer determinant() const {
    if (!full_rank()) throw UsageError("determinant of a rank-deficient lattice");
    Integer d = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) d *= rows_[i][pivots_[i]];
    return d;
  }

  friend bool operator==(const IntLattice&, const IntLattice&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace propmet
