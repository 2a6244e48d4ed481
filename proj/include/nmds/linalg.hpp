#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nmds/gf.hpp"

namespace nmds {

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Fe> entries);

  static Matrix identity(FieldPtr field, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  const std::vector<Fe>& entries() const noexcept { return entries_; }

  Fe& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  Fe operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Fe> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Fe> entries_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form, first-nonzero pivoting.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Elimination with sign tracking; throws DimensionMismatch for non-square input.
Fe det(const Matrix& m);
/// Basis of {v : M v = 0}, one vector per free column of the RREF.
std::vector<std::vector<Fe>> nullspace_basis(const Matrix& m);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
std::vector<Fe> mat_vec(const Matrix& m, std::span<const Fe> v);

/// Rank of the submatrix formed by the given columns. `scratch` is reused
/// between calls to avoid allocation in subset scans.
std::size_t column_subset_rank(const Matrix& m, std::span<const std::size_t> columns,
                               std::vector<Fe>& scratch);

}  // namespace nmds
