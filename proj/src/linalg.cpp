#include "nmds/linalg.hpp"

#include <string>
#include <utility>

#include "nmds/error.hpp"

namespace nmds {

namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// In-place forward elimination on a rows x cols row-major buffer. Returns the
// rank; when `full` is set the result is reduced (RREF) and pivots recorded.
std::size_t eliminate(const Field& f, std::vector<Fe>& a, std::size_t rows, std::size_t cols,
                      bool full, std::vector<std::size_t>* pivots) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c].value == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    const Fe inv = f.inv(a[rank * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[rank * cols + j] = f.mul(a[rank * cols + j], inv);
    const std::size_t start = full ? 0 : rank + 1;
    for (std::size_t r = start; r < rows; ++r) {
      if (r == rank) continue;
      const Fe factor = a[r * cols + c];
      if (factor.value == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[r * cols + j] = f.sub(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
      }
    }
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  return rank;
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, Fe{0}) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Fe> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(Errc::DimensionMismatch, "entry count " + std::to_string(entries_.size()) +
                                             " does not match " + std::to_string(rows_) + "x" +
                                             std::to_string(cols_));
  }
  for (auto e : entries_) field_->element(e.value);
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Fe{1};
  return m;
}

bool Matrix::is_zero() const {
  for (auto e : entries_) {
    if (e.value != 0) return false;
  }
  return true;
}

RrefResult rref(const Matrix& m) {
  std::vector<Fe> a = m.entries();
  std::vector<std::size_t> pivots;
  eliminate(m.field(), a, m.rows(), m.cols(), true, &pivots);
  return {Matrix(m.field_ptr(), m.rows(), m.cols(), std::move(a)), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  std::vector<Fe> a = m.entries();
  return eliminate(m.field(), a, m.rows(), m.cols(), false, nullptr);
}

Fe det(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "det of " + dims(m));
  const Field& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Fe> a = m.entries();
  Fe result = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot * n + c].value == 0) ++pivot;
    if (pivot == n) return f.zero();
    if (pivot != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a[pivot * n + j], a[c * n + j]);
      result = f.neg(result);
    }
    const Fe p = a[c * n + c];
    result = f.mul(result, p);
    const Fe inv = f.inv(p);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Fe factor = f.mul(a[r * n + c], inv);
      if (factor.value == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
      }
    }
  }
  return result;
}

std::vector<std::vector<Fe>> nullspace_basis(const Matrix& m) {
  const Field& f = m.field();
  const auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Fe>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fe> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::DimensionMismatch, "product of " + dims(a) + " and " + dims(b));
  }
  const Field& f = a.field();
  Matrix out(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Fe x = a(i, l);
      if (x.value == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(l, j)));
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.field_ptr(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

std::vector<Fe> mat_vec(const Matrix& m, std::span<const Fe> v) {
  if (v.size() != m.cols()) {
    throw Error(Errc::DimensionMismatch,
                dims(m) + " times vector of length " + std::to_string(v.size()));
  }
  const Field& f = m.field();
  std::vector<Fe> out(m.rows(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  }
  return out;
}

std::size_t column_subset_rank(const Matrix& m, std::span<const std::size_t> columns,
                               std::vector<Fe>& scratch) {
  const std::size_t rows = m.rows();
  const std::size_t cols = columns.size();
  scratch.resize(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) scratch[r * cols + c] = m(r, columns[c]);
  }
  return eliminate(m.field(), scratch, rows, cols, false, nullptr);
}

}  // namespace nmds
