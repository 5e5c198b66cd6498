#pragma once

// Exact sparse linear algebra over the integers and the rationals.
//
// Everything here is arbitrary precision (GMP). Sparse vectors are sorted
// (index, value) lists without explicit zeros; matrices are stored by column.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tdlc/error.hpp"

namespace tdlc::linalg {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Ring { Z, Q };

std::string to_string(Ring ring);

template <typename T>
using SparseVector = std::vector<std::pair<std::size_t, T>>;

// y += a * x
template <typename T>
void axpy(SparseVector<T>& y, const T& a, const SparseVector<T>& x) {
  if (a == 0 || x.empty()) return;
  SparseVector<T> out;
  out.reserve(y.size() + x.size());
  auto yi = y.begin();
  auto xi = x.begin();
  while (yi != y.end() || xi != x.end()) {
    if (xi == x.end() || (yi != y.end() && yi->first < xi->first)) {
      out.push_back(std::move(*yi));
      ++yi;
    } else if (yi == y.end() || xi->first < yi->first) {
      out.emplace_back(xi->first, a * xi->second);
      ++xi;
    } else {
      T v = yi->second + a * xi->second;
      if (v != 0) out.emplace_back(yi->first, std::move(v));
      ++yi;
      ++xi;
    }
  }
  y = std::move(out);
}

template <typename T>
void scale(SparseVector<T>& y, const T& a) {
  if (a == 0) {
    y.clear();
    return;
  }
  for (auto& [i, v] : y) v *= a;
}

template <typename T>
T coefficient(const SparseVector<T>& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, std::size_t i) { return e.first < i; });
  if (it != v.end() && it->first == index) return it->second;
  return T(0);
}

template <typename T>
SparseVector<T> to_sparse(std::span<const T> dense) {
  SparseVector<T> out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) out.emplace_back(i, dense[i]);
  return out;
}

template <typename T>
std::vector<T> to_dense(const SparseVector<T>& v, std::size_t size) {
  std::vector<T> out(size, T(0));
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

SparseVector<Rational> to_rational(const SparseVector<Integer>& v);

template <typename T>
struct Entry {
  std::size_t row;
  std::size_t col;
  T value;
};

template <typename T>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  // Entries must be in range and unique per position; zeros are dropped.
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols,
                                   std::span<const Entry<T>> entries) {
    SparseMatrix m(rows, cols);
    for (const auto& e : entries) {
      if (e.row >= rows || e.col >= cols)
        throw InputError("linalg", "matrix entry out of range");
      if (e.value == 0) continue;
      m.columns_[e.col].emplace_back(e.row, e.value);
    }
    for (auto& c : m.columns_) {
      std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].first == c[i - 1].first)
          throw InputError("linalg", "duplicate matrix entry");
    }
    return m;
  }

  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector<T>> columns) {
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = columns.size();
    m.columns_ = std::move(columns);
    for (const auto& c : m.columns_)
      for (const auto& [i, v] : c)
        if (i >= rows) throw InputError("linalg", "column entry out of range");
    return m;
  }

  static SparseMatrix from_dense(const std::vector<std::vector<T>>& rows_data) {
    std::size_t rows = rows_data.size();
    std::size_t cols = rows ? rows_data.front().size() : 0;
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (rows_data[i].size() != cols) throw InputError("linalg", "ragged dense matrix");
      for (std::size_t j = 0; j < cols; ++j)
        if (rows_data[i][j] != 0) m.columns_[j].emplace_back(i, rows_data[i][j]);
    }
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i].emplace_back(i, T(1));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  const SparseVector<T>& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<SparseVector<T>>& columns() const { return columns_; }

  T at(std::size_t i, std::size_t j) const { return coefficient(columns_.at(j), i); }

  void set(std::size_t i, std::size_t j, const T& value) {
    if (i >= rows_ || j >= cols_) throw InputError("linalg", "matrix index out of range");
    auto& c = columns_[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const auto& e, std::size_t r) { return e.first < r; });
    if (it != c.end() && it->first == i) {
      if (value == 0)
        c.erase(it);
      else
        it->second = value;
    } else if (value != 0) {
      c.insert(it, {i, value});
    }
  }

  std::vector<Entry<T>> entries() const {
    std::vector<Entry<T>> out;
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) out.push_back({i, j, v});
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) t.columns_[i].emplace_back(j, v);
    return t;
  }

  std::vector<T> apply(std::span<const T> x) const {
    if (x.size() != cols_) throw InputError("linalg", "dimension mismatch in matrix-vector product");
    std::vector<T> y(rows_, T(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j] == 0) continue;
      for (const auto& [i, v] : columns_[j]) y[i] += v * x[j];
    }
    return y;
  }

  SparseVector<T> apply(const SparseVector<T>& x) const {
    SparseVector<T> y;
    for (const auto& [j, xj] : x) axpy(y, xj, columns_.at(j));
    return y;
  }

  SparseMatrix operator*(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InputError("linalg", "dimension mismatch in matrix product");
    SparseMatrix out(rows_, rhs.cols_);
    for (std::size_t j = 0; j < rhs.cols_; ++j) out.columns_[j] = apply(rhs.columns_[j]);
    return out;
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector<T>> columns_;
};

SparseMatrix<Rational> to_rational(const SparseMatrix<Integer>& m);

template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static DenseMatrix from_sparse(const SparseMatrix<T>& s) {
    DenseMatrix m(s.rows(), s.cols());
    for (std::size_t j = 0; j < s.cols(); ++j)
      for (const auto& [i, v] : s.column(j)) m(i, j) = v;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix operator*(const DenseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InputError("linalg", "dimension mismatch in matrix product");
    DenseMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// U * A * V = diag(factors), with U, V unimodular and factors[0] | factors[1] | ...
struct SmithDecomposition {
  std::vector<Integer> factors;
  DenseMatrix<Integer> left;   // U, rows x rows
  DenseMatrix<Integer> right;  // V, cols x cols

  std::size_t rank() const { return factors.size(); }
};

// Full Smith normal form with transforms. Dense internally; intended for
// matrices up to a few hundred rows and columns.
SmithDecomposition smith(const SparseMatrix<Integer>& a);

// Nonzero invariant factors only (ascending, divisibility chain). Runs sparse
// elimination on unit pivots first and finishes the residue densely, so it
// scales to large boundary matrices.
std::vector<Integer> invariant_factors(const SparseMatrix<Integer>& a);

// Exact determinant of a square integer matrix (Bareiss elimination).
Integer determinant(const DenseMatrix<Integer>& a);

std::size_t rank_q(const SparseMatrix<Rational>& a);
std::size_t rank_q(const SparseMatrix<Integer>& a);

// Basis of ker A over Q.
std::vector<SparseVector<Rational>> kernel_basis_q(const SparseMatrix<Rational>& a);

// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_q(const SparseMatrix<Rational>& a,
                                             std::span<const Rational> b);

// Incremental column echelon reduction over Q. Columns are reduced by their
// lowest nonzero row ("low"), as in standard boundary-matrix reduction; each
// stored basis column has a distinct low with coefficient 1.
class SpanReducer {
 public:
  explicit SpanReducer(std::size_t dimension, bool track_combinations = false);

  // Returns true iff the column is independent of those added before.
  bool add(SparseVector<Rational> column);

  // Residual of v after reduction; zero iff v lies in the span. With
  // tracking enabled, `coefficients` receives c such that
  // v = residual + sum_j c_j * column_j over the columns added so far.
  SparseVector<Rational> reduce(SparseVector<Rational> v,
                                SparseVector<Rational>* coefficients = nullptr) const;

  bool contains(SparseVector<Rational> v) const { return reduce(std::move(v)).empty(); }

  std::size_t rank() const { return basis_.size(); }
  std::size_t columns_added() const { return added_; }
  std::size_t dimension() const { return dimension_; }

  // Combinations of added columns summing to zero; a basis of the kernel of
  // the matrix formed by the added columns. Empty unless tracking.
  const std::vector<SparseVector<Rational>>& kernel() const { return kernel_; }

 private:
  std::size_t dimension_;
  bool track_;
  std::size_t added_ = 0;
  std::vector<std::ptrdiff_t> pivot_;
  std::vector<SparseVector<Rational>> basis_;
  std::vector<SparseVector<Rational>> combos_;
  std::vector<SparseVector<Rational>> kernel_;
};

// Incremental column echelon form of an integer lattice, built with
// unimodular column operations (extended gcd). Decides lattice membership
// exactly and, with tracking, yields a Z-basis of the relation lattice.
class LatticeReducer {
 public:
  explicit LatticeReducer(std::size_t dimension, bool track_combinations = false);

  bool add(SparseVector<Integer> column);
  bool contains(SparseVector<Integer> v) const;

  std::size_t rank() const { return basis_.size(); }
  const std::vector<SparseVector<Integer>>& kernel() const { return kernel_; }

 private:
  // Brings the entries below v's lowest row into [0, pivot) where a pivot
  // exists, so coefficients stay small.
  void reduce_tail(SparseVector<Integer>& v, SparseVector<Integer>* combo) const;

  std::size_t dimension_;
  bool track_;
  std::size_t added_ = 0;
  std::vector<std::ptrdiff_t> pivot_;
  std::vector<SparseVector<Integer>> basis_;
  std::vector<SparseVector<Integer>> combos_;
  std::vector<SparseVector<Integer>> kernel_;
};

}  // namespace tdlc::linalg
