#include "tdlc/linalg.hpp"

#include <cstdlib>
#include <numeric>
#include <tuple>

namespace tdlc::linalg {

std::string to_string(Ring ring) { return ring == Ring::Z ? "Z" : "Q"; }

SparseVector<Rational> to_rational(const SparseVector<Integer>& v) {
  SparseVector<Rational> out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, Rational(x));
  return out;
}

SparseMatrix<Rational> to_rational(const SparseMatrix<Integer>& m) {
  std::vector<SparseVector<Rational>> cols;
  cols.reserve(m.cols());
  for (const auto& c : m.columns()) cols.push_back(to_rational(c));
  return SparseMatrix<Rational>::from_columns(m.rows(), std::move(cols));
}

namespace {

// Floor division keeps remainders in [0, |b|) up to sign, which is enough
// for the Euclidean descent below.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

class DenseSmith {
 public:
  DenseSmith(DenseMatrix<Integer> a, bool transforms) : a_(std::move(a)), transforms_(transforms) {
    if (transforms_) {
      u_ = DenseMatrix<Integer>::identity(a_.rows());
      v_ = DenseMatrix<Integer>::identity(a_.cols());
    }
  }

  std::vector<Integer> run() {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    std::vector<Integer> factors;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!choose_pivot(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t) == 0) continue;
          Integer q = floor_div(a_(i, t), a_(t, t));
          add_row(i, t, -q);
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j) == 0) continue;
          Integer q = floor_div(a_(t, j), a_(t, t));
          add_col(j, t, -q);
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          move_smallest_in_cross(t);
          continue;
        }
        // Row and column are clear; enforce divisibility of the rest.
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j) {
            if (a_(i, j) == 0) continue;
            Integer r = a_(i, j) % a_(t, t);
            if (r != 0) {
              add_row(t, i, Integer(1));
              divisible = false;
              break;
            }
          }
        if (divisible) break;
      }
      if (a_(t, t) < 0) negate_row(t);
      factors.push_back(a_(t, t));
    }
    return factors;
  }

  DenseMatrix<Integer>& left() { return u_; }
  DenseMatrix<Integer>& right() { return v_; }

 private:
  // Pivot: smallest |value|, ties broken by Markowitz fill-in estimate, then position.
  bool choose_pivot(std::size_t t) {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    std::vector<std::size_t> row_count(m, 0), col_count(n, 0);
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a_(i, j) != 0) {
          ++row_count[i];
          ++col_count[j];
        }
    bool found = false;
    std::size_t bi = 0, bj = 0, best_fill = 0;
    Integer best_abs;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (a_(i, j) == 0) continue;
        Integer av = abs(a_(i, j));
        std::size_t fill = (row_count[i] - 1) * (col_count[j] - 1);
        if (!found || av < best_abs || (av == best_abs && fill < best_fill)) {
          found = true;
          best_abs = av;
          best_fill = fill;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void move_smallest_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    Integer best = abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && abs(a_(i, t)) < best) {
        best = abs(a_(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && abs(a_(t, j)) < best) {
        best = abs(a_(t, j));
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(i, j), a_(k, j));
    if (transforms_)
      for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(i, j), u_(k, j));
  }

  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_(i, j), a_(i, k));
    if (transforms_)
      for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, j), v_(i, k));
  }

  // row_i += c * row_k
  void add_row(std::size_t i, std::size_t k, const Integer& c) {
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (a_(k, j) != 0) a_(i, j) += c * a_(k, j);
    if (transforms_)
      for (std::size_t j = 0; j < u_.cols(); ++j)
        if (u_(k, j) != 0) u_(i, j) += c * u_(k, j);
  }

  // col_j += c * col_k
  void add_col(std::size_t j, std::size_t k, const Integer& c) {
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (a_(i, k) != 0) a_(i, j) += c * a_(i, k);
    if (transforms_)
      for (std::size_t i = 0; i < v_.rows(); ++i)
        if (v_(i, k) != 0) v_(i, j) += c * v_(i, k);
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = -a_(i, j);
    if (transforms_)
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(i, j) = -u_(i, j);
  }

  DenseMatrix<Integer> a_;
  bool transforms_;
  DenseMatrix<Integer> u_;
  DenseMatrix<Integer> v_;
};

}  // namespace

SmithDecomposition smith(const SparseMatrix<Integer>& a) {
  DenseSmith s(DenseMatrix<Integer>::from_sparse(a), true);
  SmithDecomposition out;
  out.factors = s.run();
  out.left = std::move(s.left());
  out.right = std::move(s.right());
  return out;
}

std::vector<Integer> invariant_factors(const SparseMatrix<Integer>& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  std::vector<SparseVector<Integer>> rows(m);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [i, v] : a.column(j)) rows[i].emplace_back(j, v);
  // col_rows may hold stale row ids; they are re-checked on use.
  std::vector<std::vector<std::size_t>> col_rows(n);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& e : rows[i]) col_rows[e.first].push_back(i);

  std::vector<char> row_dead(m, 0), col_dead(n, 0);
  std::size_t units = 0;

  auto live_rows_in = [&](std::size_t j) {
    std::vector<std::size_t> out;
    for (std::size_t i : col_rows[j])
      if (!row_dead[i] && coefficient(rows[i], j) != 0) out.push_back(i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < n; ++j)
      if (!col_dead[j]) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return col_rows[x].size() < col_rows[y].size();
    });
    for (std::size_t j : order) {
      auto live = live_rows_in(j);
      col_rows[j] = live;
      if (live.empty()) {
        col_dead[j] = 1;
        continue;
      }
      std::ptrdiff_t pivot = -1;
      for (std::size_t i : live) {
        Integer v = coefficient(rows[i], j);
        if (abs(v) == 1 && (pivot < 0 || rows[i].size() < rows[static_cast<std::size_t>(pivot)].size()))
          pivot = static_cast<std::ptrdiff_t>(i);
      }
      if (pivot < 0) continue;
      const std::size_t p = static_cast<std::size_t>(pivot);
      const Integer pv = coefficient(rows[p], j);
      for (std::size_t i : live) {
        if (i == p) continue;
        Integer c = -coefficient(rows[i], j) * pv;  // pv = +-1, so pv^{-1} = pv
        SparseVector<Integer> old = rows[i];
        axpy(rows[i], c, rows[p]);
        auto oi = old.begin();
        for (const auto& e : rows[i]) {
          while (oi != old.end() && oi->first < e.first) ++oi;
          if (oi == old.end() || oi->first != e.first) col_rows[e.first].push_back(i);
        }
      }
      row_dead[p] = 1;
      col_dead[j] = 1;
      ++units;
      progress = true;
    }
    // Deduplicate stale indices occasionally to keep lists short.
    for (std::size_t j = 0; j < n; ++j)
      if (!col_dead[j] && col_rows[j].size() > 64) col_rows[j] = live_rows_in(j);
  }

  // Dense finish on whatever did not admit a unit pivot.
  std::vector<std::size_t> rest_rows, rest_cols;
  std::vector<std::ptrdiff_t> col_index(n, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (row_dead[i] || rows[i].empty()) continue;
    rest_rows.push_back(i);
    for (const auto& e : rows[i])
      if (col_index[e.first] < 0) {
        col_index[e.first] = static_cast<std::ptrdiff_t>(rest_cols.size());
        rest_cols.push_back(e.first);
      }
  }
  std::vector<Integer> factors(units, Integer(1));
  if (!rest_rows.empty()) {
    DenseMatrix<Integer> d(rest_rows.size(), rest_cols.size());
    for (std::size_t r = 0; r < rest_rows.size(); ++r)
      for (const auto& [j, v] : rows[rest_rows[r]])
        d(r, static_cast<std::size_t>(col_index[j])) = v;
    DenseSmith s(std::move(d), false);
    auto tail = s.run();
    factors.insert(factors.end(), tail.begin(), tail.end());
  }
  return factors;
}

Integer determinant(const DenseMatrix<Integer>& a) {
  if (a.rows() != a.cols()) throw InputError("linalg", "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  DenseMatrix<Integer> m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && m(s, k) == 0) ++s;
      if (s == n) return Integer(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank_q(const SparseMatrix<Rational>& a) {
  SpanReducer r(a.rows());
  for (const auto& c : a.columns()) r.add(c);
  return r.rank();
}

std::size_t rank_q(const SparseMatrix<Integer>& a) {
  SpanReducer r(a.rows());
  for (const auto& c : a.columns()) r.add(to_rational(c));
  return r.rank();
}

std::vector<SparseVector<Rational>> kernel_basis_q(const SparseMatrix<Rational>& a) {
  SpanReducer r(a.rows(), true);
  for (const auto& c : a.columns()) r.add(c);
  return r.kernel();
}

std::optional<std::vector<Rational>> solve_q(const SparseMatrix<Rational>& a,
                                             std::span<const Rational> b) {
  if (b.size() != a.rows()) throw InputError("linalg", "dimension mismatch in solve");
  SpanReducer r(a.rows(), true);
  for (const auto& c : a.columns()) r.add(c);
  SparseVector<Rational> coeffs;
  auto residual = r.reduce(to_sparse(b), &coeffs);
  if (!residual.empty()) return std::nullopt;
  return to_dense(coeffs, a.cols());
}

// ---------------------------------------------------------------------------

SpanReducer::SpanReducer(std::size_t dimension, bool track_combinations)
    : dimension_(dimension), track_(track_combinations), pivot_(dimension, -1) {}

SparseVector<Rational> SpanReducer::reduce(SparseVector<Rational> v,
                                           SparseVector<Rational>* coefficients) const {
  if (coefficients) {
    if (!track_) throw InvariantViolation("linalg", "coefficients requested without tracking");
    coefficients->clear();
  }
  while (!v.empty()) {
    const std::size_t low = v.back().first;
    if (low >= dimension_) throw InputError("linalg", "vector index out of range");
    const std::ptrdiff_t p = pivot_[low];
    if (p < 0) break;
    const Rational c = v.back().second;
    const auto& col = basis_[static_cast<std::size_t>(p)];
    axpy(v, Rational(-c), col);
    if (coefficients) axpy(*coefficients, c, combos_[static_cast<std::size_t>(p)]);
  }
  return v;
}

bool SpanReducer::add(SparseVector<Rational> column) {
  const std::size_t index = added_++;
  SparseVector<Rational> combo;
  if (track_) combo.emplace_back(index, Rational(1));
  while (!column.empty()) {
    const std::size_t low = column.back().first;
    if (low >= dimension_) throw InputError("linalg", "column index out of range");
    const std::ptrdiff_t p = pivot_[low];
    if (p < 0) break;
    const Rational c = column.back().second;
    axpy(column, Rational(-c), basis_[static_cast<std::size_t>(p)]);
    if (track_) axpy(combo, Rational(-c), combos_[static_cast<std::size_t>(p)]);
  }
  if (column.empty()) {
    if (track_) kernel_.push_back(std::move(combo));
    return false;
  }
  const Rational inv = 1 / column.back().second;
  scale(column, inv);
  if (track_) scale(combo, inv);
  pivot_[column.back().first] = static_cast<std::ptrdiff_t>(basis_.size());
  basis_.push_back(std::move(column));
  if (track_) combos_.push_back(std::move(combo));
  return true;
}

// ---------------------------------------------------------------------------

LatticeReducer::LatticeReducer(std::size_t dimension, bool track_combinations)
    : dimension_(dimension), track_(track_combinations), pivot_(dimension, -1) {}

void LatticeReducer::reduce_tail(SparseVector<Integer>& v, SparseVector<Integer>* combo) const {
  if (v.empty()) return;
  std::size_t bound = v.back().first;
  while (true) {
    auto it = std::lower_bound(v.begin(), v.end(), bound,
                               [](const auto& e, std::size_t row) { return e.first < row; });
    if (it == v.begin()) return;
    --it;
    bound = it->first;
    const std::ptrdiff_t p = pivot_[bound];
    if (p < 0) continue;
    const auto& piv = basis_[static_cast<std::size_t>(p)];
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), it->second.get_mpz_t(), piv.back().second.get_mpz_t());
    if (q == 0) continue;
    axpy(v, Integer(-q), piv);
    if (combo) axpy(*combo, Integer(-q), combos_[static_cast<std::size_t>(p)]);
  }
}

bool LatticeReducer::add(SparseVector<Integer> column) {
  const std::size_t index = added_++;
  SparseVector<Integer> combo;
  if (track_) combo.emplace_back(index, Integer(1));
  while (!column.empty()) {
    const std::size_t low = column.back().first;
    if (low >= dimension_) throw InputError("linalg", "column index out of range");
    const std::ptrdiff_t p = pivot_[low];
    if (p < 0) {
      if (column.back().second < 0) {
        scale(column, Integer(-1));
        if (track_) scale(combo, Integer(-1));
      }
      reduce_tail(column, track_ ? &combo : nullptr);
      pivot_[low] = static_cast<std::ptrdiff_t>(basis_.size());
      basis_.push_back(std::move(column));
      if (track_) combos_.push_back(std::move(combo));
      return true;
    }
    auto& piv = basis_[static_cast<std::size_t>(p)];
    const Integer a = piv.back().second;  // > 0
    const Integer b = column.back().second;
    if (b % a == 0) {
      Integer q = b / a;
      axpy(column, Integer(-q), piv);
      if (track_) axpy(combo, Integer(-q), combos_[static_cast<std::size_t>(p)]);
      continue;
    }
    // [piv, column] <- [piv, column] * [[s, -b/g], [t, a/g]], determinant 1.
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer bg = b / g;
    const Integer ag = a / g;
    SparseVector<Integer> new_piv;
    axpy(new_piv, s, piv);
    axpy(new_piv, t, column);
    SparseVector<Integer> new_col;
    axpy(new_col, Integer(-bg), piv);
    axpy(new_col, ag, column);
    if (track_) {
      auto& pc = combos_[static_cast<std::size_t>(p)];
      SparseVector<Integer> new_pc, new_cc;
      axpy(new_pc, s, pc);
      axpy(new_pc, t, combo);
      axpy(new_cc, Integer(-bg), pc);
      axpy(new_cc, ag, combo);
      pc = std::move(new_pc);
      combo = std::move(new_cc);
    }
    piv = std::move(new_piv);
    column = std::move(new_col);
    reduce_tail(piv, track_ ? &combos_[static_cast<std::size_t>(p)] : nullptr);
    reduce_tail(column, track_ ? &combo : nullptr);
  }
  if (track_) kernel_.push_back(std::move(combo));
  return false;
}

bool LatticeReducer::contains(SparseVector<Integer> v) const {
  while (!v.empty()) {
    const std::size_t low = v.back().first;
    if (low >= dimension_) throw InputError("linalg", "vector index out of range");
    const std::ptrdiff_t p = pivot_[low];
    if (p < 0) return false;
    const auto& piv = basis_[static_cast<std::size_t>(p)];
    const Integer& a = piv.back().second;
    const Integer& b = v.back().second;
    if (b % a != 0) return false;
    Integer q = b / a;
    axpy(v, Integer(-q), piv);
  }
  return true;
}

}  // namespace tdlc::linalg
