#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tdlc/linalg.hpp"

using namespace tdlc::linalg;

namespace {

SparseMatrix<Integer> dense_z(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Integer>> m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (long x : r) m.back().emplace_back(x);
  }
  return SparseMatrix<Integer>::from_dense(m);
}

SparseMatrix<Rational> dense_q(const std::vector<std::vector<long>>& rows) {
  return to_rational(dense_z(rows));
}

void check_smith(const SparseMatrix<Integer>& a) {
  auto s = smith(a);
  auto prod = s.left * DenseMatrix<Integer>::from_sparse(a) * s.right;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer want = (i == j && i < s.rank()) ? s.factors[i] : Integer(0);
      REQUIRE(prod(i, j) == want);
    }
  for (std::size_t i = 0; i < s.rank(); ++i) {
    CHECK(s.factors[i] > 0);
    if (i + 1 < s.rank()) CHECK(s.factors[i + 1] % s.factors[i] == 0);
  }
  CHECK(abs(determinant(s.left)) == 1);
  CHECK(abs(determinant(s.right)) == 1);
  CHECK(s.factors == oracle::snf_factors(helpers::to_dense(a)));
  CHECK(invariant_factors(a) == s.factors);
  CHECK(rank_q(a) == s.rank());
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("smith examples") {
    CHECK(smith(SparseMatrix<Integer>::identity(3)).factors == std::vector<Integer>{1, 1, 1});
    CHECK(smith(SparseMatrix<Integer>(3, 4)).rank() == 0);
    auto s = smith(dense_z({{2, 4}, {6, 8}}));
    CHECK(s.factors == std::vector<Integer>{2, 4});
    check_smith(dense_z({{2, 4}, {6, 8}}));
    check_smith(dense_z({{0, 0, 6}, {0, 10, 0}, {15, 0, 0}}));
  }

  TEST_CASE("smith on random sparse matrices matches the dense oracle") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 150; ++n) {
      std::uniform_real_distribution<double> density(0.05, 0.6);
      check_smith(helpers::random_sparse(rng, 14, density(rng)));
    }
  }

  TEST_CASE("invariant factors of a large sparse boundary-like matrix") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 10; ++n) {
      auto a = helpers::random_sparse(rng, 60, 0.05);
      auto f = invariant_factors(a);
      CHECK(f == smith(a).factors);
      CHECK(f == oracle::snf_factors(helpers::to_dense(a)));
      // The rank mod p counts the factors that p does not divide.
      auto dense = oracle::to_int64(helpers::to_dense(a));
      for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 2147483647L}) {
        std::size_t units = 0;
        for (const auto& x : f) units += x % p != 0;
        CHECK(oracle::rank_mod_p(dense, p) == units);
      }
    }
  }

  TEST_CASE("rank, kernel and solve examples") {
    CHECK(rank_q(SparseMatrix<Rational>::identity(4)) == 4);

    auto k = kernel_basis_q(dense_q({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(coefficient(k[0], 0) == -coefficient(k[0], 1));
    CHECK(coefficient(k[0], 0) != 0);

    std::vector<Rational> b{4, 6};
    auto x = solve_q(dense_q({{2, 0}, {0, 3}}), b);
    REQUIRE(x);
    CHECK(*x == std::vector<Rational>{2, 2});

    std::vector<Rational> bad{1, 2};
    CHECK_FALSE(solve_q(dense_q({{1, 1}, {1, 1}}), bad).has_value());
    std::vector<Rational> short_b{1};
    CHECK_THROWS_AS(solve_q(dense_q({{1, 1}, {1, 1}}), short_b), tdlc::InputError);
  }

  TEST_CASE("kernel basis spans the kernel") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 60; ++n) {
      auto a = to_rational(helpers::random_sparse(rng, 12, 0.3));
      auto basis = kernel_basis_q(a);
      CHECK(basis.size() + rank_q(a) == a.cols());
      for (const auto& v : basis) CHECK(a.apply(v).empty());
    }
  }

  TEST_CASE("solve recovers a preimage of A x") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> value(-5, 5);
    for (int n = 0; n < 80; ++n) {
      auto a = to_rational(helpers::random_sparse(rng, 20, 0.25));
      std::vector<Rational> x(a.cols());
      for (auto& v : x) {
        v = Rational(value(rng), 1 + static_cast<long>(rng() % 3));
        v.canonicalize();
      }
      auto b = a.apply(std::span<const Rational>(x));
      auto y = solve_q(a, b);
      REQUIRE(y);
      CHECK(a.apply(std::span<const Rational>(*y)) == b);
    }
  }

  TEST_CASE("span and lattice reducers agree with ranks") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 40; ++n) {
      auto a = helpers::random_sparse(rng, 10, 0.3);
      SpanReducer span(a.rows());
      LatticeReducer lattice(a.rows());
      for (const auto& c : a.columns()) {
        span.add(to_rational(c));
        lattice.add(c);
      }
      CHECK(span.rank() == rank_q(a));
      CHECK(lattice.rank() == rank_q(a));
      for (const auto& c : a.columns()) {
        CHECK(lattice.contains(c));
        SparseVector<Integer> twice = c;
        scale(twice, Integer(2));
        CHECK(lattice.contains(twice));
      }
    }
    // 2 e_0 spans a lattice not containing e_0; over Q it does.
    LatticeReducer lattice(2);
    lattice.add({{0, Integer(2)}});
    CHECK_FALSE(lattice.contains({{0, Integer(1)}}));
    SpanReducer span(2);
    span.add({{0, Rational(2)}});
    CHECK(span.contains({{0, Rational(1)}}));
  }

  TEST_CASE("malformed matrices are input errors") {
    std::vector<Entry<Integer>> dup{{0, 0, Integer(1)}, {0, 0, Integer(2)}};
    CHECK_THROWS_AS(SparseMatrix<Integer>::from_entries(1, 1, dup), tdlc::InputError);
    std::vector<Entry<Integer>> out{{2, 0, Integer(1)}};
    CHECK_THROWS_AS(SparseMatrix<Integer>::from_entries(1, 1, out), tdlc::InputError);
  }
}
