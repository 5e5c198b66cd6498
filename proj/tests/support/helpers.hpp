#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tdlc/complex.hpp"
#include "tdlc/linalg.hpp"
#include "tdlc/orbit.hpp"

namespace helpers {

using tdlc::linalg::Integer;
using tdlc::linalg::SparseMatrix;

inline oracle::Complex to_oracle(const tdlc::complex::SimplicialComplex& k) {
  oracle::Complex out;
  for (const auto& level : k.levels())
    for (const auto& s : level) out.insert(oracle::Tuple(s.begin(), s.end()));
  return out;
}

inline tdlc::complex::SimplicialComplex from_oracle(const oracle::Complex& k) {
  std::vector<tdlc::complex::Simplex> all;
  for (const auto& level : k.levels)
    for (const auto& s : level) all.emplace_back(s.begin(), s.end());
  return tdlc::complex::SimplicialComplex::closure(std::move(all));
}

inline oracle::Dense to_dense(const SparseMatrix<Integer>& m) {
  oracle::Dense out(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (const auto& e : m.entries()) out[e.row][e.col] = e.value;
  return out;
}

// Random sparse integer matrix with entries in [-9, 9].
inline SparseMatrix<Integer> random_sparse(std::mt19937_64& rng, std::size_t max_side, double density) {
  std::uniform_int_distribution<std::size_t> side(1, max_side);
  std::size_t rows = side(rng), cols = side(rng);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<long> value(-9, 9);
  std::vector<tdlc::linalg::Entry<Integer>> entries;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (keep(rng)) {
        long v = value(rng);
        if (v != 0) entries.push_back({i, j, Integer(v)});
      }
  return SparseMatrix<Integer>::from_entries(rows, cols, entries);
}

// The trivial group acting on a simplicial complex: one orbit per simplex.
inline tdlc::orbit::OrbitComplex free_orbits(const tdlc::complex::SimplicialComplex& k) {
  tdlc::orbit::OrbitComplex oc;
  auto c = tdlc::complex::chain_complex(k, tdlc::linalg::Ring::Z, false);
  oc.orbits.resize(k.levels().size());
  oc.boundary.resize(k.levels().size());
  for (std::size_t p = 0; p < k.levels().size(); ++p) {
    oc.orbits[p].assign(k.count(p), tdlc::orbit::Orbit{"1", true});
    oc.boundary[p].resize(p == 0 ? 0 : k.count(p));
    if (p == 0) continue;
    auto d = c.boundary(p);
    for (std::size_t j = 0; j < d.cols(); ++j)
      for (const auto& [i, v] : d.column(j)) oc.boundary[p][j].push_back({v.get_si(), i});
  }
  return oc;
}

}  // namespace helpers
