#pragma once

// Homology of chain complexes over Z and Q, and maps induced on homology by
// inclusions of simplicial complexes.

#include <cstddef>
#include <string>
#include <vector>

#include "tdlc/complex.hpp"
#include "tdlc/linalg.hpp"

namespace tdlc::homology {

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<linalg::Integer> torsion;  // elementary divisors >= 2, ascending

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologySummary {
  linalg::Ring ring = linalg::Ring::Z;
  bool reduced = false;
  std::vector<HomologyGroup> groups;  // index = degree

  const HomologyGroup& at(std::size_t p) const;
  // "H0=Z, H1=Z/2"; every degree up to the top of the complex is listed.
  std::string to_string() const;
};

std::string format_group(const HomologyGroup& h, linalg::Ring ring);

HomologySummary homology(const complex::ChainComplex& c);

// Cycles of degree p whose classes form a basis of H_p(C; Q), chosen by
// column reduction in the fixed simplex order (deterministic).
std::vector<linalg::SparseVector<linalg::Rational>> homology_basis_q(const complex::ChainComplex& c,
                                                                     std::size_t p);

// The boundary space im d_{p+1} as a span reducer over Q.
linalg::SpanReducer boundary_span_q(const complex::ChainComplex& c, std::size_t p);

struct InducedMap {
  std::size_t p = 0;
  linalg::Ring ring = linalg::Ring::Q;
  HomologyGroup source;
  HomologyGroup target;
  // target.betti x source.betti, in the bases of homology_basis_q.
  linalg::DenseMatrix<linalg::Rational> matrix;
  // Every cycle of K is a boundary in L (over Z: an integral boundary, so
  // torsion classes count).
  bool trivial = true;
};

// Map H_p(K) -> H_p(L) induced by the inclusion K into L. Reduced homology
// when `reduced` is set (this only changes degree 0).
InducedMap induced_map(const complex::SimplicialComplex& k, const complex::SimplicialComplex& l,
                       std::size_t p, linalg::Ring ring, bool reduced = false);

}  // namespace tdlc::homology
