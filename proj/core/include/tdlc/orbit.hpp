#pragma once

// Orbit complexes of proper cocompact actions and their deflation Q (x)_G -.
//
// Each p-cell orbit G/U contributes one copy of Q after deflation; a boundary
// term c * gV deflates to c, whatever g and V are. Contractibility of the
// underlying complex is a user assertion and is only reported.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdlc/linalg.hpp"

namespace tdlc::orbit {

struct Orbit {
  std::string stabilizer;
  bool compact_open = true;
};

struct Term {
  long long coefficient = 0;
  std::size_t target = 0;  // orbit index one dimension down
};

struct OrbitComplex {
  std::vector<std::vector<Orbit>> orbits;  // per dimension
  // boundary[p][i] lists the terms of the i-th p-orbit; boundary[0] is empty.
  std::vector<std::vector<std::vector<Term>>> boundary;
  bool contractible = true;  // asserted, not checked

  int dim() const { return static_cast<int>(orbits.size()) - 1; }
  std::size_t count(std::size_t p) const { return p < orbits.size() ? orbits[p].size() : 0; }
  // Deflated boundary d_p : Q^{count(p)} -> Q^{count(p-1)}, for p >= 1.
  linalg::SparseMatrix<linalg::Integer> deflated(std::size_t p) const;
  // Shape, target range and compact-open flags (InputError), deflated
  // d d = 0 (InvariantViolation).
  void check() const;
};

// {"orbits": [[{"stab": "U0"}], ...], "boundary": [[[coef, target], ...], ...]}
// `boundary` has one entry per orbit of dimension >= 1, dimension by
// dimension; a leading entry per 0-orbit (necessarily empty) is also
// accepted. Optional per-orbit "compact_open" and top-level "contractible".
OrbitComplex from_json(std::string_view text);
std::string to_json(const OrbitComplex& oc);

// dim dH_p(G; Q) for p = 0..dim.
std::vector<std::size_t> deflate_homology(const OrbitComplex& oc);

struct CdReport {
  std::size_t upper = 0;             // dim X
  std::optional<std::size_t> lower;  // top degree with dH != 0
};

CdReport cd_report(const OrbitComplex& oc);

// Z^m acting on the cubical structure of R^m: one orbit per subset of the
// m directions; every boundary term comes with its translate of opposite sign.
OrbitComplex cubical_lattice(std::size_t m);
// Barycentric subdivision of a regular tree under its automorphism group:
// vertex and midpoint orbits, one half-edge orbit.
OrbitComplex subdivided_tree();
// A point with stabilizer G.
OrbitComplex point();

}  // namespace tdlc::orbit
