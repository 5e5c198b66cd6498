#pragma once

// Finite simplicial complexes on integer vertex ids, Rips complexes of balls,
// barycentric subdivision, and simplicial chain complexes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdlc/error.hpp"
#include "tdlc/germ.hpp"
#include "tdlc/linalg.hpp"

namespace tdlc::complex {

using Vertex = std::uint32_t;
// Strictly increasing vertex ids; the orientation is the sorted order.
using Simplex = std::vector<Vertex>;

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Closure under faces of the given simplices. Tuples may be unsorted;
  // repeated vertices inside a tuple are an input error.
  static SimplicialComplex closure(std::vector<Simplex> simplices, const Caps& caps = {});

  // Takes per-dimension lists that are already sorted, duplicate free and
  // closed under faces (checked).
  static SimplicialComplex from_levels(std::vector<std::vector<Simplex>> levels);

  // -1 for the empty complex.
  int dim() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t count(std::size_t p) const { return p < levels_.size() ? levels_[p].size() : 0; }
  std::size_t size() const;
  const std::vector<Simplex>& simplices(std::size_t p) const;
  const std::vector<std::vector<Simplex>>& levels() const { return levels_; }

  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  bool is_subcomplex_of(const SimplicialComplex& other) const;

  // Full subcomplex on vertices with id < n.
  SimplicialComplex restrict_below(Vertex n) const;

  long long euler_characteristic() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<std::vector<Simplex>> levels_;
};

// Simplices on the ball's ids with pairwise ball-distance <= d, up to
// dimension max_dim.
SimplicialComplex rips(const germ::Ball& ball, std::size_t d, std::size_t max_dim, const Caps& caps = {});

// Same, from precomputed d-neighborhoods (see germ::neighborhoods).
SimplicialComplex rips_from_neighborhoods(const std::vector<std::vector<std::size_t>>& nbhd,
                                          std::size_t max_dim, const Caps& caps = {});

// Barycentric subdivision. The vertex of sd(K) with id i is the
// barycenter of the i-th simplex of K, counting dimension by dimension.
SimplicialComplex subdivide(const SimplicialComplex& k);

// The graph of a ball as a 1-dimensional complex.
SimplicialComplex graph_complex(const germ::Ball& ball);

struct ChainComplex {
  linalg::Ring ring = linalg::Ring::Z;
  bool augmented = false;
  std::vector<std::size_t> ranks;
  // boundaries[p] : C_p -> C_{p-1}. boundaries[0] is the augmentation row
  // (1 x ranks[0], all ones) when augmented and a 0 x ranks[0] matrix
  // otherwise. Entries are integers for either ring.
  std::vector<linalg::SparseMatrix<linalg::Integer>> boundaries;

  std::size_t rank(std::size_t p) const { return p < ranks.size() ? ranks[p] : 0; }
  // Zero matrix of the right shape outside the stored range.
  linalg::SparseMatrix<linalg::Integer> boundary(std::size_t p) const;
  // Throws InvariantViolation naming the first failing degree.
  void check() const;
};

ChainComplex chain_complex(const SimplicialComplex& k, linalg::Ring ring, bool augmented);

// C(L)/C(K) for K a subcomplex of L; basis = simplices of L not in K, in
// L's order. Augmented when `augmented` is set and K is empty.
ChainComplex relative_chain_complex(const SimplicialComplex& l, const SimplicialComplex& k,
                                    linalg::Ring ring, bool augmented);

// {"simplices": [[0],[1],[0,1],...]}; missing faces are added.
SimplicialComplex complex_from_json(std::string_view text, const Caps& caps = {});
// All simplices, lexicographically sorted as vertex tuples.
std::string complex_to_json(const SimplicialComplex& k);

}  // namespace tdlc::complex
