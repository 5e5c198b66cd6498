#pragma once

// Graph germs: lazily expandable, locally finite, connected graphs standing in
// for Cayley-Abels graphs of compactly generated t.d.l.c. groups, and finite
// BFS windows (balls) cut out of them.
//
// Only quasi-isometry invariant conclusions drawn from a germ say anything
// about the group it models.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdlc/error.hpp"
#include "tdlc/group.hpp"

namespace tdlc::germ {

// Canonical vertex address. Equal addresses denote equal vertices; the
// encoding is kind specific (reduced words, lattice points, tree pairs).
using Address = std::vector<std::int64_t>;

std::string format_address(const Address& a);

class GraphGerm {
 public:
  virtual ~GraphGerm() = default;

  virtual Address root() const = 0;
  // Finite and order-stable; no loops, no repeats.
  virtual std::vector<Address> neighbors(const Address& v) const = 0;
  virtual std::size_t degree_bound() const = 0;
  // Spec string understood by parse_germ (when one exists).
  virtual std::string describe() const = 0;
  // Set only for finite graphs.
  virtual std::optional<std::size_t> diameter() const { return std::nullopt; }
};

using GermPtr = std::shared_ptr<const GraphGerm>;

GermPtr regular_tree(int degree);
GermPtr biregular_tree(int degree1, int degree2);
GermPtr grid(int dimension);
GermPtr free_group(int rank);
// Horocyclic product of the trees with p and q children per vertex; DL(2,2)
// is the Cayley graph of the lamplighter group.
GermPtr diestel_leader(int p, int q);
GermPtr finite_graph(std::size_t vertices, std::span<const std::pair<std::size_t, std::size_t>> edges);
GermPtr product(GermPtr first, GermPtr second);

// `tree:3`, `bitree:3,4`, `grid:2`, `free:2`, `dl:2,2`, `product:tree:3|grid:1`,
// `file:PATH`.
GermPtr parse_germ(std::string_view spec);

// `{"vertices": N, "edges": [[i,j],...]}` with 0-based ids.
GermPtr finite_graph_from_json(std::string_view text);

struct Ball {
  std::size_t r = 0;
  std::vector<Address> vertices;    // id -> address, ids in BFS order
  std::vector<std::size_t> radius;  // id -> distance from the root
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (i, j), i < j, sorted
  std::vector<std::vector<std::size_t>> adjacency;         // sorted neighbor ids

  std::size_t size() const { return vertices.size(); }
  // Number of vertices at distance <= rad; these are exactly ids [0, n).
  std::size_t prefix_within(std::size_t rad) const;
};

// BFS window of radius r around the root. Ids are assigned in BFS order,
// expanding vertices by id and their unseen neighbors in lexicographic
// address order, so ball(g, r) is an id-prefix of ball(g, r') for r <= r'.
Ball ball(const GraphGerm& germ, std::size_t r, const Caps& caps = {});

// Graph distance inside the ball (never shorter than the germ distance; may
// be longer near the boundary).
std::size_t distance(const Ball& b, std::size_t u, std::size_t v);

// Vertices within ball-distance <= d of v, including v, sorted by id.
std::vector<std::vector<std::size_t>> neighborhoods(const Ball& b, std::size_t d);

std::string ball_to_json(const Ball& b);

// Finite wreath product B wr_X H with compact open subgroup model A^X x| U.
struct WreathSpec {
  std::size_t b_degree = 1;
  std::vector<group::Permutation> b_generators;
  std::vector<group::Permutation> a_generators;  // must lie in B
  std::size_t h_degree = 1;
  std::vector<group::Permutation> h_generators;
  std::size_t x_size = 1;
  // Permutation of X for each H generator; must define an action of H.
  std::vector<group::Permutation> x_action;
};

WreathSpec wreath_spec_from_json(std::string_view text, std::vector<group::Permutation>* u_generators);

// Coset graph of G = B^X x| H on G / (A^X x| U): gK ~ g k s K for k in K and
// s in S u S^-1, where S holds one copy of each B generator per H-orbit of X
// plus the H generators. The graph is G-invariant, hence vertex transitive.
// Returned as a ball around the base coset covering the whole graph.
Ball wreath_cayley_abels(const WreathSpec& spec, std::span<const group::Permutation> u_generators,
                         const Caps& caps = {});

}  // namespace tdlc::germ
