#pragma once

// Finite stages of the rational discrete standard bimodule: permutation
// modules Q[G/U] of a finite group, transfer maps between them, the right
// action by conjugated subgroups, and the module computations built on them.
//
// A finite group stands in for a t.d.l.c. group; every subgroup is compact
// open. Cosets are left cosets xU keyed by their least element.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdlc/error.hpp"
#include "tdlc/group.hpp"
#include "tdlc/linalg.hpp"

namespace tdlc::perm {

using group::PermGroup;
using group::Permutation;
using group::Subgroup;
using linalg::DenseMatrix;
using linalg::Rational;

// A group with named subgroups. "G" (whole group) and "1" (trivial) are
// always defined.
class CosetSystem {
 public:
  CosetSystem() = default;
  explicit CosetSystem(PermGroup g);

  // {"degree": n, "generators": [[...],...], "subgroups": {"U": [[...],...]}}
  static CosetSystem from_json(std::string_view text, const Caps& caps = {});

  const PermGroup& group() const { return group_; }
  void add(const std::string& name, const std::vector<Permutation>& generators);
  void add(const std::string& name, Subgroup u);
  const Subgroup& subgroup(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  PermGroup group_;
  std::map<std::string, Subgroup> subgroups_;
};

// Formal Q-combination of cosets xU; keys are least coset elements.
struct CosetVector {
  Subgroup subgroup;
  std::map<std::size_t, Rational> coefficients;

  friend bool operator==(const CosetVector& a, const CosetVector& b) {
    return a.subgroup == b.subgroup && a.coefficients == b.coefficients;
  }
};

std::string to_string(const PermGroup& g, const CosetVector& v);

// The basis vector xU.
CosetVector coset(const PermGroup& g, const Subgroup& u, std::size_t x);
CosetVector add(const CosetVector& a, const CosetVector& b);
CosetVector scaled(const CosetVector& a, const Rational& c);

// eta_{U,V}(xU) = 1/|U:V| sum_r x r V, r over representatives of V in U.
CosetVector transfer(const PermGroup& g, const Subgroup& v, const CosetVector& x);

// (xU).g = xg U^g with U^g = g^-1 U g.
CosetVector right_action(const PermGroup& g, const CosetVector& x, std::size_t element);
// g.(xU) = gxU.
CosetVector left_action(const PermGroup& g, const CosetVector& x, std::size_t element);

// A finite-dimensional Q[G]-module: one matrix per generator of G, images
// of all elements computed by closure.
class Representation {
 public:
  // Throws InputError unless the generator matrices extend to a
  // homomorphism (checked on every element-generator product). `dim` is
  // only needed when G has no generators.
  Representation(const PermGroup& g, std::vector<DenseMatrix<Rational>> generator_matrices,
                 std::optional<std::size_t> dim = std::nullopt);

  static Representation trivial(const PermGroup& g);
  static Representation regular(const PermGroup& g);
  // Permutation module on the points moved by G.
  static Representation standard(const PermGroup& g);
  static Representation cosets(const PermGroup& g, const Subgroup& u);
  // {"matrices": [[[a, b], [c, d]], ...]} with entries as integers or "p/q".
  static Representation from_json(const PermGroup& g, std::string_view text);

  std::size_t dim() const { return dim_; }
  const DenseMatrix<Rational>& matrix(std::size_t element) const { return images_.at(element); }
  std::vector<Rational> act(std::size_t element, const std::vector<Rational>& a) const;
  // Elements fixing a.
  Subgroup stabilizer(const PermGroup& g, const std::vector<Rational>& a) const;

 private:
  std::size_t dim_ = 0;
  std::vector<DenseMatrix<Rational>> images_;
};

enum class RepresentativeChoice { Least, Greatest };

// theta(Ug (x) a) = 1/|U:U n W| sum_r r.(g.a), W = stab(g.a), r over
// representatives of U n W in U. W is read as the stabilizer of the module
// element g.a.
std::vector<Rational> theta(const PermGroup& g, const Subgroup& u, std::size_t element, const Representation& a,
                            const std::vector<Rational>& vector,
                            RepresentativeChoice choice = RepresentativeChoice::Least);

struct PhiWitness {
  DenseMatrix<Rational> invariant_basis;  // dim A x dim A^U, columns
  std::vector<std::size_t> coinvariant_basis;  // standard basis vectors spanning A_U
  DenseMatrix<Rational> phi;  // dim A_U x dim A^U
  bool isomorphism = false;

  std::size_t invariants_dim() const { return invariant_basis.cols(); }
  std::size_t coinvariants_dim() const { return coinvariant_basis.size(); }
};

// phi(a) = a (x)_U 1 from fixed points to coinvariants.
PhiWitness invariants_vs_coinvariants(const PermGroup& g, const Subgroup& u, const Representation& a);

struct MackeyFactor {
  std::size_t representative = 0;  // least element of U g V
  Subgroup stabilizer;             // U n gVg^-1
  std::size_t index = 0;           // |U : stabilizer|
};

// res^G_U Q[G/V] = sum over double cosets UgV of Q[U/(U n gVg^-1)].
std::vector<MackeyFactor> mackey_restrict(const PermGroup& g, const Subgroup& u, const Subgroup& v);

struct Collapse {
  PermGroup quotient;       // G/N acting on the cosets of N
  Subgroup image;           // UN/N
  std::size_t dimension = 0;  // |G : UN|
  DenseMatrix<Rational> map;  // dimension x |G:U|, xU -> xUN
};

// Q (x)_N Q[G/U] = Q[(G/N)/(UN/N)]. N must be normal.
Collapse coinvariants_bi(const PermGroup& g, const Subgroup& n, const Subgroup& u);

struct Summand {
  DenseMatrix<Rational> inclusion;   // |G:U| x |H:U|
  DenseMatrix<Rational> projection;  // |H:U| x |G:U|
  bool retraction = false;           // projection * inclusion = identity
  bool equivariant = false;          // both commute with every h in H
};

// Q[H/U] as an H-direct summand of Q[G/U]; U <= H required.
Summand open_summand_check(const PermGroup& g, const Subgroup& h, const Subgroup& u);

// dim H_k(G; Q) from the unnormalized bar complex; |G| <= 48, k <= 2.
std::size_t bar_homology_q(const PermGroup& g, std::size_t k);

// Every subgroup, sorted by (order, elements).
std::vector<Subgroup> all_subgroups(const PermGroup& g);

struct NamedGroup {
  std::string name;
  std::size_t degree;
  std::vector<Permutation> generators;
};

// Small groups (order <= 24) used by the tests and documentation.
std::vector<NamedGroup> group_catalogue();

}  // namespace tdlc::perm
