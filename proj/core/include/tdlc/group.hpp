#pragma once

// Small finite permutation groups with full element enumeration.
//
// Permutations are image vectors: p[i] is the image of point i. Products
// compose right to left, (g * h)(i) = g(h(i)). Elements of a group are kept
// in lexicographic order of their image vectors, so the identity is always
// element 0 and "least element" means lexicographically least.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdlc::group {

using Point = std::uint32_t;
using Permutation = std::vector<Point>;

Permutation identity_permutation(std::size_t degree);
Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
bool is_permutation(const Permutation& p, std::size_t degree);
std::string to_string(const Permutation& p);

class PermGroup {
 public:
  PermGroup() = default;

  // Enumerates the group generated by `generators`; throws ResourceLimit if
  // the order exceeds `order_cap` and InputError on malformed generators.
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::size_t order_cap = 200'000);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_.at(i); }

  std::optional<std::size_t> index_of(const Permutation& p) const;
  std::size_t require_index(const Permutation& p) const;
  bool contains(const Permutation& p) const { return index_of(p).has_value(); }

  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  static constexpr std::size_t identity() { return 0; }

  std::vector<std::size_t> generator_indices() const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::map<Permutation, std::size_t> index_;
  // Multiplication table, filled for small groups only.
  std::vector<std::uint32_t> table_;
};

// A subgroup of a PermGroup, held as a sorted set of element indices.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup generated_by(const PermGroup& g, std::span<const Permutation> generators);
  static Subgroup generated_by_indices(const PermGroup& g, std::span<const std::size_t> generators);
  static Subgroup whole(const PermGroup& g);
  static Subgroup trivial(const PermGroup& g);

  std::size_t order() const { return elements_.size(); }
  const std::vector<std::size_t>& elements() const { return elements_; }
  bool contains(std::size_t element) const {
    return element < member_.size() && member_[element];
  }
  bool is_subgroup_of(const Subgroup& other) const;
  bool is_normal_in(const PermGroup& g) const;

  // g^{-1} U g
  Subgroup conjugate(const PermGroup& g, std::size_t by) const;
  Subgroup intersect(const Subgroup& other) const;
  // The subgroup generated by both (for normal `other` this is U N).
  Subgroup join(const PermGroup& g, const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<std::size_t> elements_;
  std::vector<char> member_;
};

// Left cosets xU of a subgroup, each keyed by its least element.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(const PermGroup& g, Subgroup u);

  const Subgroup& subgroup() const { return subgroup_; }
  std::size_t size() const { return representatives_.size(); }
  const std::vector<std::size_t>& representatives() const { return representatives_; }
  std::size_t representative(std::size_t coset) const { return representatives_.at(coset); }
  // Coset index containing the given group element.
  std::size_t coset_of(std::size_t element) const { return coset_of_.at(element); }
  std::size_t canonical(std::size_t element) const { return representatives_[coset_of(element)]; }

 private:
  Subgroup subgroup_;
  std::vector<std::size_t> representatives_;
  std::vector<std::size_t> coset_of_;
};

}  // namespace tdlc::group
