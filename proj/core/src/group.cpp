#include "tdlc/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "tdlc/error.hpp"

namespace tdlc::group {

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), Point{0});
  return p;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  Permutation out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = g[h[i]];
  return out;
}

Permutation inverse(const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = static_cast<Point>(i);
  return out;
}

bool is_permutation(const Permutation& p, std::size_t degree) {
  if (p.size() != degree) return false;
  std::vector<char> seen(degree, 0);
  for (Point x : p) {
    if (x >= degree || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::string to_string(const Permutation& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t order_cap)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (!is_permutation(g, degree_))
      throw InputError("group", "generator " + to_string(g) + " is not a permutation of degree " +
                                    std::to_string(degree_));
  std::vector<Permutation> found{identity_permutation(degree_)};
  std::map<Permutation, std::size_t> seen{{found.front(), 0}};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& s : generators_) {
      Permutation next = compose(found[head], s);
      if (seen.emplace(next, found.size()).second) {
        found.push_back(std::move(next));
        if (found.size() > order_cap)
          throw ResourceLimit("group", "group order exceeds cap of " + std::to_string(order_cap));
      }
    }
  }
  std::sort(found.begin(), found.end());
  elements_ = std::move(found);
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);

  const std::size_t n = elements_.size();
  if (n <= 2048) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        table_[a * n + b] = static_cast<std::uint32_t>(index_.at(compose(elements_[a], elements_[b])));
  }
}

std::optional<std::size_t> PermGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PermGroup::require_index(const Permutation& p) const {
  auto i = index_of(p);
  if (!i) throw InputError("group", "permutation " + to_string(p) + " is not in the group");
  return *i;
}

std::size_t PermGroup::multiply(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * elements_.size() + b];
  return index_.at(compose(elements_.at(a), elements_.at(b)));
}

std::size_t PermGroup::inverse(std::size_t a) const {
  return index_.at(group::inverse(elements_.at(a)));
}

std::vector<std::size_t> PermGroup::generator_indices() const {
  std::vector<std::size_t> out;
  for (const auto& g : generators_) out.push_back(index_.at(g));
  return out;
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::generated_by(const PermGroup& g, std::span<const Permutation> generators) {
  std::vector<std::size_t> idx;
  for (const auto& p : generators) {
    if (!is_permutation(p, g.degree()))
      throw InputError("group", "subgroup generator " + to_string(p) + " has wrong degree");
    auto i = g.index_of(p);
    if (!i) throw InputError("group", "subgroup generator " + to_string(p) + " is not in the group");
    idx.push_back(*i);
  }
  return generated_by_indices(g, idx);
}

Subgroup Subgroup::generated_by_indices(const PermGroup& g, std::span<const std::size_t> generators) {
  Subgroup u;
  u.member_.assign(g.order(), 0);
  std::vector<std::size_t> found{PermGroup::identity()};
  u.member_[PermGroup::identity()] = 1;
  for (std::size_t head = 0; head < found.size(); ++head)
    for (std::size_t s : generators) {
      std::size_t next = g.multiply(found[head], s);
      if (!u.member_[next]) {
        u.member_[next] = 1;
        found.push_back(next);
      }
    }
  std::sort(found.begin(), found.end());
  u.elements_ = std::move(found);
  return u;
}

Subgroup Subgroup::whole(const PermGroup& g) {
  Subgroup u;
  u.member_.assign(g.order(), 1);
  u.elements_.resize(g.order());
  std::iota(u.elements_.begin(), u.elements_.end(), std::size_t{0});
  return u;
}

Subgroup Subgroup::trivial(const PermGroup& g) {
  Subgroup u;
  u.member_.assign(g.order(), 0);
  u.member_[PermGroup::identity()] = 1;
  u.elements_ = {PermGroup::identity()};
  return u;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](std::size_t e) { return other.contains(e); });
}

bool Subgroup::is_normal_in(const PermGroup& g) const {
  for (std::size_t s : g.generator_indices())
    if (!(conjugate(g, s) == *this)) return false;
  return true;
}

Subgroup Subgroup::conjugate(const PermGroup& g, std::size_t by) const {
  Subgroup out;
  out.member_.assign(member_.size(), 0);
  const std::size_t inv = g.inverse(by);
  for (std::size_t e : elements_) {
    std::size_t c = g.multiply(g.multiply(inv, e), by);
    out.member_[c] = 1;
    out.elements_.push_back(c);
  }
  std::sort(out.elements_.begin(), out.elements_.end());
  return out;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  Subgroup out;
  out.member_.assign(member_.size(), 0);
  for (std::size_t e : elements_)
    if (other.contains(e)) {
      out.member_[e] = 1;
      out.elements_.push_back(e);
    }
  return out;
}

Subgroup Subgroup::join(const PermGroup& g, const Subgroup& other) const {
  std::vector<std::size_t> gens = elements_;
  gens.insert(gens.end(), other.elements_.begin(), other.elements_.end());
  return generated_by_indices(g, gens);
}

// ---------------------------------------------------------------------------

CosetTable::CosetTable(const PermGroup& g, Subgroup u) : subgroup_(std::move(u)) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  coset_of_.assign(g.order(), unset);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset_of_[x] != unset) continue;
    // Elements are visited in lexicographic order, so x is the least element of xU.
    const std::size_t id = representatives_.size();
    representatives_.push_back(x);
    for (std::size_t e : subgroup_.elements()) coset_of_[g.multiply(x, e)] = id;
  }
}

}  // namespace tdlc::group
