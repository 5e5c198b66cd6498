#include "tdlc/complex.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace tdlc::complex {

using linalg::Integer;
using linalg::SparseMatrix;
using linalg::SparseVector;

namespace {

void sort_unique(std::vector<Simplex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_cap(std::size_t total, const Caps& caps) {
  if (total > caps.simplices)
    throw ResourceLimit("complex", "simplex count exceeds cap of " + std::to_string(caps.simplices));
}

}  // namespace

SimplicialComplex SimplicialComplex::closure(std::vector<Simplex> simplices, const Caps& caps) {
  std::vector<std::vector<Simplex>> levels;
  for (auto& s : simplices) {
    if (s.empty()) throw InputError("complex", "empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InputError("complex", "simplex with a repeated vertex");
    if (levels.size() < s.size()) levels.resize(s.size());
    levels[s.size() - 1].push_back(std::move(s));
  }
  std::size_t total = 0;
  for (std::size_t p = levels.size(); p-- > 0;) {
    sort_unique(levels[p]);
    total += levels[p].size();
    check_cap(total, caps);
    if (p == 0) break;
    auto& below = levels[p - 1];
    for (const auto& s : levels[p])
      for (std::size_t i = 0; i <= p; ++i) {
        Simplex f;
        f.reserve(p);
        for (std::size_t j = 0; j <= p; ++j)
          if (j != i) f.push_back(s[j]);
        below.push_back(std::move(f));
      }
  }
  SimplicialComplex k;
  k.levels_ = std::move(levels);
  return k;
}

SimplicialComplex SimplicialComplex::from_levels(std::vector<std::vector<Simplex>> levels) {
  while (!levels.empty() && levels.back().empty()) levels.pop_back();
  SimplicialComplex k;
  k.levels_ = std::move(levels);
  for (std::size_t p = 0; p < k.levels_.size(); ++p) {
    const auto& lv = k.levels_[p];
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (lv[i].size() != p + 1 || !std::is_sorted(lv[i].begin(), lv[i].end()) ||
          std::adjacent_find(lv[i].begin(), lv[i].end()) != lv[i].end())
        throw InputError("complex", "malformed simplex in dimension " + std::to_string(p));
      if (i > 0 && !(lv[i - 1] < lv[i]))
        throw InputError("complex", "simplices not sorted in dimension " + std::to_string(p));
      if (p == 0) continue;
      for (std::size_t j = 0; j <= p; ++j) {
        Simplex f = lv[i];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
        if (!std::binary_search(k.levels_[p - 1].begin(), k.levels_[p - 1].end(), f))
          throw InputError("complex", "complex is not closed under faces");
      }
    }
  }
  return k;
}

std::size_t SimplicialComplex::size() const {
  std::size_t n = 0;
  for (const auto& l : levels_) n += l.size();
  return n;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t p) const {
  static const std::vector<Simplex> empty;
  return p < levels_.size() ? levels_[p] : empty;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > levels_.size()) return std::nullopt;
  const auto& lv = levels_[s.size() - 1];
  auto it = std::lower_bound(lv.begin(), lv.end(), s);
  if (it == lv.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - lv.begin());
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  for (const auto& lv : levels_)
    for (const auto& s : lv)
      if (!other.contains(s)) return false;
  return true;
}

SimplicialComplex SimplicialComplex::restrict_below(Vertex n) const {
  SimplicialComplex k;
  for (const auto& lv : levels_) {
    std::vector<Simplex> kept;
    for (const auto& s : lv)
      if (s.back() < n) kept.push_back(s);
    if (kept.empty()) break;
    k.levels_.push_back(std::move(kept));
  }
  return k;
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t p = 0; p < levels_.size(); ++p)
    chi += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(levels_[p].size());
  return chi;
}

// ---------------------------------------------------------------------------

SimplicialComplex rips_from_neighborhoods(const std::vector<std::vector<std::size_t>>& nbhd,
                                          std::size_t max_dim, const Caps& caps) {
  const std::size_t n = nbhd.size();
  std::vector<std::vector<Vertex>> up(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : nbhd[v])
      if (w > v) up[v].push_back(static_cast<Vertex>(w));

  std::vector<std::vector<Simplex>> levels(n ? max_dim + 1 : 0);
  std::size_t total = 0;
  Simplex current;

  // Depth-first over cliques whose vertices increase; `candidates` holds the
  // common higher neighbors of `current`.
  auto extend = [&](auto&& self, const std::vector<Vertex>& candidates) -> void {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      Vertex w = candidates[i];
      current.push_back(w);
      levels[current.size() - 1].push_back(current);
      check_cap(++total, caps);
      if (current.size() <= max_dim) {
        std::vector<Vertex> next;
        const auto& uw = up[w];
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(),
                              uw.begin(), uw.end(), std::back_inserter(next));
        if (!next.empty()) self(self, next);
      }
      current.pop_back();
    }
  };

  for (std::size_t v = 0; v < n; ++v) {
    current.assign(1, static_cast<Vertex>(v));
    levels[0].push_back(current);
    check_cap(++total, caps);
    if (max_dim >= 1) extend(extend, up[v]);
  }
  while (!levels.empty() && levels.back().empty()) levels.pop_back();
  // DFS in increasing order emits every level already in lexicographic order.
  return SimplicialComplex::from_levels(std::move(levels));
}

SimplicialComplex rips(const germ::Ball& ball, std::size_t d, std::size_t max_dim, const Caps& caps) {
  if (d < 1) throw InputError("complex", "Rips scale must be >= 1");
  if (max_dim < 1) throw InputError("complex", "Rips max_dim must be >= 1");
  return rips_from_neighborhoods(germ::neighborhoods(ball, d), max_dim, caps);
}

SimplicialComplex graph_complex(const germ::Ball& ball) {
  std::vector<std::vector<Simplex>> levels(1);
  for (std::size_t v = 0; v < ball.size(); ++v) levels[0].push_back({static_cast<Vertex>(v)});
  if (!ball.edges.empty()) {
    levels.emplace_back();
    for (auto [i, j] : ball.edges) levels[1].push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
  }
  return SimplicialComplex::from_levels(std::move(levels));
}

SimplicialComplex subdivide(const SimplicialComplex& k) {
  std::vector<std::size_t> offset(static_cast<std::size_t>(std::max(k.dim(), 0)) + 2, 0);
  for (std::size_t p = 0; p + 1 < offset.size(); ++p) offset[p + 1] = offset[p] + k.count(p);
  auto id = [&](const Simplex& s) { return static_cast<Vertex>(offset[s.size() - 1] + *k.index_of(s)); };

  // Each complete flag of faces ending at s is a top simplex of sd(s); the
  // closure supplies the partial flags.
  std::vector<Simplex> out;
  Simplex flag;
  auto descend = [&](auto&& self, const Simplex& s) -> void {
    flag.push_back(id(s));
    if (s.size() == 1) {
      Simplex t = flag;
      std::sort(t.begin(), t.end());
      out.push_back(std::move(t));
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        self(self, f);
      }
    }
    flag.pop_back();
  };
  for (std::size_t p = 0; p < k.levels().size(); ++p)
    for (const auto& s : k.simplices(p)) descend(descend, s);
  return SimplicialComplex::closure(std::move(out));
}

// ---------------------------------------------------------------------------

SparseMatrix<Integer> ChainComplex::boundary(std::size_t p) const {
  if (p < boundaries.size()) return boundaries[p];
  std::size_t rows = p == 0 ? (augmented ? 1 : 0) : rank(p - 1);
  return SparseMatrix<Integer>(rows, rank(p));
}

void ChainComplex::check() const {
  for (std::size_t p = 1; p < boundaries.size(); ++p)
    if (!(boundary(p - 1) * boundary(p)).is_zero())
      throw InvariantViolation("complex", "boundary of boundary is nonzero in degree " + std::to_string(p));
}

namespace {

// Builds the complex on the simplices of L selected by `keep`.
template <typename Keep>
ChainComplex build_chain_complex(const SimplicialComplex& l, linalg::Ring ring, bool augmented, Keep keep) {
  ChainComplex c;
  c.ring = ring;
  c.augmented = augmented;
  const std::size_t levels = l.levels().size();
  std::vector<std::vector<std::ptrdiff_t>> local(levels);
  for (std::size_t p = 0; p < levels; ++p) {
    std::ptrdiff_t next = 0;
    for (const auto& s : l.simplices(p)) local[p].push_back(keep(s) ? next++ : -1);
    c.ranks.push_back(static_cast<std::size_t>(next));
  }
  while (!c.ranks.empty() && c.ranks.back() == 0) c.ranks.pop_back();

  const std::size_t n0 = c.rank(0);
  if (augmented) {
    std::vector<SparseVector<Integer>> cols(n0, SparseVector<Integer>{{0, Integer(1)}});
    c.boundaries.push_back(SparseMatrix<Integer>::from_columns(1, std::move(cols)));
  } else {
    c.boundaries.emplace_back(0, n0);
  }
  for (std::size_t p = 1; p < c.ranks.size(); ++p) {
    std::vector<SparseVector<Integer>> cols;
    cols.reserve(c.ranks[p]);
    const auto& lv = l.simplices(p);
    for (std::size_t j = 0; j < lv.size(); ++j) {
      if (local[p][j] < 0) continue;
      SparseVector<Integer> col;
      for (std::size_t i = 0; i <= p; ++i) {
        Simplex f = lv[j];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        std::ptrdiff_t row = local[p - 1][*l.index_of(f)];
        if (row < 0) continue;
        col.emplace_back(static_cast<std::size_t>(row), Integer(i % 2 == 0 ? 1 : -1));
      }
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      cols.push_back(std::move(col));
    }
    c.boundaries.push_back(SparseMatrix<Integer>::from_columns(c.ranks[p - 1], std::move(cols)));
  }
  return c;
}

}  // namespace

ChainComplex chain_complex(const SimplicialComplex& k, linalg::Ring ring, bool augmented) {
  return build_chain_complex(k, ring, augmented, [](const Simplex&) { return true; });
}

ChainComplex relative_chain_complex(const SimplicialComplex& l, const SimplicialComplex& k,
                                    linalg::Ring ring, bool augmented) {
  if (!k.is_subcomplex_of(l)) throw InputError("complex", "relative complex needs K inside L");
  return build_chain_complex(l, ring, augmented && k.dim() < 0,
                             [&](const Simplex& s) { return !k.contains(s); });
}

// ---------------------------------------------------------------------------

SimplicialComplex complex_from_json(std::string_view text, const Caps& caps) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("complex", std::string("invalid complex JSON: ") + e.what());
  }
  std::vector<Simplex> simplices;
  try {
    for (const auto& s : j.at("simplices")) {
      if (!s.is_array()) throw InputError("complex", "each simplex must be an array of vertex ids");
      Simplex t;
      for (const auto& v : s) {
        if (!v.is_number_unsigned()) throw InputError("complex", "vertex ids must be non-negative integers");
        auto x = v.get<std::uint64_t>();
        if (x > 0xffffffffull) throw InputError("complex", "vertex id too large");
        t.push_back(static_cast<Vertex>(x));
      }
      simplices.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("complex", std::string("malformed complex JSON: ") + e.what());
  }
  return SimplicialComplex::closure(std::move(simplices), caps);
}

std::string complex_to_json(const SimplicialComplex& k) {
  std::vector<Simplex> all;
  for (const auto& lv : k.levels()) all.insert(all.end(), lv.begin(), lv.end());
  std::sort(all.begin(), all.end());
  std::ostringstream os;
  os << "{\"simplices\": [";
  for (std::size_t i = 0; i < all.size(); ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t j = 0; j < all[i].size(); ++j) os << (j ? ", " : "") << all[i][j];
    os << ']';
  }
  os << "]}\n";
  return os.str();
}

}  // namespace tdlc::complex
