#include "tdlc/homology.hpp"

#include <algorithm>
#include <sstream>

namespace tdlc::homology {

using complex::ChainComplex;
using complex::SimplicialComplex;
using linalg::Integer;
using linalg::Rational;
using linalg::Ring;
using linalg::SparseVector;

const HomologyGroup& HomologySummary::at(std::size_t p) const {
  static const HomologyGroup zero;
  return p < groups.size() ? groups[p] : zero;
}

std::string format_group(const HomologyGroup& h, Ring ring) {
  if (h.is_zero()) return "0";
  std::ostringstream os;
  const char* base = ring == Ring::Z ? "Z" : "Q";
  bool first = true;
  if (h.betti > 0) {
    os << base;
    if (h.betti > 1) os << '^' << h.betti;
    first = false;
  }
  for (const auto& t : h.torsion) {
    os << (first ? "" : " + ") << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

std::string HomologySummary::to_string() const {
  std::ostringstream os;
  const char* h = reduced ? "~H" : "H";
  for (std::size_t p = 0; p < groups.size(); ++p)
    os << (p ? ", " : "") << h << p << '=' << format_group(groups[p], ring);
  return os.str();
}

namespace {

struct BoundaryData {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

BoundaryData analyse(const linalg::SparseMatrix<Integer>& d, Ring ring) {
  BoundaryData out;
  if (d.is_zero()) return out;
  if (ring == Ring::Q) {
    out.rank = linalg::rank_q(d);
    return out;
  }
  auto factors = linalg::invariant_factors(d);
  out.rank = factors.size();
  for (auto& f : factors)
    if (f > 1) out.torsion.push_back(std::move(f));
  return out;
}

HomologyGroup group_at(const ChainComplex& c, std::size_t p) {
  auto in = analyse(c.boundary(p), c.ring);
  auto out = analyse(c.boundary(p + 1), c.ring);
  HomologyGroup h;
  h.betti = c.rank(p) - in.rank - out.rank;
  h.torsion = std::move(out.torsion);
  return h;
}

SparseVector<Integer> map_chain(const SparseVector<Integer>& v, const std::vector<std::size_t>& index) {
  SparseVector<Integer> out;
  for (const auto& [i, x] : v) out.emplace_back(index[i], x);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

SparseVector<Rational> map_chain(const SparseVector<Rational>& v, const std::vector<std::size_t>& index) {
  SparseVector<Rational> out;
  for (const auto& [i, x] : v) out.emplace_back(index[i], x);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

HomologySummary homology(const ChainComplex& c) {
  HomologySummary s;
  s.ring = c.ring;
  s.reduced = c.augmented;
  std::size_t top = c.ranks.empty() ? 0 : c.ranks.size() - 1;
  std::vector<BoundaryData> d;
  for (std::size_t p = 0; p <= top + 1; ++p) d.push_back(analyse(c.boundary(p), c.ring));
  for (std::size_t p = 0; p <= top; ++p) {
    HomologyGroup h;
    h.betti = c.rank(p) - d[p].rank - d[p + 1].rank;
    h.torsion = d[p + 1].torsion;
    s.groups.push_back(std::move(h));
  }
  return s;
}

linalg::SpanReducer boundary_span_q(const ChainComplex& c, std::size_t p) {
  linalg::SpanReducer r(c.rank(p));
  auto d = c.boundary(p + 1);
  for (const auto& col : d.columns()) r.add(linalg::to_rational(col));
  return r;
}

std::vector<SparseVector<Rational>> homology_basis_q(const ChainComplex& c, std::size_t p) {
  auto d = c.boundary(p);
  linalg::SpanReducer cycles(d.rows(), true);
  for (const auto& col : d.columns()) cycles.add(linalg::to_rational(col));
  auto boundaries = boundary_span_q(c, p);
  std::vector<SparseVector<Rational>> out;
  for (const auto& z : cycles.kernel())
    if (boundaries.add(z)) out.push_back(z);
  return out;
}

InducedMap induced_map(const SimplicialComplex& k, const SimplicialComplex& l, std::size_t p, Ring ring,
                       bool reduced) {
  if (!k.is_subcomplex_of(l)) throw InputError("homology", "K is not a subcomplex of L");
  ChainComplex ck = complex::chain_complex(k, ring, reduced);
  ChainComplex cl = complex::chain_complex(l, ring, reduced);

  InducedMap m;
  m.p = p;
  m.ring = ring;
  m.source = group_at(ck, p);
  m.target = group_at(cl, p);

  std::vector<std::size_t> index;
  for (const auto& s : k.simplices(p)) index.push_back(*l.index_of(s));

  auto source_basis = homology_basis_q(ck, p);
  auto target_basis = homology_basis_q(cl, p);
  auto dl = cl.boundary(p + 1);
  linalg::SpanReducer target(cl.rank(p), true);
  for (const auto& col : dl.columns()) target.add(linalg::to_rational(col));
  const std::size_t offset = dl.cols();
  for (const auto& z : target_basis) target.add(z);

  m.matrix = linalg::DenseMatrix<Rational>(target_basis.size(), source_basis.size());
  bool zero = true;
  for (std::size_t j = 0; j < source_basis.size(); ++j) {
    SparseVector<Rational> coef;
    auto residual = target.reduce(map_chain(source_basis[j], index), &coef);
    if (!residual.empty()) throw InvariantViolation("homology", "image of a cycle is not a cycle");
    for (const auto& [i, x] : coef)
      if (i >= offset) {
        m.matrix(i - offset, j) = x;
        zero = false;
      }
  }

  if (ring == Ring::Q) {
    m.trivial = zero;
    return m;
  }
  // Over Z decide on a lattice basis of the cycles, so torsion is seen.
  auto dk = ck.boundary(p);
  linalg::LatticeReducer cycles(dk.rows(), true);
  for (const auto& col : dk.columns()) cycles.add(col);
  linalg::LatticeReducer bounds(cl.rank(p));
  for (const auto& col : dl.columns()) bounds.add(col);
  m.trivial = true;
  for (const auto& z : cycles.kernel())
    if (!bounds.contains(map_chain(z, index))) {
      m.trivial = false;
      break;
    }
  return m;
}

}  // namespace tdlc::homology
