#include "tdlc/perm.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tdlc::perm {

using linalg::SparseMatrix;
using linalg::SparseVector;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError("perm", message);
}

// Least element of xU.
std::size_t canonical(const PermGroup& g, const Subgroup& u, std::size_t x) {
  std::size_t best = g.multiply(x, u.elements().front());
  for (std::size_t e : u.elements()) best = std::min(best, g.multiply(x, e));
  return best;
}

// Least (or greatest) element of each left coset of `sub` inside `u`.
std::vector<std::size_t> representatives(const PermGroup& g, const Subgroup& u, const Subgroup& sub,
                                         RepresentativeChoice choice = RepresentativeChoice::Least) {
  std::map<std::size_t, std::size_t> by_key;
  for (std::size_t e : u.elements()) {
    std::size_t key = canonical(g, sub, e);
    auto [it, fresh] = by_key.emplace(key, e);
    if (!fresh && choice == RepresentativeChoice::Greatest) it->second = std::max(it->second, e);
  }
  std::vector<std::size_t> out;
  for (const auto& [key, e] : by_key) out.push_back(e);
  return out;
}

DenseMatrix<Rational> identity_matrix(std::size_t n) { return DenseMatrix<Rational>::identity(n); }

Rational parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw InputError("perm", "bad rational '" + j.get<std::string>() + "'");
    if (q.get_den() == 0) throw InputError("perm", "zero denominator");
    q.canonicalize();
    return q;
  }
  throw InputError("perm", "matrix entries must be integers or \"p/q\" strings");
}

std::vector<Permutation> read_perms(const nlohmann::json& j) {
  std::vector<Permutation> out;
  for (const auto& p : j) out.push_back(p.get<Permutation>());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

CosetSystem::CosetSystem(PermGroup g) : group_(std::move(g)) {
  subgroups_.emplace("G", Subgroup::whole(group_));
  subgroups_.emplace("1", Subgroup::trivial(group_));
}

CosetSystem CosetSystem::from_json(std::string_view text, const Caps& caps) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("perm", std::string("invalid group JSON: ") + e.what());
  }
  try {
    CosetSystem sys(PermGroup(j.at("degree").get<std::size_t>(), read_perms(j.at("generators")), caps.group_order));
    if (j.contains("subgroups"))
      for (const auto& [name, gens] : j.at("subgroups").items()) sys.add(name, read_perms(gens));
    return sys;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("perm", std::string("malformed group JSON: ") + e.what());
  }
}

void CosetSystem::add(const std::string& name, const std::vector<Permutation>& generators) {
  add(name, Subgroup::generated_by(group_, generators));
}

void CosetSystem::add(const std::string& name, Subgroup u) {
  require(!subgroups_.count(name), "subgroup '" + name + "' defined twice");
  subgroups_.emplace(name, std::move(u));
}

const Subgroup& CosetSystem::subgroup(const std::string& name) const {
  auto it = subgroups_.find(name);
  if (it == subgroups_.end()) throw InputError("perm", "unknown subgroup '" + name + "'");
  return it->second;
}

std::vector<std::string> CosetSystem::names() const {
  std::vector<std::string> out;
  for (const auto& [name, u] : subgroups_) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(const PermGroup& g, const CosetVector& v) {
  if (v.coefficients.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, c] : v.coefficients) {
    os << (first ? "" : " + ") << c.get_str() << "*" << group::to_string(g.element(x)) << "U";
    first = false;
  }
  return os.str();
}

CosetVector coset(const PermGroup& g, const Subgroup& u, std::size_t x) {
  CosetVector v{u, {}};
  v.coefficients.emplace(canonical(g, u, x), Rational(1));
  return v;
}

CosetVector add(const CosetVector& a, const CosetVector& b) {
  require(a.subgroup == b.subgroup, "adding vectors over different subgroups");
  CosetVector out = a;
  for (const auto& [x, c] : b.coefficients) {
    Rational s = out.coefficients[x] + c;
    if (s == 0)
      out.coefficients.erase(x);
    else
      out.coefficients[x] = s;
  }
  return out;
}

CosetVector scaled(const CosetVector& a, const Rational& c) {
  CosetVector out{a.subgroup, {}};
  if (c == 0) return out;
  for (const auto& [x, v] : a.coefficients) out.coefficients.emplace(x, v * c);
  return out;
}

CosetVector transfer(const PermGroup& g, const Subgroup& v, const CosetVector& x) {
  const Subgroup& u = x.subgroup;
  require(v.is_subgroup_of(u), "transfer needs V to be a subgroup of U");
  auto reps = representatives(g, u, v);
  const Rational w(1, static_cast<unsigned long>(reps.size()));
  CosetVector out{v, {}};
  for (const auto& [xi, c] : x.coefficients)
    for (std::size_t r : reps) out.coefficients[canonical(g, v, g.multiply(xi, r))] += c * w;
  std::erase_if(out.coefficients, [](const auto& e) { return e.second == 0; });
  return out;
}

CosetVector right_action(const PermGroup& g, const CosetVector& x, std::size_t element) {
  CosetVector out{x.subgroup.conjugate(g, element), {}};
  for (const auto& [xi, c] : x.coefficients)
    out.coefficients.emplace(canonical(g, out.subgroup, g.multiply(xi, element)), c);
  return out;
}

CosetVector left_action(const PermGroup& g, const CosetVector& x, std::size_t element) {
  CosetVector out{x.subgroup, {}};
  for (const auto& [xi, c] : x.coefficients)
    out.coefficients.emplace(canonical(g, x.subgroup, g.multiply(element, xi)), c);
  return out;
}

// ---------------------------------------------------------------------------

Representation::Representation(const PermGroup& g, std::vector<DenseMatrix<Rational>> generator_matrices,
                               std::optional<std::size_t> dim) {
  const auto gens = g.generator_indices();
  require(generator_matrices.size() == gens.size(),
          "representation needs one matrix per group generator (" + std::to_string(gens.size()) + ")");
  dim_ = generator_matrices.empty() ? dim.value_or(1) : generator_matrices.front().rows();
  for (const auto& m : generator_matrices)
    require(m.rows() == dim_ && m.cols() == dim_, "representation matrices must be square of equal size");

  std::vector<char> seen(g.order(), 0);
  images_.assign(g.order(), DenseMatrix<Rational>());
  images_[PermGroup::identity()] = identity_matrix(dim_);
  seen[PermGroup::identity()] = 1;
  std::vector<std::size_t> queue{PermGroup::identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t a = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::size_t b = g.multiply(a, gens[i]);
      DenseMatrix<Rational> m = images_[a] * generator_matrices[i];
      if (!seen[b]) {
        seen[b] = 1;
        images_[b] = std::move(m);
        queue.push_back(b);
      }
    }
  }
  // Every product a*s must match; this is the homomorphism check.
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!(images_[a] * generator_matrices[i] == images_[g.multiply(a, gens[i])]))
        throw InputError("perm", "matrices do not define a representation of the group");
}

Representation Representation::trivial(const PermGroup& g) {
  return Representation(g, std::vector<DenseMatrix<Rational>>(g.generators().size(), identity_matrix(1)));
}

Representation Representation::regular(const PermGroup& g) {
  std::vector<DenseMatrix<Rational>> mats;
  for (std::size_t s : g.generator_indices()) {
    DenseMatrix<Rational> m(g.order(), g.order());
    for (std::size_t h = 0; h < g.order(); ++h) m(g.multiply(s, h), h) = 1;
    mats.push_back(std::move(m));
  }
  return Representation(g, std::move(mats), g.order());
}

Representation Representation::standard(const PermGroup& g) {
  std::vector<DenseMatrix<Rational>> mats;
  for (const auto& s : g.generators()) {
    DenseMatrix<Rational> m(g.degree(), g.degree());
    for (std::size_t i = 0; i < g.degree(); ++i) m(s[i], i) = 1;
    mats.push_back(std::move(m));
  }
  return Representation(g, std::move(mats), g.degree());
}

Representation Representation::cosets(const PermGroup& g, const Subgroup& u) {
  group::CosetTable table(g, u);
  std::vector<DenseMatrix<Rational>> mats;
  for (std::size_t s : g.generator_indices()) {
    DenseMatrix<Rational> m(table.size(), table.size());
    for (std::size_t c = 0; c < table.size(); ++c) m(table.coset_of(g.multiply(s, table.representative(c))), c) = 1;
    mats.push_back(std::move(m));
  }
  return Representation(g, std::move(mats), table.size());
}

Representation Representation::from_json(const PermGroup& g, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("perm", std::string("invalid module JSON: ") + e.what());
  }
  try {
    std::vector<DenseMatrix<Rational>> mats;
    for (const auto& mj : j.at("matrices")) {
      const std::size_t n = mj.size();
      DenseMatrix<Rational> m(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        require(mj[r].size() == n, "module matrices must be square");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_rational(mj[r][c]);
      }
      mats.push_back(std::move(m));
    }
    return Representation(g, std::move(mats));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("perm", std::string("malformed module JSON: ") + e.what());
  }
}

std::vector<Rational> Representation::act(std::size_t element, const std::vector<Rational>& a) const {
  require(a.size() == dim_, "module vector has the wrong dimension");
  const auto& m = images_.at(element);
  std::vector<Rational> out(dim_, Rational(0));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (m(i, j) != 0 && a[j] != 0) out[i] += m(i, j) * a[j];
  return out;
}

Subgroup Representation::stabilizer(const PermGroup& g, const std::vector<Rational>& a) const {
  std::vector<std::size_t> fixing;
  for (std::size_t e = 0; e < g.order(); ++e)
    if (act(e, a) == a) fixing.push_back(e);
  return Subgroup::generated_by_indices(g, fixing);
}

std::vector<Rational> theta(const PermGroup& g, const Subgroup& u, std::size_t element, const Representation& a,
                            const std::vector<Rational>& vector, RepresentativeChoice choice) {
  const auto b = a.act(element, vector);
  const Subgroup w = a.stabilizer(g, b);
  const auto reps = representatives(g, u, u.intersect(w), choice);
  std::vector<Rational> out(a.dim(), Rational(0));
  for (std::size_t r : reps) {
    auto rb = a.act(r, b);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rb[i];
  }
  const Rational scale(1, static_cast<unsigned long>(reps.size()));
  for (auto& x : out) x *= scale;
  return out;
}

// ---------------------------------------------------------------------------

PhiWitness invariants_vs_coinvariants(const PermGroup&, const Subgroup& u, const Representation& a) {
  const std::size_t n = a.dim();
  std::vector<linalg::Entry<Rational>> entries;
  std::vector<SparseVector<Rational>> relations;  // (u - 1) e_j
  std::size_t row = 0;
  for (std::size_t e : u.elements()) {
    const auto& m = a.matrix(e);
    for (std::size_t i = 0; i < n; ++i, ++row)
      for (std::size_t j = 0; j < n; ++j) {
        Rational x = m(i, j) - (i == j ? 1 : 0);
        if (x != 0) entries.push_back({row, j, x});
      }
    for (std::size_t j = 0; j < n; ++j) {
      SparseVector<Rational> col;
      for (std::size_t i = 0; i < n; ++i) {
        Rational x = m(i, j) - (i == j ? 1 : 0);
        if (x != 0) col.emplace_back(i, x);
      }
      relations.push_back(std::move(col));
    }
  }
  auto stacked = SparseMatrix<Rational>::from_entries(row, n, entries);
  auto kernel = linalg::kernel_basis_q(stacked);

  PhiWitness w;
  w.invariant_basis = DenseMatrix<Rational>(n, kernel.size());
  for (std::size_t c = 0; c < kernel.size(); ++c)
    for (const auto& [i, x] : kernel[c]) w.invariant_basis(i, c) = x;

  linalg::SpanReducer quotient(n, true);
  for (auto& r : relations) quotient.add(std::move(r));
  const std::size_t offset = quotient.columns_added();
  for (std::size_t j = 0; j < n; ++j)
    if (quotient.add(SparseVector<Rational>{{j, Rational(1)}})) w.coinvariant_basis.push_back(j);

  w.phi = DenseMatrix<Rational>(w.coinvariant_basis.size(), kernel.size());
  for (std::size_t c = 0; c < kernel.size(); ++c) {
    SparseVector<Rational> coef;
    quotient.reduce(kernel[c], &coef);
    for (const auto& [idx, x] : coef) {
      if (idx < offset) continue;
      auto pos = std::find(w.coinvariant_basis.begin(), w.coinvariant_basis.end(), idx - offset);
      w.phi(static_cast<std::size_t>(pos - w.coinvariant_basis.begin()), c) = x;
    }
  }
  std::vector<linalg::Entry<Rational>> phi_entries;
  for (std::size_t i = 0; i < w.phi.rows(); ++i)
    for (std::size_t j = 0; j < w.phi.cols(); ++j)
      if (w.phi(i, j) != 0) phi_entries.push_back({i, j, w.phi(i, j)});
  const std::size_t rank =
      linalg::rank_q(SparseMatrix<Rational>::from_entries(w.phi.rows(), w.phi.cols(), phi_entries));
  w.isomorphism = w.phi.rows() == w.phi.cols() && rank == w.phi.cols();
  return w;
}

std::vector<MackeyFactor> mackey_restrict(const PermGroup& g, const Subgroup& u, const Subgroup& v) {
  std::vector<char> seen(g.order(), 0);
  std::vector<MackeyFactor> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    for (std::size_t a : u.elements()) {
      const std::size_t ax = g.multiply(a, x);
      for (std::size_t b : v.elements()) seen[g.multiply(ax, b)] = 1;
    }
    MackeyFactor f;
    f.representative = x;
    f.stabilizer = u.intersect(v.conjugate(g, g.inverse(x)));
    f.index = u.order() / f.stabilizer.order();
    out.push_back(std::move(f));
  }
  return out;
}

Collapse coinvariants_bi(const PermGroup& g, const Subgroup& n, const Subgroup& u) {
  if (!n.is_normal_in(g)) throw InputError("perm", "N is not a normal subgroup");
  group::CosetTable by_n(g, n);
  auto image_of = [&](std::size_t x) {
    Permutation p(by_n.size());
    for (std::size_t c = 0; c < by_n.size(); ++c)
      p[c] = static_cast<group::Point>(by_n.coset_of(g.multiply(x, by_n.representative(c))));
    return p;
  };
  std::vector<Permutation> gens;
  for (std::size_t s : g.generator_indices()) gens.push_back(image_of(s));
  Collapse out;
  out.quotient = PermGroup(by_n.size(), gens);
  std::vector<Permutation> u_images;
  for (std::size_t e : u.elements()) u_images.push_back(image_of(e));
  out.image = Subgroup::generated_by(out.quotient, u_images);
  group::CosetTable target(out.quotient, out.image);
  out.dimension = target.size();
  if (out.dimension * u.join(g, n).order() != g.order())
    throw InvariantViolation("perm", "collapsed dimension differs from |G : UN|");

  group::CosetTable source(g, u);
  out.map = DenseMatrix<Rational>(out.dimension, source.size());
  for (std::size_t c = 0; c < source.size(); ++c) {
    auto img = out.quotient.require_index(image_of(source.representative(c)));
    out.map(target.coset_of(img), c) = 1;
  }
  return out;
}

Summand open_summand_check(const PermGroup& g, const Subgroup& h, const Subgroup& u) {
  if (!u.is_subgroup_of(h)) throw InputError("perm", "U is not contained in H");
  group::CosetTable whole(g, u);
  std::vector<std::size_t> h_cosets;  // indices into `whole` of the cosets hU
  for (std::size_t c = 0; c < whole.size(); ++c)
    if (h.contains(whole.representative(c))) h_cosets.push_back(c);

  Summand s;
  s.inclusion = DenseMatrix<Rational>(whole.size(), h_cosets.size());
  s.projection = DenseMatrix<Rational>(h_cosets.size(), whole.size());
  for (std::size_t j = 0; j < h_cosets.size(); ++j) {
    s.inclusion(h_cosets[j], j) = 1;
    s.projection(j, h_cosets[j]) = 1;
  }
  s.retraction = s.projection * s.inclusion == identity_matrix(h_cosets.size());

  s.equivariant = true;
  for (std::size_t e : h.elements()) {
    DenseMatrix<Rational> big(whole.size(), whole.size());
    for (std::size_t c = 0; c < whole.size(); ++c) big(whole.coset_of(g.multiply(e, whole.representative(c))), c) = 1;
    DenseMatrix<Rational> small(h_cosets.size(), h_cosets.size());
    for (std::size_t j = 0; j < h_cosets.size(); ++j) {
      std::size_t target = whole.coset_of(g.multiply(e, whole.representative(h_cosets[j])));
      auto pos = std::find(h_cosets.begin(), h_cosets.end(), target);
      if (pos == h_cosets.end()) {
        s.equivariant = false;
        break;
      }
      small(static_cast<std::size_t>(pos - h_cosets.begin()), j) = 1;
    }
    if (!s.equivariant) break;
    if (!(s.inclusion * small == big * s.inclusion) || !(s.projection * big == small * s.projection)) {
      s.equivariant = false;
      break;
    }
  }
  return s;
}

std::size_t bar_homology_q(const PermGroup& g, std::size_t k) {
  if (k > 2) throw InputError("perm", "bar homology is available for k <= 2");
  const std::size_t n = g.order();
  if (n > 48) throw ResourceLimit("perm", "bar homology needs |G| <= 48");
  auto power = [&](std::size_t e) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < e; ++i) p *= n;
    return p;
  };
  // Column of d_j at the tuple with base-n digits (g_1, ..., g_j).
  auto column = [&](std::size_t j, std::size_t code) {
    std::vector<std::size_t> t(j);
    for (std::size_t i = j; i-- > 0;) {
      t[i] = code % n;
      code /= n;
    }
    auto encode = [&](const std::vector<std::size_t>& s) {
      std::size_t c = 0;
      for (std::size_t x : s) c = c * n + x;
      return c;
    };
    std::map<std::size_t, Rational> acc;
    for (std::size_t i = 0; i <= j; ++i) {
      std::vector<std::size_t> face;
      if (i == 0) {
        face.assign(t.begin() + 1, t.end());
      } else if (i == j) {
        face.assign(t.begin(), t.end() - 1);
      } else {
        face = t;
        face[i - 1] = g.multiply(t[i - 1], t[i]);
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      }
      acc[encode(face)] += (i % 2 == 0) ? 1 : -1;
    }
    SparseVector<Rational> col;
    for (const auto& [r, x] : acc)
      if (x != 0) col.emplace_back(r, x);
    return col;
  };
  // Rank of d_j, stopping once `bound` is reached.
  auto rank = [&](std::size_t j, std::size_t bound) -> std::size_t {
    if (j == 0) return 0;
    linalg::SpanReducer r(power(j - 1));
    for (std::size_t c = 0; c < power(j) && r.rank() < bound; ++c) r.add(column(j, c));
    return r.rank();
  };
  const std::size_t rank_in = rank(k, power(k));
  const std::size_t cycles = power(k) - rank_in;
  const std::size_t rank_out = rank(k + 1, cycles);
  return cycles - rank_out;
}

std::vector<Subgroup> all_subgroups(const PermGroup& g) {
  std::vector<Subgroup> cyclic;
  for (std::size_t x = 0; x < g.order(); ++x) {
    std::size_t gen[1] = {x};
    cyclic.push_back(Subgroup::generated_by_indices(g, gen));
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<Subgroup> found{Subgroup::trivial(g)};
  seen.insert(found.front().elements());
  for (std::size_t head = 0; head < found.size(); ++head)
    for (const auto& c : cyclic) {
      if (c.is_subgroup_of(found[head])) continue;
      Subgroup j = found[head].join(g, c);
      if (seen.insert(j.elements()).second) found.push_back(std::move(j));
    }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return found;
}

std::vector<NamedGroup> group_catalogue() {
  auto cycle = [](std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<group::Point>((i + 1) % n);
    return p;
  };
  auto reflection = [](std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<group::Point>((n - i) % n);
    return p;
  };
  std::vector<NamedGroup> out;
  out.push_back({"C1", 1, {}});
  for (std::size_t n = 2; n <= 12; ++n) out.push_back({"C" + std::to_string(n), n, {cycle(n)}});
  for (std::size_t n = 3; n <= 12; ++n) out.push_back({"D" + std::to_string(n), n, {cycle(n), reflection(n)}});
  out.push_back({"C2xC2", 4, {{1, 0, 2, 3}, {0, 1, 3, 2}}});
  out.push_back({"C2xC2xC2", 6, {{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5}, {0, 1, 2, 3, 5, 4}}});
  out.push_back({"C4xC2", 6, {{1, 2, 3, 0, 4, 5}, {0, 1, 2, 3, 5, 4}}});
  out.push_back({"C3xC3", 6, {{1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}}});
  out.push_back({"Q8", 8, {{1, 4, 3, 6, 5, 0, 7, 2}, {2, 7, 4, 1, 6, 3, 0, 5}}});
  out.push_back({"A4", 4, {{1, 2, 0, 3}, {0, 2, 3, 1}}});
  out.push_back({"C2xD4", 6, {{1, 2, 3, 0, 4, 5}, {3, 2, 1, 0, 4, 5}, {0, 1, 2, 3, 5, 4}}});
  out.push_back({"S3xC3", 6, {{1, 0, 2, 3, 4, 5}, {1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}}});
  out.push_back({"F20", 5, {{1, 2, 3, 4, 0}, {0, 2, 4, 1, 3}}});
  out.push_back({"C7:C3", 7, {{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}}});
  out.push_back({"S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}}});
  out.push_back({"SL(2,3)", 8, {{3, 7, 2, 6, 1, 5, 0, 4}, {2, 5, 1, 4, 7, 0, 3, 6}}});
  out.push_back({"C2xA4", 6, {{1, 2, 0, 3, 4, 5}, {0, 2, 3, 1, 4, 5}, {0, 1, 2, 3, 5, 4}}});
  return out;
}

}  // namespace tdlc::perm
