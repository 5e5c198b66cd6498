#include "tdlc/orbit.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "tdlc/error.hpp"

namespace tdlc::orbit {

using linalg::Integer;
using linalg::SparseMatrix;

linalg::SparseMatrix<Integer> OrbitComplex::deflated(std::size_t p) const {
  if (p == 0) throw InputError("orbit", "deflated boundary starts in degree 1");
  std::vector<linalg::SparseVector<Integer>> cols(count(p));
  for (std::size_t i = 0; i < count(p); ++i) {
    std::map<std::size_t, Integer> acc;
    if (p < boundary.size() && i < boundary[p].size())
      for (const auto& t : boundary[p][i]) acc[t.target] += Integer(static_cast<long>(t.coefficient));
    for (const auto& [row, c] : acc)
      if (c != 0) cols[i].emplace_back(row, c);
  }
  return SparseMatrix<Integer>::from_columns(count(p - 1), std::move(cols));
}

void OrbitComplex::check() const {
  for (std::size_t p = 0; p < orbits.size(); ++p)
    for (const auto& o : orbits[p])
      if (!o.compact_open)
        throw InputError("orbit", "stabilizer '" + o.stabilizer + "' is not compact open (action not proper)");
  if (boundary.size() > orbits.size()) throw InputError("orbit", "boundary data beyond the top dimension");
  for (std::size_t p = 0; p < boundary.size(); ++p) {
    if (boundary[p].size() > count(p))
      throw InputError("orbit", "more boundary entries than orbits in dimension " + std::to_string(p));
    for (const auto& terms : boundary[p])
      for (const auto& t : terms) {
        if (p == 0) throw InputError("orbit", "0-orbits have no boundary");
        if (t.target >= count(p - 1))
          throw InputError("orbit", "boundary target " + std::to_string(t.target) + " out of range in dimension " +
                                        std::to_string(p));
      }
  }
  for (std::size_t p = 2; p < orbits.size(); ++p)
    if (!(deflated(p - 1) * deflated(p)).is_zero())
      throw InvariantViolation("orbit", "deflated boundary squares to nonzero in degree " + std::to_string(p));
}

OrbitComplex from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("orbit", std::string("invalid orbit complex JSON: ") + e.what());
  }
  OrbitComplex oc;
  try {
    for (const auto& level : j.at("orbits")) {
      std::vector<Orbit> orbits;
      for (const auto& o : level)
        orbits.push_back({o.at("stab").get<std::string>(), o.value("compact_open", true)});
      oc.orbits.push_back(std::move(orbits));
    }
    oc.contractible = j.value("contractible", true);
    std::vector<std::vector<Term>> flat;
    if (j.contains("boundary"))
      for (const auto& entry : j.at("boundary")) {
        std::vector<Term> terms;
        for (const auto& t : entry) {
          if (!t.is_array() || t.size() != 2) throw InputError("orbit", "boundary terms must be [coef, target]");
          terms.push_back({t[0].get<long long>(), t[1].get<std::size_t>()});
        }
        flat.push_back(std::move(terms));
      }
    std::size_t total = 0, positive = 0;
    for (std::size_t p = 0; p < oc.orbits.size(); ++p) {
      total += oc.orbits[p].size();
      if (p > 0) positive += oc.orbits[p].size();
    }
    std::size_t pos = 0;
    if (flat.size() == total && total != positive) {
      for (std::size_t i = 0; i < oc.count(0); ++i)
        if (!flat[i].empty()) throw InputError("orbit", "0-orbits have no boundary");
      pos = oc.count(0);
    } else if (flat.size() != positive && !flat.empty()) {
      throw InputError("orbit", "expected " + std::to_string(positive) + " boundary entries, got " +
                                    std::to_string(flat.size()));
    }
    oc.boundary.assign(oc.orbits.size(), {});
    for (std::size_t p = 1; p < oc.orbits.size(); ++p)
      for (std::size_t i = 0; i < oc.count(p); ++i)
        oc.boundary[p].push_back(pos < flat.size() ? flat[pos++] : std::vector<Term>{});
  } catch (const nlohmann::json::exception& e) {
    throw InputError("orbit", std::string("malformed orbit complex JSON: ") + e.what());
  }
  while (!oc.orbits.empty() && oc.orbits.back().empty()) {
    oc.orbits.pop_back();
    oc.boundary.pop_back();
  }
  oc.check();
  return oc;
}

std::string to_json(const OrbitComplex& oc) {
  nlohmann::json j;
  j["orbits"] = nlohmann::json::array();
  for (const auto& level : oc.orbits) {
    auto arr = nlohmann::json::array();
    for (const auto& o : level) {
      nlohmann::json e{{"stab", o.stabilizer}};
      if (!o.compact_open) e["compact_open"] = false;
      arr.push_back(e);
    }
    j["orbits"].push_back(arr);
  }
  j["boundary"] = nlohmann::json::array();
  for (std::size_t p = 1; p < oc.boundary.size(); ++p)
    for (const auto& terms : oc.boundary[p]) {
      auto arr = nlohmann::json::array();
      for (const auto& t : terms) arr.push_back({t.coefficient, t.target});
      j["boundary"].push_back(arr);
    }
  if (!oc.contractible) j["contractible"] = false;
  return j.dump() + "\n";
}

std::vector<std::size_t> deflate_homology(const OrbitComplex& oc) {
  oc.check();
  const std::size_t n = oc.orbits.size();
  std::vector<std::size_t> rank(n + 1, 0);
  for (std::size_t p = 1; p < n; ++p) rank[p] = linalg::rank_q(oc.deflated(p));
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < n; ++p) out.push_back(oc.count(p) - rank[p] - rank[p + 1]);
  return out;
}

CdReport cd_report(const OrbitComplex& oc) {
  auto h = deflate_homology(oc);
  CdReport r;
  r.upper = oc.orbits.empty() ? 0 : oc.orbits.size() - 1;
  for (std::size_t p = h.size(); p-- > 0;)
    if (h[p] != 0) {
      r.lower = p;
      break;
    }
  return r;
}

OrbitComplex cubical_lattice(std::size_t m) {
  // Orbits of dimension p are the p-subsets of {0..m-1}, in lexicographic order.
  std::vector<std::vector<std::vector<std::size_t>>> subsets(m + 1);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(i);
    subsets[s.size()].push_back(std::move(s));
  }
  for (auto& level : subsets) std::sort(level.begin(), level.end());
  OrbitComplex oc;
  oc.boundary.assign(m + 1, {});
  for (std::size_t p = 0; p <= m; ++p) {
    std::vector<Orbit> level;
    for (std::size_t i = 0; i < subsets[p].size(); ++i) level.push_back({"1", true});
    oc.orbits.push_back(std::move(level));
    if (p == 0) continue;
    for (const auto& s : subsets[p]) {
      std::vector<Term> terms;
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        auto target = static_cast<std::size_t>(
            std::lower_bound(subsets[p - 1].begin(), subsets[p - 1].end(), face) - subsets[p - 1].begin());
        long long sign = j % 2 == 0 ? 1 : -1;
        // The translated face and the face itself lie in one orbit.
        terms.push_back({sign, target});
        terms.push_back({-sign, target});
      }
      oc.boundary[p].push_back(std::move(terms));
    }
  }
  return oc;
}

OrbitComplex subdivided_tree() {
  OrbitComplex oc;
  oc.orbits = {{{"U_vertex", true}, {"U_midpoint", true}}, {{"U_edge", true}}};
  oc.boundary = {{}, {{{1, 0}, {-1, 1}}}};
  return oc;
}

OrbitComplex point() {
  OrbitComplex oc;
  oc.orbits = {{{"G", true}}};
  oc.boundary = {{}};
  return oc;
}

}  // namespace tdlc::orbit
