#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tdlc/orbit.hpp"
#include "tdlc/perm.hpp"

using namespace tdlc;
using orbit::OrbitComplex;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("orbit") {
  TEST_CASE("deflation examples") {
    CHECK(orbit::deflate_homology(orbit::subdivided_tree()) == std::vector<std::size_t>{1, 0});
    CHECK(orbit::deflate_homology(orbit::point()) == std::vector<std::size_t>{1});
    for (std::size_t m = 1; m <= 3; ++m) {
      auto h = orbit::deflate_homology(orbit::cubical_lattice(m));
      REQUIRE(h.size() == m + 1);
      for (std::size_t p = 0; p <= m; ++p) CHECK(h[p] == binomial(m, p));
    }
  }

  TEST_CASE("cd reports") {
    auto z3 = orbit::cd_report(orbit::cubical_lattice(3));
    CHECK(z3.upper == 3);
    CHECK(z3.lower == std::optional<std::size_t>(3));
    auto tree = orbit::cd_report(orbit::subdivided_tree());
    CHECK(tree.upper == 1);
    CHECK(tree.lower == std::optional<std::size_t>(0));
    auto pt = orbit::cd_report(orbit::point());
    CHECK(pt.upper == 0);
    CHECK(pt.lower == std::optional<std::size_t>(0));
  }

  TEST_CASE("cubical deflation matches simplicial torus homology") {
    for (std::size_t m = 2; m <= 3; ++m) {
      auto t = oracle::torus(m, 3);
      auto betti = oracle::reduced_betti(t, m);
      betti[0] += 1;
      auto h = orbit::deflate_homology(orbit::cubical_lattice(m));
      for (std::size_t p = 0; p <= m; ++p) CHECK(h[p] == betti[p]);
      // Integral homology of the torus is free.
      for (const auto& g : oracle::homology_z(t, m)) CHECK(g.torsion.empty());
    }
  }

  TEST_CASE("finite group on a contractible complex agrees with bar homology") {
    // C3 rotating a filled triangle: one orbit per dimension, stabilizers
    // 1, 1, C3. The triangle's boundary is the sum of the three edge
    // translates, so it deflates to 3.
    OrbitComplex oc;
    oc.orbits = {{{"1", true}}, {{"1", true}}, {{"C3", true}}};
    oc.boundary = {{}, {{{1, 0}, {-1, 0}}}, {{{1, 0}, {1, 0}, {1, 0}}}};
    CHECK_NOTHROW(oc.check());
    auto h = orbit::deflate_homology(oc);
    perm::PermGroup c3(3, {{1, 2, 0}});
    REQUIRE(h.size() == 3);
    CHECK(h[0] == perm::bar_homology_q(c3, 0));
    CHECK(h[1] == perm::bar_homology_q(c3, 1));
    CHECK(h[2] == perm::bar_homology_q(c3, 2));
  }

  TEST_CASE("free orbit complexes deflate to simplicial homology") {
    std::mt19937_64 rng(43);
    for (int n = 0; n < 60; ++n) {
      auto ok = oracle::random_complex(rng, 7, 3, 1 + rng() % 7);
      auto oc = helpers::free_orbits(helpers::from_oracle(ok));
      CHECK_NOTHROW(oc.check());
      auto h = orbit::deflate_homology(oc);
      auto betti = oracle::reduced_betti(ok, ok.levels.size() - 1);
      betti[0] += 1;
      REQUIRE(h.size() == betti.size());
      CHECK(h == betti);
      long long chi = 0, alt = 0;
      for (std::size_t p = 0; p < h.size(); ++p) {
        chi += (p % 2 ? -1 : 1) * static_cast<long long>(oc.count(p));
        alt += (p % 2 ? -1 : 1) * static_cast<long long>(h[p]);
      }
      CHECK(chi == alt);
    }
  }

  TEST_CASE("json round trip") {
    for (const auto& oc : {orbit::cubical_lattice(2), orbit::subdivided_tree(), orbit::point()}) {
      auto text = orbit::to_json(oc);
      auto back = orbit::from_json(text);
      CHECK(orbit::to_json(back) == text);
      CHECK(orbit::deflate_homology(back) == orbit::deflate_homology(oc));
    }
    // Leading empty entries for the 0-orbits are accepted.
    auto tree = orbit::from_json(
        R"({"orbits": [[{"stab": "V"}, {"stab": "M"}], [{"stab": "E"}]], "boundary": [[], [], [[1, 0], [-1, 1]]]})");
    CHECK(orbit::deflate_homology(tree) == std::vector<std::size_t>{1, 0});
  }

  TEST_CASE("invalid orbit complexes") {
    CHECK_THROWS_AS(orbit::from_json(R"({"orbits": [[{"stab": "V"}], [{"stab": "E"}]], "boundary": [[[1, 3]]]})"),
                    InputError);
    CHECK_THROWS_AS(orbit::from_json(R"({"orbits": [[{"stab": "V", "compact_open": false}]], "boundary": []})"),
                    InputError);
    // d d != 0: the 2-cell's boundary is a single edge.
    CHECK_THROWS_AS(orbit::from_json(R"({"orbits": [[{"stab": "V"}, {"stab": "W"}], [{"stab": "E"}], [{"stab": "F"}]],
      "boundary": [[[1, 0], [-1, 1]], [[1, 0]]]})"),
                    InvariantViolation);
    CHECK_THROWS_AS(orbit::from_json("{"), InputError);
  }
}
