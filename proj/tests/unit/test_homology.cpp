#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tdlc/complex.hpp"
#include "tdlc/homology.hpp"

using namespace tdlc;
using complex::SimplicialComplex;
using homology::HomologyGroup;
using linalg::Integer;
using linalg::Ring;

namespace {

const char* kRp2 =
    R"({"simplices": [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5], [1, 2, 4], [1, 3, 4],
        [1, 3, 5], [2, 3, 5], [2, 4, 5]]})";
const char* kAnnulus =
    R"({"simplices": [[0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 5], [0, 2, 5], [0, 3, 5]]})";

SimplicialComplex c4() { return SimplicialComplex::closure({{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
SimplicialComplex cone_c4() {
  return SimplicialComplex::closure({{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {0, 3, 4}});
}

homology::HomologySummary hz(const SimplicialComplex& k, bool reduced = false) {
  return homology::homology(complex::chain_complex(k, Ring::Z, reduced));
}

void compare_with_oracle(const SimplicialComplex& k) {
  auto o = oracle::homology_z(helpers::to_oracle(k), static_cast<std::size_t>(std::max(k.dim(), 0)));
  auto h = hz(k);
  for (std::size_t p = 0; p < o.size(); ++p) {
    CHECK(h.at(p).betti == o[p].betti);
    CHECK(h.at(p).torsion == o[p].torsion);
  }
}

}  // namespace

TEST_SUITE("homology") {
  TEST_CASE("homology examples") {
    auto h = hz(c4());
    CHECK(h.to_string() == "H0=Z, H1=Z");
    compare_with_oracle(c4());

    auto rp2 = complex::complex_from_json(kRp2);
    auto hp = hz(rp2);
    CHECK(hp.at(0) == HomologyGroup{1, {}});
    CHECK(hp.at(1) == HomologyGroup{0, {Integer(2)}});
    CHECK(hp.at(2).is_zero());
    compare_with_oracle(rp2);
    CHECK(homology::homology(complex::chain_complex(rp2, Ring::Q, false)).to_string() == "H0=Q, H1=0, H2=0");

    auto point = hz(SimplicialComplex::closure({{0}}), true);
    for (const auto& g : point.groups) CHECK(g.is_zero());
  }

  TEST_CASE("induced map examples") {
    auto into_cone = homology::induced_map(c4(), cone_c4(), 1, Ring::Q);
    CHECK(into_cone.trivial);
    CHECK(into_cone.target.betti == 0);

    auto identity = homology::induced_map(c4(), c4(), 1, Ring::Z);
    CHECK_FALSE(identity.trivial);
    REQUIRE(identity.matrix.rows() == 1);
    REQUIRE(identity.matrix.cols() == 1);
    CHECK(identity.matrix(0, 0) == 1);

    // Inner circle 0-1-2 of the annulus.
    auto annulus = complex::complex_from_json(kAnnulus);
    auto circle = SimplicialComplex::closure({{0, 1}, {1, 2}, {0, 2}});
    REQUIRE(circle.is_subcomplex_of(annulus));
    auto m = homology::induced_map(circle, annulus, 1, Ring::Z);
    CHECK_FALSE(m.trivial);
    // Oracle: the circle is not in the column space of d2 of the annulus.
    auto o = helpers::to_oracle(annulus);
    auto d2 = oracle::boundary(o, 2);
    auto with_z = d2;
    std::map<oracle::Tuple, std::size_t> row;
    for (const auto& e : o.levels[1]) row.emplace(e, row.size());
    for (auto& r : with_z) r.push_back(0);
    with_z[row.at({0, 1})].back() = 1;
    with_z[row.at({1, 2})].back() = 1;
    with_z[row.at({0, 2})].back() = -1;
    CHECK(oracle::rank_of(with_z) == oracle::rank_of(d2) + 1);

    CHECK_THROWS_AS(homology::induced_map(annulus, circle, 1, Ring::Q), InputError);
  }

  TEST_CASE("torsion classes count over Z") {
    // The non-face triangle 0-1-3 in RP2: its unique rational filling has all
    // coefficients +-1/2, so it bounds over Q but not over Z.
    auto rp2 = complex::complex_from_json(kRp2);
    auto loop = SimplicialComplex::closure({{0, 1}, {1, 3}, {0, 3}});
    CHECK_FALSE(homology::induced_map(loop, rp2, 1, Ring::Z).trivial);
    CHECK(homology::induced_map(loop, rp2, 1, Ring::Q).trivial);
  }

  TEST_CASE("integral homology matches the dense oracle on random complexes") {
    std::mt19937_64 rng(19);
    for (int n = 0; n < 80; ++n) compare_with_oracle(helpers::from_oracle(oracle::random_complex(rng, 7, 3, 1 + rng() % 9)));
  }

  TEST_CASE("rational Betti numbers equal integral ones") {
    std::mt19937_64 rng(29);
    for (int n = 0; n < 60; ++n) {
      auto k = helpers::from_oracle(oracle::random_complex(rng, 8, 3, 1 + rng() % 10));
      auto z = hz(k);
      auto q = homology::homology(complex::chain_complex(k, Ring::Q, false));
      REQUIRE(z.groups.size() == q.groups.size());
      for (std::size_t p = 0; p < z.groups.size(); ++p) {
        CHECK(z.groups[p].betti == q.groups[p].betti);
        CHECK(q.groups[p].torsion.empty());
      }
    }
  }

  TEST_CASE("reduced and unreduced degree zero differ by one copy of the ring") {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 100; ++n) {
      auto k = helpers::from_oracle(oracle::random_complex(rng, 8, 2, 1 + rng() % 8));
      for (Ring ring : {Ring::Z, Ring::Q}) {
        auto u = homology::homology(complex::chain_complex(k, ring, false));
        auto r = homology::homology(complex::chain_complex(k, ring, true));
        CHECK(u.at(0).betti == r.at(0).betti + 1);
        CHECK(u.at(0).torsion == r.at(0).torsion);
        for (std::size_t p = 1; p < u.groups.size(); ++p) CHECK(u.at(p) == r.at(p));
      }
    }
  }

  TEST_CASE("induced maps are functorial for triviality") {
    std::mt19937_64 rng(37);
    for (int n = 0; n < 40; ++n) {
      auto ok = oracle::random_complex(rng, 7, 2, 4);
      auto ol = ok;
      auto extra = oracle::random_complex(rng, 7, 2, 3);
      for (const auto& level : extra.levels)
        for (const auto& s : level) ol.insert(s);
      auto om = ol;
      auto more = oracle::random_complex(rng, 7, 2, 3);
      for (const auto& level : more.levels)
        for (const auto& s : level) om.insert(s);
      auto k = helpers::from_oracle(ok), l = helpers::from_oracle(ol), m = helpers::from_oracle(om);
      for (std::size_t p = 0; p <= 1; ++p) {
        auto self = homology::induced_map(k, k, p, Ring::Q);
        for (std::size_t i = 0; i < self.matrix.rows(); ++i)
          for (std::size_t j = 0; j < self.matrix.cols(); ++j) CHECK(self.matrix(i, j) == (i == j ? 1 : 0));
        CHECK(self.trivial == (self.source.betti == 0));
        for (Ring ring : {Ring::Q, Ring::Z})
          if (homology::induced_map(k, l, p, ring).trivial) CHECK(homology::induced_map(k, m, p, ring).trivial);
      }
    }
  }
}
