#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tdlc/complex.hpp"
#include "tdlc/homology.hpp"

using namespace tdlc;
using complex::SimplicialComplex;
using linalg::Integer;
using linalg::Ring;

namespace {

SimplicialComplex triangle_filled() { return SimplicialComplex::closure({{0, 1, 2}}); }

SimplicialComplex triangle_hollow() { return SimplicialComplex::closure({{0, 1}, {0, 2}, {1, 2}}); }

germ::Ball finite_ball(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  auto g = germ::finite_graph(n, edges);
  return germ::ball(*g, n);
}

}  // namespace

TEST_SUITE("complex") {
  TEST_CASE("boundary examples") {
    auto edge = complex::chain_complex(SimplicialComplex::closure({{0, 1}}), Ring::Z, false);
    auto d1 = edge.boundary(1);
    CHECK(d1.rows() == 2);
    CHECK(d1.at(0, 0) == -1);
    CHECK(d1.at(1, 0) == 1);

    auto point = complex::chain_complex(SimplicialComplex::closure({{0}}), Ring::Z, true);
    CHECK(point.boundary(0).rows() == 1);
    CHECK(point.boundary(0).at(0, 0) == 1);
    CHECK(point.boundary(1).cols() == 0);

    auto tri = complex::chain_complex(triangle_filled(), Ring::Z, false);
    auto d2 = tri.boundary(2);
    REQUIRE(d2.cols() == 1);
    // edges [0,1], [0,2], [1,2]
    CHECK(d2.at(0, 0) == 1);
    CHECK(d2.at(1, 0) == -1);
    CHECK(d2.at(2, 0) == 1);
    CHECK(triangle_filled().simplices(1) ==
          std::vector<complex::Simplex>{{0, 1}, {0, 2}, {1, 2}});
  }

  TEST_CASE("subdivision examples") {
    auto path = complex::subdivide(SimplicialComplex::closure({{0, 1}}));
    CHECK(path.count(0) == 3);
    CHECK(path.count(1) == 2);

    auto hex = complex::subdivide(triangle_hollow());
    CHECK(hex.count(0) == 6);
    CHECK(hex.count(1) == 6);
    CHECK(hex.dim() == 1);

    auto sd = complex::subdivide(triangle_filled());
    CHECK(sd.count(0) == 7);
    CHECK(sd.count(2) == 6);

    auto tet = complex::subdivide(SimplicialComplex::closure({{0, 1, 2, 3}}));
    CHECK(tet.count(0) == 15);
    CHECK(tet.count(3) == 24);
    CHECK(tet.dim() == 3);
  }

  TEST_CASE("subdivision preserves homology") {
    std::mt19937_64 rng(4);
    for (int n = 0; n < 30; ++n) {
      auto k = helpers::from_oracle(oracle::random_complex(rng, 6, 3, 5));
      auto sd = complex::subdivide(k);
      CHECK(sd.count(0) == k.size());
      auto a = homology::homology(complex::chain_complex(k, Ring::Z, false));
      auto b = homology::homology(complex::chain_complex(sd, Ring::Z, false));
      for (std::size_t p = 0; p < 4; ++p) CHECK(a.at(p) == b.at(p));
    }
  }

  TEST_CASE("rips examples") {
    auto tri = complex::rips(finite_ball(3, {{0, 1}, {1, 2}, {0, 2}}), 1, 2);
    CHECK(tri == triangle_filled());

    auto path = complex::rips(finite_ball(3, {{0, 1}, {1, 2}}), 2, 2);
    CHECK(path == triangle_filled());

    auto tree_ball = germ::ball(*germ::regular_tree(3), 2);
    auto t = complex::rips(tree_ball, 1, 3);
    CHECK(t.dim() == 1);
    CHECK(t == complex::graph_complex(tree_ball));
  }

  TEST_CASE("rips matches a brute-force clique enumeration") {
    for (const auto& spec : {"grid:2", "tree:3", "dl:2,2", "free:2"}) {
      auto b = germ::ball(*germ::parse_germ(spec), 3);
      auto dist = oracle::distances(b.adjacency);
      for (std::size_t d = 1; d <= 2; ++d) {
        auto k = complex::rips(b, d, 3);
        auto o = oracle::rips(dist, d, 3);
        auto lib = helpers::to_oracle(k);
        CHECK(lib.levels == o.levels);
      }
    }
  }

  TEST_CASE("rips complexes are nested in the scale") {
    auto b = germ::ball(*germ::diestel_leader(2, 2), 3);
    SimplicialComplex prev;
    for (std::size_t d = 1; d <= 3; ++d) {
      auto k = complex::rips(b, d, 3);
      CHECK(prev.is_subcomplex_of(k));
      prev = k;
    }
    auto small = complex::rips(germ::ball(*germ::grid(2), 2), 2, 3);
    auto big = complex::rips(germ::ball(*germ::grid(2), 4), 2, 3);
    // Distances only shrink in a larger window.
    CHECK(small.is_subcomplex_of(big));
  }

  TEST_CASE("dd = 0 and Euler characteristic bookkeeping on random complexes") {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 120; ++n) {
      auto k = helpers::from_oracle(oracle::random_complex(rng, 7, 3, 1 + rng() % 8));
      for (bool aug : {false, true}) {
        auto c = complex::chain_complex(k, Ring::Z, aug);
        CHECK_NOTHROW(c.check());
        for (std::size_t p = 1; p < c.ranks.size(); ++p)
          CHECK((c.boundary(p) * c.boundary(p + 1)).is_zero());
      }
      long long alt = 0;
      for (std::size_t p = 0; p < k.levels().size(); ++p)
        alt += (p % 2 ? -1 : 1) * static_cast<long long>(k.count(p));
      CHECK(k.euler_characteristic() == alt);
      auto h = homology::homology(complex::chain_complex(k, Ring::Q, false));
      long long from_betti = 0;
      for (std::size_t p = 0; p < h.groups.size(); ++p)
        from_betti += (p % 2 ? -1 : 1) * static_cast<long long>(h.groups[p].betti);
      CHECK(from_betti == alt);
    }
  }

  TEST_CASE("relative chain complexes") {
    auto c4 = SimplicialComplex::closure({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    auto cone = SimplicialComplex::closure({{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {0, 3, 4}});
    auto rel = complex::relative_chain_complex(cone, c4, Ring::Z, false);
    CHECK(rel.rank(0) == 1);
    CHECK(rel.rank(1) == 4);
    CHECK(rel.rank(2) == 4);
    CHECK_NOTHROW(rel.check());
    CHECK_THROWS_AS(complex::relative_chain_complex(c4, cone, Ring::Z, false), InputError);
  }

  TEST_CASE("json round trip and closure") {
    auto k = complex::complex_from_json(R"({"simplices": [[2, 0, 1]]})");
    CHECK(k == triangle_filled());
    auto text = complex::complex_to_json(k);
    CHECK(complex::complex_from_json(text) == k);
    CHECK(text == complex::complex_to_json(complex::complex_from_json(text)));
    CHECK_THROWS_AS(complex::complex_from_json(R"({"simplices": [[0, 0]]})"), InputError);
    CHECK_THROWS_AS(complex::complex_from_json(R"({"faces": []})"), InputError);
    CHECK_THROWS_AS(complex::complex_from_json("[1,"), InputError);
  }

  TEST_CASE("simplex cap") {
    Caps caps;
    caps.simplices = 100;
    auto b = germ::ball(*germ::grid(2), 4);
    CHECK_THROWS_AS(complex::rips(b, 3, 3, caps), ResourceLimit);
  }
}
