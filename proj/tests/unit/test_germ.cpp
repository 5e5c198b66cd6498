#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <string>

#include "tdlc/germ.hpp"

using namespace tdlc::germ;

namespace {

bool is_prefix(const Ball& small, const Ball& big) {
  if (small.size() > big.size()) return false;
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small.vertices[i] != big.vertices[i]) return false;
  for (const auto& e : small.edges)
    if (!std::binary_search(big.edges.begin(), big.edges.end(), e)) return false;
  return true;
}

std::size_t max_degree(const Ball& b, std::size_t interior) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.radius[i] <= interior) m = std::max(m, b.adjacency[i].size());
  return m;
}

// Orbit of vertex 0 under all graph automorphisms, by brute force.
std::set<std::size_t> automorphism_orbit(const Ball& b) {
  std::size_t n = b.size();
  std::set<std::pair<std::size_t, std::size_t>> edges(b.edges.begin(), b.edges.end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::size_t> orbit;
  do {
    bool ok = true;
    for (const auto& [u, v] : b.edges) {
      auto a = std::minmax(perm[u], perm[v]);
      if (!edges.count({a.first, a.second})) {
        ok = false;
        break;
      }
    }
    if (ok) orbit.insert(perm[0]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return orbit;
}

}  // namespace

TEST_SUITE("germ") {
  TEST_CASE("ball examples") {
    auto t = ball(*regular_tree(3), 2);
    CHECK(t.size() == 10);
    CHECK(t.edges.size() == 9);
    auto g = ball(*grid(2), 1);
    CHECK(g.size() == 5);
    CHECK(g.edges.size() == 4);
    for (const auto& spec : {"tree:3", "grid:2", "free:2", "dl:2,2", "bitree:2,3", "product:tree:3|grid:1"}) {
      auto b = ball(*parse_germ(spec), 0);
      CHECK(b.size() == 1);
      CHECK(b.edges.empty());
    }
  }

  TEST_CASE("distance examples") {
    auto t = ball(*regular_tree(3), 2);
    CHECK(distance(t, 0, 0) == 0);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t.radius[i] == 2) CHECK(distance(t, 0, i) == 2);
    auto g = ball(*grid(2), 1);
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.vertices[i] == Address{1, 0}) a = i;
      if (g.vertices[i] == Address{0, 1}) b = i;
    }
    REQUIRE(a != 0);
    REQUIRE(b != 0);
    CHECK(distance(g, a, b) == 2);
  }

  TEST_CASE("balls are deterministic and nested") {
    for (const auto& spec : {"tree:3", "bitree:2,3", "grid:2", "grid:3", "free:2", "dl:2,2", "dl:2,3",
                             "product:tree:3|grid:1"}) {
      auto g = parse_germ(spec);
      CHECK(g->describe() == spec);
      for (std::size_t r = 0; r < 4; ++r) {
        auto b = ball(*g, r);
        auto again = ball(*g, r);
        CHECK(b.vertices == again.vertices);
        CHECK(b.edges == again.edges);
        CHECK(is_prefix(b, ball(*g, r + 1)));
        CHECK(b.prefix_within(r) == b.size());
      }
    }
  }

  TEST_CASE("vertex degrees respect the declared bound") {
    struct Case {
      const char* spec;
      std::size_t bound;
    };
    for (auto c : {Case{"tree:3", 3}, Case{"bitree:2,3", 6}, Case{"grid:2", 4}, Case{"grid:3", 6},
                   Case{"free:2", 4}, Case{"dl:2,2", 4}, Case{"dl:2,3", 5}}) {
      auto g = parse_germ(c.spec);
      CHECK(g->degree_bound() <= c.bound);
      auto b = ball(*g, 4);
      CHECK(max_degree(b, 3) <= g->degree_bound());
      // Interior vertices see their whole neighborhood.
      for (std::size_t i = 0; i < b.size(); ++i)
        if (b.radius[i] <= 3) CHECK(b.adjacency[i].size() == g->neighbors(b.vertices[i]).size());
    }
    // Trees, grids and free groups are regular.
    CHECK(max_degree(ball(*grid(2), 3), 2) == 4);
    CHECK(ball(*free_group(2), 3).adjacency[0].size() == 4);
  }

  TEST_CASE("lamplighter ball sizes") {
    // Sphere sizes of DL(2,2): 1, 4, 10. Two steps the same way reach 4
    // vertices each way; up-then-down and down-then-up each reach the root
    // and one new vertex (a sibling in one tree).
    auto b = ball(*diestel_leader(2, 2), 2);
    CHECK(b.prefix_within(0) == 1);
    CHECK(b.prefix_within(1) == 5);
    CHECK(b.prefix_within(2) == 15);
  }

  TEST_CASE("finite graphs and malformed specs") {
    auto g = finite_graph_from_json(R"({"vertices": 3, "edges": [[0,1],[1,2],[0,2]]})");
    REQUIRE(g->diameter());
    CHECK(*g->diameter() == 1);
    CHECK(ball(*g, 5).size() == 3);
    CHECK_THROWS_AS(parse_germ("tree"), tdlc::InputError);
    CHECK_THROWS_AS(parse_germ("blob:3"), tdlc::InputError);
    CHECK_THROWS_AS(parse_germ("grid:-1"), tdlc::InputError);
    CHECK_THROWS_AS(finite_graph_from_json(R"({"vertices": 2, "edges": [[0,5]]})"), tdlc::InputError);
    CHECK_THROWS_AS(finite_graph_from_json("{"), tdlc::InputError);
    tdlc::Caps caps;
    caps.vertices = 50;
    CHECK_THROWS_AS(ball(*grid(2), 10, caps), tdlc::ResourceLimit);
  }

  TEST_CASE("wreath examples") {
    std::vector<tdlc::group::Permutation> u;
    auto c2 = wreath_spec_from_json(R"({"B": {"degree": 2, "generators": [[1, 0]]}, "A": [],
      "H": {"degree": 1, "generators": []}, "X": {"size": 1, "action": []}})", &u);
    auto b = wreath_cayley_abels(c2, u);
    CHECK(b.size() == 2);
    CHECK(b.edges.size() == 1);

    auto whole = wreath_spec_from_json(R"({"B": {"degree": 2, "generators": [[1, 0]]}, "A": [[1, 0]],
      "H": {"degree": 1, "generators": []}, "X": {"size": 1, "action": []}})", &u);
    auto one = wreath_cayley_abels(whole, u);
    CHECK(one.size() == 1);
    CHECK(one.edges.empty());
  }

  TEST_CASE("order 8 wreath product against a brute-force Cayley graph") {
    std::vector<tdlc::group::Permutation> u;
    auto spec = wreath_spec_from_json(R"({"B": {"degree": 2, "generators": [[1, 0]]}, "A": [],
      "H": {"degree": 2, "generators": [[1, 0]]}, "X": {"size": 2, "action": [[1, 0]]}, "U": []})", &u);
    auto b = wreath_cayley_abels(spec, u);

    // Elements (f0, f1, h) of (C2 x C2) x| C2, with h swapping coordinates.
    // (f, h)(f', h') = (f + h.f', h + h'). Generators: lamp at coordinate 0
    // and the swap.
    auto mul = [](std::array<int, 3> a, std::array<int, 3> c) {
      std::array<int, 2> moved = a[2] ? std::array<int, 2>{c[1], c[0]} : std::array<int, 2>{c[0], c[1]};
      return std::array<int, 3>{(a[0] + moved[0]) % 2, (a[1] + moved[1]) % 2, (a[2] + c[2]) % 2};
    };
    std::vector<std::array<int, 3>> gens{{1, 0, 0}, {0, 0, 1}};
    std::set<std::array<int, 3>> elements{{0, 0, 0}};
    std::set<std::pair<std::array<int, 3>, std::array<int, 3>>> edges;
    std::vector<std::array<int, 3>> queue{{0, 0, 0}};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& s : gens) {
        auto y = mul(queue[i], s);
        edges.insert(std::minmax(queue[i], y));
        if (elements.insert(y).second) queue.push_back(y);
      }
    CHECK(elements.size() == 8);
    CHECK(b.size() == elements.size());
    CHECK(b.edges.size() == edges.size());
    std::size_t deg_b = b.adjacency[0].size();
    for (const auto& a : b.adjacency) CHECK(a.size() == deg_b);
    CHECK(deg_b == 2 * edges.size() / elements.size());
    // Both are connected and 2-regular on 8 vertices, hence 8-cycles.

    CHECK(automorphism_orbit(b).size() == b.size());
  }

  TEST_CASE("small wreath graphs are vertex transitive") {
    std::vector<tdlc::group::Permutation> u;
    // C3 lamps over a two-point X swapped by H = C2, A = 1.
    auto spec = wreath_spec_from_json(R"({"B": {"degree": 3, "generators": [[1, 2, 0]]}, "A": [],
      "H": {"degree": 2, "generators": [[1, 0]]}, "X": {"size": 2, "action": [[1, 0]]},
      "U": [[1, 0]]})", &u);
    auto b = wreath_cayley_abels(spec, u);
    REQUIRE(b.size() <= 9);
    CHECK(automorphism_orbit(b).size() == b.size());
  }

  TEST_CASE("invalid wreath data is rejected") {
    std::vector<tdlc::group::Permutation> u;
    // A not inside B.
    CHECK_THROWS_AS(wreath_spec_from_json(R"({"B": {"degree": 3, "generators": [[1, 2, 0]]},
      "A": [[1, 0, 2]], "H": {"degree": 1, "generators": []}, "X": {"size": 1, "action": []}})", &u),
                    tdlc::InputError);
    // Action of H on X is not a homomorphism (generator of order 2 acting as a 3-cycle).
    CHECK_THROWS_AS(wreath_spec_from_json(R"({"B": {"degree": 2, "generators": [[1, 0]]}, "A": [],
      "H": {"degree": 2, "generators": [[1, 0]]}, "X": {"size": 3, "action": [[1, 2, 0]]}})", &u),
                    tdlc::InputError);
  }
}
