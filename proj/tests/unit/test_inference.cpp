#include <doctest.h>

#include <chrono>
#include <random>
#include <sstream>

#include "dsl_gen.hpp"
#include "tdlc/error.hpp"
#include "tdlc/inference.hpp"

using namespace tdlc::inference;

namespace {

Answer ask(const Closure& c, const char* group, Attr a, std::optional<int> n = std::nullopt) {
  return query(c, group, a, n).answer;
}

Bound bound_of(const Closure& c, const char* group, Attr a) {
  return c.bound(Key{false, c.database().group(group), a, 0});
}

}  // namespace

TEST_SUITE("inference") {
  TEST_CASE("parse examples") {
    auto db = parse("group G\nproperty G F 2\n");
    REQUIRE(db.groups.size() == 1);
    REQUIRE(db.given.size() == 1);
    CHECK(db.given[0].key.attr == Attr::F);
    CHECK(db.given[0].side == Side::Lo);
    CHECK(db.given[0].value == 2);

    auto neg = parse("group G\nproperty G FP 3 over Q = false\n");
    REQUIRE(neg.given.size() == 1);
    CHECK(neg.given[0].key.attr == Attr::FP_Q);
    CHECK(neg.given[0].side == Side::Hi);
    CHECK(neg.given[0].value == 2);

    auto inf = parse("group G\nproperty G F inf = false\nproperty G cd_Q <= 3 # comment\n");
    CHECK(inf.given[0].value == inf.cap);
    CHECK(inf.given[1].key.attr == Attr::Cd);
  }

  TEST_CASE("parse errors name the line") {
    auto message = [](const char* script) {
      try {
        parse(script);
      } catch (const tdlc::InputError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("relation extension N G Q").find("line 1") != std::string::npos);
    CHECK(message("group G\ngroup G").find("line 2") != std::string::npos);
    CHECK(message("group G\nproperty G shiny").find("unknown property") != std::string::npos);
    CHECK(message("group G\nrelation sideways G G").find("unknown relation kind") != std::string::npos);
    CHECK(message("group G\nrelation extension G G").find("takes 3 groups") != std::string::npos);
    CHECK(message("group G\nproperty G F 65").find("line 2") != std::string::npos);
    CHECK(message("group G\nfrobnicate G").find("line 2") != std::string::npos);
    CHECK(message("group G\nproperty G K").find("needs a degree") != std::string::npos);
    CHECK(message("group G\nquery H F 1").find("line 2") != std::string::npos);
  }

  TEST_CASE("LHS: the extension has type FP_min(m,n)") {
    auto c = close(parse("group N\ngroup G\ngroup Q\nproperty N FP 2 over Q\nproperty Q FP 3 over Q\n"
                         "relation extension N G Q\n"));
    CHECK(ask(c, "G", Attr::FP_Q, 2) == Answer::True);
    CHECK(ask(c, "G", Attr::FP_Q, 3) == Answer::Unknown);
    auto r = query(c, "G", Attr::FP_Q, 2);
    REQUIRE_FALSE(r.chain.empty());
    CHECK(r.chain.back()->rule == "R6");
    CHECK(r.chain.back()->citation == "Thm thm:LHS");
  }

  TEST_CASE("LHS: the quotient gains one degree") {
    auto c = close(parse("group N\ngroup G\ngroup Q\nproperty G FP 3 over Q\nproperty N FP 1 over Q\n"
                         "relation extension N G Q\n"));
    CHECK(ask(c, "Q", Attr::FP_Q, 2) == Answer::True);
    CHECK(ask(c, "Q", Attr::FP_Q, 3) == Answer::Unknown);
  }

  TEST_CASE("LHS numerics in both directions") {
    for (int m = 0; m <= 6; ++m)
      for (int n = 0; n <= 6; ++n) {
        std::ostringstream fwd, back;
        fwd << "group N\ngroup G\ngroup Q\nproperty N FP " << m << " over Q\nproperty Q FP " << n
            << " over Q\nrelation extension N G Q\n";
        CHECK(bound_of(close(parse(fwd.str())), "G", Attr::FP_Q).lo == std::min(m, n));
        back << "group N\ngroup G\ngroup Q\nproperty N FP " << m << " over Q\nproperty G FP " << n
             << " over Q\nrelation extension N G Q\n";
        CHECK(bound_of(close(parse(back.str())), "Q", Attr::FP_Q).lo == std::min(m + 1, n));
      }
    // Contrapositive: N is FP_5 and G is not FP_3, so Q is not FP_3.
    auto c = close(parse("group N\ngroup G\ngroup Q\nproperty N FP 5 over Q\nproperty G FP 3 over Q = false\n"
                         "relation extension N G Q\n"));
    CHECK(ask(c, "Q", Attr::FP_Q, 3) == Answer::False);
  }

  TEST_CASE("compact groups") {
    auto c = close(parse("group K\nproperty K compact\n"));
    CHECK(ask(c, "K", Attr::F, c.database().inf()) == Answer::True);
    CHECK(ask(c, "K", Attr::FP_Z, c.database().inf()) == Answer::True);
    CHECK(ask(c, "K", Attr::FP_Q, c.database().inf()) == Answer::True);
    CHECK(ask(c, "K", Attr::TypeF) == Answer::True);
    auto cd = query(c, "K", Attr::Cd);
    CHECK(cd.answer == Answer::True);
    CHECK(cd.bound.lo == 0);
    CHECK(cd.bound.hi == 0);
  }

  TEST_CASE("unconstrained queries are unknown") {
    auto c = close(parse("group G\n"));
    CHECK(ask(c, "G", Attr::CompactlyGenerated) == Answer::Unknown);
    CHECK(ask(c, "G", Attr::F, 1) == Answer::Unknown);
    // Every group has type F_0.
    CHECK(ask(c, "G", Attr::F, 0) == Answer::True);
    CHECK_THROWS_AS(query(c, "H", Attr::F, 1), tdlc::InputError);
  }

  TEST_CASE("contradiction between F_2 and not compactly presented") {
    auto c = close(parse("group G\nproperty G F 2\nproperty G compactly_presented = false\n"));
    auto contra = c.contradictions();
    REQUIRE_FALSE(contra.empty());
    CHECK(ask(c, "G", Attr::CompactlyPresented) == Answer::Contradictory);
    bool via_r1 = false;
    for (const auto& x : contra)
      for (const Fact& f : {x.lo, x.hi})
        for (const Derivation* d : c.chain(f)) via_r1 = via_r1 || d->rule == "R1";
    CHECK(via_r1);
    CHECK(report_text(c).find("contradictions:") != std::string::npos);
  }

  TEST_CASE("downward closure and ring change") {
    auto c = close(parse("group G\nproperty G F 3\n"));
    CHECK(ask(c, "G", Attr::F, 2) == Answer::True);
    CHECK(ask(c, "G", Attr::FP_Z, 3) == Answer::True);
    CHECK(ask(c, "G", Attr::FP_Q, 3) == Answer::True);
    CHECK(ask(c, "G", Attr::KP_Q, 3) == Answer::True);
    CHECK(ask(c, "G", Attr::K, 3) == Answer::True);
    CHECK(ask(c, "G", Attr::CompactlyPresented) == Answer::True);
  }

  TEST_CASE("type K does not give type F") {
    auto c = close(parse("group G\nproperty G K 3\n"));
    CHECK(ask(c, "G", Attr::F, 1) == Answer::Unknown);
    CHECK(ask(c, "G", Attr::FP_Z, 1) == Answer::Unknown);
  }

  TEST_CASE("transfer relations") {
    auto lattice = close(parse("group L\ngroup G\nproperty G F 4\nrelation uniform_lattice L G\n"));
    CHECK(ask(lattice, "L", Attr::F, 4) == Answer::True);
    auto back = close(parse("group L\ngroup G\nproperty L FP 2 over Q = false\nrelation uniform_lattice L G\n"));
    CHECK(ask(back, "G", Attr::FP_Q, 2) == Answer::False);

    auto qi = close(parse("group A\ngroup B\nproperty A FP 5 over Z\nrelation quasi_isometric A B\n"));
    CHECK(ask(qi, "B", Attr::FP_Z, 5) == Answer::True);

    auto retract = close(parse("group G\ngroup G2\nproperty G2 F 3\nrelation quasi_retract G G2\n"));
    CHECK(ask(retract, "G", Attr::F, 3) == Answer::True);
    CHECK(ask(retract, "G2", Attr::F, 3) == Answer::True);

    auto gr = close(parse("group H\ngroup G\nproperty G compactly_presented\nrelation group_retract H G\n"));
    CHECK(ask(gr, "H", Attr::CompactlyPresented) == Answer::True);

    auto normal = close(parse("group N\ngroup G\nproperty G F 3\nrelation normal_closed N G\n"));
    CHECK(ask(normal, "N", Attr::F, 1) == Answer::Unknown);
  }

  TEST_CASE("wreath products") {
    auto c = close(parse("group B\ngroup H\ngroup G\nproperty B F 3\nproperty H poly_compact_open_by_cyclic\n"
                         "property H F inf\nrelation wreath G B H orbits=1 orbits_infinite=2\n"));
    CHECK(ask(c, "G", Attr::F, 1) == Answer::True);
    CHECK(ask(c, "G", Attr::F, 2) == Answer::False);
    CHECK(ask(c, "G", Attr::CompactlyPresented) == Answer::False);

    auto necessary = close(parse("group B\ngroup H\ngroup G\nproperty B compactly_generated = false\n"
                                 "relation wreath G B H\n"));
    CHECK(ask(necessary, "G", Attr::CompactlyGenerated) == Answer::False);

    auto sufficient = close(parse("group B\ngroup H\ngroup G\nproperty B F 2\nproperty H F 2\n"
                                  "relation wreath G B H orbits=2 stab=all:2\n"));
    CHECK(ask(sufficient, "G", Attr::F, 2) == Answer::True);
  }

  TEST_CASE("dimension bounds") {
    auto c = close(parse("group N\ngroup G\ngroup Q\nproperty N cd_Q <= 2\nproperty Q cd_Q <= 1\n"
                         "relation extension N G Q\nproperty G sigma_compact\nproperty G hd_Q >= 2\n"));
    auto cd = query(c, "G", Attr::Cd);
    CHECK(cd.bound.hi == 3);
    CHECK(cd.bound.lo == 2);
    auto eq = close(parse("group G\nproperty G FP inf over Q\nproperty G hd_Q 2\n"));
    auto e = query(eq, "G", Attr::Cd);
    CHECK(e.answer == Answer::True);
    CHECK(e.bound.lo == 2);
    CHECK(e.bound.hi == 2);
  }

  TEST_CASE("every derivation replays") {
    std::mt19937_64 rng(101);
    for (int n = 0; n < 30; ++n) {
      auto c = close(parse(dsl_gen::random_script(rng, 6, 6, 10)));
      for (const auto& d : c.derivations())
        if (d.rule != "given") CHECK_MESSAGE(replay(c, d), std::string(describe(c.database(), d.fact) + " via " + d.rule));
    }
  }

  TEST_CASE("closure is independent of firing order") {
    std::mt19937_64 rng(202);
    for (int db_index = 0; db_index < 20; ++db_index) {
      auto db = parse(dsl_gen::random_script(rng, 5 + db_index % 4, 7, 9));
      auto base = close(db);
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto other = close(db, seed);
        REQUIRE(other.bounds().size() == base.bounds().size());
        bool same = true;
        for (const auto& [k, b] : base.bounds()) {
          auto o = other.bound(k);
          same = same && o.lo == b.lo && o.hi == b.hi;
        }
        CHECK(same);
      }
    }
  }

  TEST_CASE("adding facts only tightens bounds") {
    std::mt19937_64 rng(303);
    for (int n = 0; n < 30; ++n) {
      auto script = dsl_gen::random_script(rng, 5, 6, 6);
      auto more = script + "property G" + std::to_string(rng() % 5) + " F " + std::to_string(rng() % 5) + "\n";
      auto a = close(parse(script));
      auto b = close(parse(more));
      for (const auto& [k, bound] : a.bounds()) {
        auto t = b.bound(k);
        CHECK(t.lo >= bound.lo);
        CHECK(t.hi <= bound.hi);
      }
    }
  }

  TEST_CASE("adversarial diagrams terminate") {
    // 50 groups in a long extension chain closed into a cycle, with
    // quasi-isometries and wreaths stacked on top.
    std::ostringstream os;
    for (int i = 0; i < 50; ++i) os << "group G" << i << '\n';
    for (int i = 0; i < 50; ++i) {
      os << "relation extension G" << i << " G" << (i + 1) % 50 << " G" << (i + 2) % 50 << '\n';
      os << "relation quasi_isometric G" << i << " G" << (i + 7) % 50 << '\n';
      os << "relation wreath G" << i << " G" << (i + 3) % 50 << " G" << (i + 11) % 50 << " orbits=64 stab=all:64\n";
    }
    os << "property G0 F inf\nproperty G25 cd_Q <= 64\nproperty G13 hd_Q >= 1\n";
    auto start = std::chrono::steady_clock::now();
    auto c = close(parse(os.str()));
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(elapsed < 5.0);
    CHECK(c.passes() > 0);
  }

  TEST_CASE("reports carry citations") {
    auto c = close(parse("group N\ngroup G\ngroup Q\nproperty N FP 2 over Q\nproperty Q FP 3 over Q\n"
                         "relation extension N G Q\nquery G FP 2 over Q\n"));
    auto text = report_text(c);
    CHECK(text.find("Thm thm:LHS") != std::string::npos);
    CHECK(text == report_text(close(c.database())));
    auto json = report_json(c);
    CHECK(json.find("\"citation\": \"Thm thm:LHS\"") != std::string::npos);
    for (const auto& [rule, cite] : citations())
      if (rule != "given") CHECK_FALSE(cite.empty());
  }
}
