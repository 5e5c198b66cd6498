#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = tdlc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("examples") {
    auto h = run({"homology", golden::data("c4.json"), "--ring", "z"});
    CHECK(h.code == 0);
    CHECK(h.out.find("H0=Z, H1=Z") != std::string::npos);

    auto lhs = run({"infer", golden::data("lhs.dsl")});
    CHECK(lhs.code == 0);
    CHECK(lhs.out.find("Thm thm:LHS") != std::string::npos);
    CHECK(lhs.out.find("FP_2 over Q") != std::string::npos);

    auto bad = run({"rips", "bad-germ:x", "-r", "1", "-d", "1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("germ:") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"infer", golden::data("contradiction.dsl")}).code == 1);
    CHECK(run({"homology", golden::data("missing.json")}).code == 2);
    CHECK(run({"deflate", golden::data("bad_orbits.json")}).code == 2);
    auto capped = run({"--caps", "vertices=10", "rips", "grid:2", "-r", "5", "-d", "1"});
    CHECK(capped.code == 3);
    CHECK(run({"--caps", "vertices=ten", "rips", "grid:2", "-r", "1", "-d", "1"}).code == 2);
  }

  TEST_CASE("csv output file") {
    auto dir = std::filesystem::temp_directory_path() / "tdlc_cli_test";
    std::filesystem::create_directories(dir);
    auto file = (dir / "scan.csv").string();
    auto r = run({"brown-scan", "grid:2", "--radii", "3,4", "--scales", "1,2", "--dims", "1", "-o", file});
    CHECK(r.code == 0);
    std::ifstream in(file);
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,r,d,r2,d2,betti_inner,trivial");
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("golden files") {
    for (const auto& c : golden::cases()) {
      auto text = golden::run(c.args);
      if (golden::updating()) {
        golden::write(c, text);
        continue;
      }
      CHECK_MESSAGE(text == golden::read(c), c.name);
      CHECK_MESSAGE(text == golden::run(c.args), c.name);
    }
  }
}
