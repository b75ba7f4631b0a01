#include <catch2/catch_amalgamated.hpp>

#include "quip/errors.hpp"
#include "quip/syntax.hpp"
#include "quip/truth_table.hpp"
#include "support.hpp"

using namespace quip;

TEST_CASE("model counts of small formulas", "[tt]") {
  auto count = [](const char* f, std::vector<std::string> vocab) {
    return tt::count_models(tt::Program(parse_formula(f), vocab), tt::Exec::Serial);
  };
  CHECK(count("p", {"p"}) == 1);
  CHECK(count("p v q", {"p", "q"}) == 3);
  CHECK(count("p", {"p", "q", "r"}) == 4);
  CHECK(count("TRUE", {}) == 1);
  CHECK(count("FALSE", {"p"}) == 0);
  CHECK(count("p <-> q", {"p", "q", "a", "b", "c", "d", "e"}) == 64);
}

TEST_CASE("models lists assignments in index order", "[tt]") {
  auto ms = tt::models(parse_formula("p v q"), {"p", "q"});
  REQUIRE(ms.size() == 3);
  CHECK(ms[0] == Assignment{{"p", true}, {"q", false}});
  CHECK(ms[1] == Assignment{{"p", false}, {"q", true}});
  CHECK(ms[2] == Assignment{{"p", true}, {"q", true}});
}

TEST_CASE("truth tables reject oversized or non-objective input", "[tt][errors]") {
  auto vocab = quip::testing::atoms(tt::kMaxVariables + 1);
  CHECK_THROWS_AS(tt::Program(Formula::var("p1"), vocab), BoundError);
  CHECK_THROWS_AS(tt::Program(parse_formula("L(p)"), {"p"}), Error);
  CHECK_THROWS_AS(tt::Program(parse_formula("p & q"), {"p"}), Error);
}

TEST_CASE("property: parallel, serial and scalar enumerators agree", "[tt][property]") {
  quip::testing::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    // up to 16 variables so that the parallel path (>= 256 blocks) is taken
    auto vocab = quip::testing::atoms(1 + static_cast<std::size_t>(i % 16));
    Formula f = quip::testing::random_formula(rng, vocab, 6);
    tt::Program p(f, vocab);
    auto reference = tt::count_models_reference(f, vocab);
    CHECK(tt::count_models(p, tt::Exec::Serial) == reference);
    CHECK(tt::count_models(p, tt::Exec::Parallel) == reference);
    CHECK(tt::any_model(p, tt::Exec::Parallel) == (reference > 0));
    CHECK(tt::any_model(p, tt::Exec::Serial) == (reference > 0));
  }
}
