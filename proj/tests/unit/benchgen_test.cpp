#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "quip/benchgen.hpp"
#include "quip/errors.hpp"
#include "quip/oracles.hpp"
#include "quip/syntax.hpp"
#include "support.hpp"

using namespace quip;

namespace {

Qsat2Instance fixed(const char* matrix) {
  return Qsat2Instance{{"x1"}, {"y1"}, parse_formula(matrix), 0};
}

// oracle answer of the transformed instance, never touching a reduction
bool oracle_answer(const Qsat2Instance& q, BenchFormalism f) {
  switch (f) {
    case BenchFormalism::Dl: {
      DlInstance d = transform_to_dl(q);
      for (const auto& fp : oracle_extensions(d.theory))
        if (extension_contains(d.theory, fp, *d.task.query)) return true;
      return false;
    }
    case BenchFormalism::Dlp: return !oracle_stable_models(transform_to_dlp(q).program, {20}).empty();
    case BenchFormalism::Abd: return !oracle_explanations(transform_to_abd(q).problem, false).empty();
  }
  return false;
}

}  // namespace

TEST_CASE("gen_qsat2 is a pure function of its arguments", "[benchgen]") {
  auto a = gen_qsat2(2, 4, 7), b = gen_qsat2(2, 4, 7);
  CHECK(a.matrix == b.matrix);
  CHECK(a.exist == std::vector<std::string>{"x1", "x2"});
  CHECK(a.univ == std::vector<std::string>{"y1", "y2"});
  CHECK(gen_qsat2(2, 4, 8).matrix != a.matrix);
  GenOptions cnf{2.0, MatrixShape::Cnf};
  CHECK(gen_qsat2(3, 9, 1, cnf).matrix == gen_qsat2(3, 9, 1, cnf).matrix);
  CHECK(conjuncts(gen_qsat2(3, 9, 1, cnf).matrix).size() == 18);

  CHECK_THROWS_AS(gen_qsat2(0, 4, 1), Error);
  CHECK_THROWS_AS(gen_qsat2(4, 4, 1), Error);
  CHECK_THROWS_AS(gen_qsat2(1, 4, 1, GenOptions{0.0}), Error);
}

TEST_CASE("tautological and contradictory matrices", "[benchgen]") {
  auto yes = fixed("x1 v !x1");
  auto no = fixed("x1 & y1");
  CHECK(qsat2_truth(yes));
  CHECK_FALSE(qsat2_truth(no));
  for (auto f : all_bench_formalisms()) {
    INFO(formalism_name(f));
    CHECK(pipeline_answer(yes, f));
    CHECK_FALSE(pipeline_answer(no, f));
    CHECK(oracle_answer(yes, f));
    CHECK_FALSE(oracle_answer(no, f));
  }
  CHECK(roundtrip_check(yes).ok());
  CHECK(roundtrip_check(no).ok());
  CHECK(roundtrip_check(yes).entries.size() == 3);
}

TEST_CASE("property: truth agrees with the expansion evaluator", "[benchgen][property]") {
  int trues = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::size_t n = 4 + seed % 9, k = 1 + seed % (n - 1);
    GenOptions g{0.5 + static_cast<double>(seed % 4), seed % 2 ? MatrixShape::Cnf : MatrixShape::Dnf};
    auto q = gen_qsat2(k, n, seed, g);
    bool t = quip::testing::expand_eval(q.qbf(), {});
    trues += t;
    CHECK(qsat2_truth(q) == t);
  }
  // the sample is mixed, so both branches are exercised
  CHECK(trues > 0);
  CHECK(trues < 50);
}

TEST_CASE("property: transformed instances agree with the oracles", "[benchgen][property]") {
  int oracle_checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    std::size_t n = 3 + seed % 4, k = 1 + seed % (n - 1);
    GenOptions g{0.5 + static_cast<double>(seed % 3), seed % 2 ? MatrixShape::Cnf : MatrixShape::Dnf};
    auto q = gen_qsat2(k, n, seed, g);
    bool t = quip::testing::expand_eval(q.qbf(), {});
    for (auto f : all_bench_formalisms()) {
      INFO(formalism_name(f) << " seed " << seed);
      // saturation programs grow auxiliary atoms; only small ones fit the oracle
      bool fits = f != BenchFormalism::Dlp || transform_to_dlp(q).program.atoms().size() <= 20;
      if (fits) {
        CHECK(oracle_answer(q, f) == t);
        ++oracle_checked;
      }
      CHECK(pipeline_answer(q, f) == t);
    }
  }
  CHECK(oracle_checked >= 75);
}

TEST_CASE("bench_run output", "[benchgen]") {
  BenchConfig empty;
  empty.k_min = 5;
  empty.k_max = 4;
  CHECK(bench_run(empty).empty());

  BenchConfig small;
  small.k_min = 1;
  small.k_max = 2;
  small.n = 6;
  small.seeds = 2;
  auto rows = bench_run(small);
  REQUIRE(rows.size() == 12);
  CHECK(rows.front().formalism == "abd");
  for (const auto& r : rows) {
    CHECK(r.status == "ok");
    CHECK(r.answer == r.truth);
  }
  auto again = bench_run(small);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(again[i].answer == rows[i].answer);

  std::ostringstream csv;
  write_csv(csv, rows);
  std::string header;
  std::istringstream in(csv.str());
  std::getline(in, header);
  CHECK(header == "formalism,k,n,seed,truth,answer,time_s,status");
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 12);

  small.jobs = 2;
  auto parallel = bench_run(small);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parallel[i].formalism == rows[i].formalism);
    CHECK(parallel[i].seed == rows[i].seed);
    CHECK(parallel[i].answer == rows[i].answer);
  }
}
