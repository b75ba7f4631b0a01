#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quip/formalisms.hpp"
#include "quip/qbf.hpp"
#include "quip/reductions.hpp"

namespace quip {

// Random QSAT2 instance: exists P forall Q matrix.
struct Qsat2Instance {
  std::vector<std::string> exist;  // P, |P| = k
  std::vector<std::string> univ;   // Q
  Formula matrix;
  std::uint64_t seed = 0;

  Qbf qbf() const { return Formula::exists(exist, Formula::forall(univ, matrix)); }
};

// Dnf: a disjunction of 3-literal terms. Cnf: a conjunction of 3-literal
// clauses. The ratio is terms (clauses) per variable.
enum class MatrixShape { Dnf, Cnf };

struct GenOptions {
  double ratio = 4.0;
  MatrixShape shape = MatrixShape::Dnf;
};

// Variables are x1..xk (existential) and y1..y(n-k). Pure in its arguments.
Qsat2Instance gen_qsat2(std::size_t k, std::size_t n, std::uint64_t seed, const GenOptions& options = {});

// Truth of exists P forall Q matrix, evaluated directly with the BDD engine.
bool qsat2_truth(const Qsat2Instance& q, EngineConfig config = {});

// T empty; defaults :p/p and :!p/!p for every p in P; brave reasoning of
// the matrix.
struct DlInstance {
  DefaultTheory theory;
  Task task;
};
DlInstance transform_to_dl(const Qsat2Instance& q);

// Saturation program: p v np for p in P; q v nq, q :- w, nq :- w for q in Q;
// w derived from the matrix; :- not w. Existence of a stable model.
struct DlpInstance {
  LogicProgram program;
  Task task;
};
DlpInstance transform_to_dlp(const Qsat2Instance& q);

// H = {hp, hnp : p in P}, T = {hp -> p, hnp -> !p, matrix -> s}, observation s.
struct AbdInstance {
  AbductionProblem problem;
  Task task;
};
AbdInstance transform_to_abd(const Qsat2Instance& q);

enum class BenchFormalism { Dl, Dlp, Abd };
const char* formalism_name(BenchFormalism f);
std::vector<BenchFormalism> all_bench_formalisms();

// Runs one transformed instance through reduce, compile and is_true.
bool pipeline_answer(const Qsat2Instance& q, BenchFormalism f, EngineConfig config = {});

struct RoundTripEntry {
  BenchFormalism formalism;
  bool answer = false;
  double seconds = 0;
  bool timeout = false;
};

struct RoundTripReport {
  std::uint64_t seed = 0;
  bool truth = false;
  std::vector<RoundTripEntry> entries;

  // Every non-timeout answer equals the truth.
  bool ok() const;
};

RoundTripReport roundtrip_check(const Qsat2Instance& q, EngineConfig config = {});

struct BenchConfig {
  std::size_t k_min = 2;
  std::size_t k_max = 10;
  std::size_t n = 20;
  std::size_t seeds = 5;
  std::uint64_t first_seed = 1;
  double timeout_s = 90;
  GenOptions gen;
  std::vector<BenchFormalism> formalisms = all_bench_formalisms();
  int jobs = 1;  // concurrent instances; >1 perturbs the timings
};

struct BenchRecord {
  std::string formalism;
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool truth = false;
  bool answer = false;
  double time_s = 0;
  std::string status;  // "ok" or "timeout"
};

// Records ordered by (formalism, k, seed). Throws ConsistencyError when a
// finished run contradicts the truth of its instance.
std::vector<BenchRecord> bench_run(const BenchConfig& config);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace quip
