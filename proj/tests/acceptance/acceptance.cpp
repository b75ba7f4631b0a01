// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (capped at 1), so ctest reports any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "expected.hpp"
#include "quip/benchgen.hpp"
#include "quip/frontend.hpp"
#include "quip/interpreter.hpp"
#include "quip/qbf.hpp"
#include "quip/reductions.hpp"
#include "quip/syntax.hpp"
#include "support.hpp"

using namespace quip;
using quip::testing::Expected;
using quip::testing::Rng;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failed = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Verdict()>& body) {
  auto start = std::chrono::steady_clock::now();
  Verdict o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = s < limit_s;
  bool pass = o.pass && in_time;
  if (!pass) ++failed;
  std::printf("%s [%d] %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s,
              limit_s, in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

Verdict from(const Tally& t, const std::string& what) {
  std::ostringstream d;
  d << t.checks - t.failures << "/" << t.checks << " " << what << " agree";
  if (t.failures) d << "; first mismatch: " << t.first_failure;
  return {t.failures == 0, d.str()};
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(QUIP_TEST_DATA_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> run_file(const std::string& text, DlEncoding enc) {
  SessionOptions o;
  o.encoding = enc;
  Session session(o);
  std::vector<std::string> lines;
  for (const auto& st : parse_input(text)) {
    auto r = session.execute(st);
    lines.insert(lines.end(), r.lines.begin(), r.lines.end());
  }
  return lines;
}

// compares one pipeline run with the oracle expectation
void compare(Tally& t, const Reduction& r, const Expected& e, const std::string& label) {
  quip::Outcome out = solve(r);
  bool ok = out.answer == e.answer;
  if (r.detail) ok = ok && quip::testing::same_witnesses(out.witnesses, e.witnesses);
  t.check(ok, label + (r.detail ? " witnesses " + quip::testing::describe(out.witnesses) + " vs oracle " +
                                      quip::testing::describe(e.witnesses)
                                : std::string(" answer ") + render_answer(out.answer)));
}

std::vector<Task> query_tasks(Rng& rng, const std::vector<std::string>& vocab) {
  Formula phi = quip::testing::random_formula(rng, vocab, 2);
  std::vector<Task> ts;
  for (bool detail : {false, true}) {
    ts.push_back(Task::existence(detail));
    ts.push_back(Task::brave(phi, detail));
    ts.push_back(Task::skeptical(phi, detail));
  }
  return ts;
}

std::vector<std::string> nonempty(std::vector<std::string> v) {
  if (v.empty()) v.push_back("p1");
  return v;
}

}  // namespace

int main() {
  const std::string pacifist = "Th( {(Republican)&(Quaker)} u {(Pacifist)} )";
  const std::string hawk = "Th( {(Republican)&(Quaker)} u {(!Pacifist)} )";

  criterion(1, "Nixon golden output", 1, [&] {
    Tally t;
    for (auto enc : {DlEncoding::Mt, DlEncoding::FullSet, DlEncoding::Both}) {
      auto all = run_file(slurp("nixon"), enc);
      std::multiset<std::string> got(all.begin(), all.end()), want{pacifist, hawk};
      t.check(got == want, "extension lines");
      // brave then skeptical, one line each
      auto q = run_file(slurp("nixon_queries"), enc);
      t.check(q == std::vector<std::string>{pacifist, hawk}, "query lines");
    }
    return from(t, "byte-exact outputs");
  });

  criterion(2, "Oracle equivalence, default logic", 300, [&] {
    Rng rng(1001);
    Tally t;
    for (int i = 0; i < 300; ++i) {
      DefaultTheory dt = quip::testing::random_default_theory(rng, 6, 6);
      for (const Task& task : query_tasks(rng, nonempty(dt.vocabulary()))) {
        Expected e = quip::testing::expected_dl(dt, task);
        std::string label = "theory #" + std::to_string(i);
        compare(t, reduce_dl_mt(dt, task), e, label + " generating-set");
        compare(t, reduce_dl_fullset(dt, task), e, label + " full-set");
      }
    }
    return from(t, "theory/task/encoding runs");
  });

  criterion(3, "Oracle equivalence, stable models", 300, [&] {
    Rng rng(1002);
    Tally t;
    for (int i = 0; i < 300; ++i) {
      LogicProgram lp = quip::testing::random_program(rng, 8, 8, 2);
      for (const Task& task : query_tasks(rng, nonempty(lp.atoms())))
        compare(t, reduce_dlp(lp, task), quip::testing::expected_dlp(lp, task), "program #" + std::to_string(i));
    }
    return from(t, "program/task runs");
  });

  criterion(4, "Oracle equivalence, abduction", 300, [&] {
    Rng rng(1003);
    Tally t;
    for (int i = 0; i < 300; ++i) {
      AbductionProblem ap = quip::testing::random_abduction(rng, 6);
      std::string h = ap.hypotheses[rng() % ap.hypotheses.size()];
      for (auto kind : {TaskKind::AbdExists, TaskKind::AbdRelevance, TaskKind::AbdNecessity})
        for (bool minimal : {false, true})
          for (bool detail : {false, true}) {
            Task task;
            task.kind = kind;
            task.hypothesis = h;
            task.minimal = minimal;
            task.detail = detail;
            compare(t, reduce_abd(ap, task), quip::testing::expected_abd(ap, task), "problem #" + std::to_string(i));
          }
    }
    return from(t, "problem/task runs");
  });

  criterion(5, "Oracle equivalence, autoepistemic logic", 300, [&] {
    Rng rng(1004);
    Tally t;
    for (int i = 0; i < 200; ++i) {
      AelTheory a = quip::testing::random_ael(rng, 5);
      auto atoms = a.atomized().atoms;
      for (Task task : query_tasks(rng, nonempty(variables(a.theory)))) {
        // half of the queries also speak about beliefs
        if (task.query && !atoms.empty() && i % 2)
          task.query = Formula::conj(*task.query, Formula::negate(Formula::modal(atoms[i % atoms.size()].inner)));
        for (bool consistent : {true, false}) {
          task.consistent_only = consistent;
          compare(t, reduce_ael(a, task), quip::testing::expected_ael(a, task), "theory #" + std::to_string(i));
        }
      }
    }
    return from(t, "theory/task runs");
  });

  criterion(6, "Circumscription formula", 300, [&] {
    Rng rng(1005);
    Tally t;
    for (int i = 0; i < 200; ++i) {
      CircPolicy c = quip::testing::random_circ(rng, 8);
      auto vocab = c.vocabulary();
      Engine engine;
      Sop sop = engine.to_sop(engine.compile(build_circ(c)));
      std::set<Assignment> from_sop;
      for (const auto& a : quip::testing::all_assignments(vocab))
        if (sop.holds(a)) from_sop.insert(a);
      auto models = oracle_circ_models(c);
      t.check(from_sop == std::set<Assignment>(models.begin(), models.end()),
              "policy #" + std::to_string(i) + " model set");
      for (int j = 0; j < 2; ++j) {
        Formula phi = quip::testing::random_formula(rng, vocab, 2);
        t.check(engine.is_true(circ_entails_qbf(c, phi)) == oracle_circ_entails(c, phi),
                "policy #" + std::to_string(i) + " |= " + to_string(phi));
      }
    }
    return from(t, "model sets and inferences");
  });

  criterion(7, "Round-trip self-test", 600, [&] {
    Tally t;
    std::size_t trues = 0, timeouts = 0;
    EngineConfig config;
    config.timeout = std::chrono::seconds(90);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      std::size_t n = 4 + seed % 9;                  // 4..12
      std::size_t k = 1 + seed % std::min<std::size_t>(8, n - 1);  // 1..8, below n
      GenOptions g{0.5 + 0.5 * static_cast<double>(seed % 6), seed % 3 ? MatrixShape::Dnf : MatrixShape::Cnf};
      Qsat2Instance q = gen_qsat2(k, n, seed, g);
      bool truth = quip::testing::expand_eval(q.qbf(), {});
      trues += truth;
      RoundTripReport r = roundtrip_check(q, config);
      t.check(r.truth == truth, "seed " + std::to_string(seed) + " truth");
      for (const auto& e : r.entries) {
        if (e.timeout) {
          ++timeouts;
          continue;
        }
        t.check(e.answer == truth, std::string(formalism_name(e.formalism)) + " seed " + std::to_string(seed));
      }
    }
    Verdict o = from(t, "instance/formalism answers");
    o.detail += "; " + std::to_string(trues) + " true instances, " + std::to_string(timeouts) + " timeouts";
    return o;
  });

  criterion(8, "QBF engine fidelity", 120, [&] {
    Rng rng(1008);
    Tally t;
    for (int i = 0; i < 1000; ++i) {
      auto vars = quip::testing::atoms(1 + i % 10, "v");
      bool closed = i % 2 == 0;
      Qbf q = quip::testing::random_qbf(rng, vars, 6, closed);
      Engine engine;
      std::string label = "formula " + to_string(q);
      if (closed) {
        bool truth = quip::testing::expand_eval(q, {});
        t.check(engine.is_true(q) == truth, label);
        t.check(quip::testing::qdimacs_eval(export_qdimacs(q)) == truth, label + " (QDIMACS)");
      } else {
        Sop sop = engine.to_sop(engine.compile(q));
        bool ok = true;
        for (const auto& a : quip::testing::all_assignments(free_variables(q)))
          ok = ok && sop.holds(a) == quip::testing::expand_eval(q, a);
        t.check(ok, label + " (SOP)");
      }
    }
    return from(t, "engine results");
  });

  criterion(9, "Timing trend, n = 20, k = 2..10", 9 * 5 * 3 * 90, [&] {
    BenchConfig config;  // n = 20, k = 2..10, 5 seeds, 90 s per instance
    auto rows = bench_run(config);
    std::size_t timeouts = 0;
    std::map<std::string, std::map<std::size_t, std::vector<double>>> times;
    for (const auto& r : rows) {
      if (r.status != "ok") ++timeouts;
      times[r.formalism][r.k].push_back(r.time_s);
    }
    std::ostringstream d;
    bool monotone = true;
    for (auto& [formalism, by_k] : times) {
      d << formalism << " medians";
      double prev = 0;
      bool ok = true;
      for (auto& [k, ts] : by_k) {
        std::sort(ts.begin(), ts.end());
        double med = ts[ts.size() / 2];
        d << " " << k << ":" << static_cast<long long>(med * 1e6 + 0.5) << "us";
        if (med < prev) ok = false;
        prev = med;
      }
      d << (ok ? " (non-decreasing); " : " (decreases); ");
      monotone = monotone && ok;
    }
    d << timeouts << " timeouts in " << rows.size() << " runs";
    return Verdict{monotone && timeouts == 0, d.str()};
  });

  return failed ? 1 : 0;
}
