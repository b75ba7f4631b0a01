#include "quip/benchgen.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <random>
#include <tuple>

#include "quip/errors.hpp"
#include "quip/parallel.hpp"

namespace quip {

Qsat2Instance gen_qsat2(std::size_t k, std::size_t n, std::uint64_t seed, const GenOptions& options) {
  if (k < 1 || k >= n) throw Error("gen_qsat2 needs 1 <= k < n");
  if (!(options.ratio > 0)) throw Error("gen_qsat2 needs a positive ratio");
  Qsat2Instance q;
  q.seed = seed;
  std::vector<std::string> all;
  for (std::size_t i = 1; i <= k; ++i) q.exist.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n - k; ++i) q.univ.push_back("y" + std::to_string(i));
  all = q.exist;
  all.insert(all.end(), q.univ.begin(), q.univ.end());

  std::mt19937_64 rng(seed);
  const std::size_t width = std::min<std::size_t>(3, n);
  const std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(options.ratio * static_cast<double>(n) + 0.5));
  std::vector<Formula> groups;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<std::size_t> picked;
    while (picked.size() < width) {
      std::size_t v = static_cast<std::size_t>(rng() % n);
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    }
    std::vector<Formula> lits;
    for (auto v : picked) {
      Formula x = Formula::var(all[v]);
      lits.push_back(rng() & 1 ? x : Formula::negate(x));
    }
    groups.push_back(options.shape == MatrixShape::Dnf ? conj_all(lits) : disj_all(lits));
  }
  q.matrix = options.shape == MatrixShape::Dnf ? disj_all(groups) : conj_all(groups);
  return q;
}

bool qsat2_truth(const Qsat2Instance& q, EngineConfig config) {
  std::vector<std::string> order = q.exist;
  order.insert(order.end(), q.univ.begin(), q.univ.end());
  order.insert(order.end(), config.order.begin(), config.order.end());
  config.order = std::move(order);
  Engine engine(std::move(config));
  return engine.is_true(q.qbf());
}

namespace {

std::vector<std::string> vocabulary(const Qsat2Instance& q) {
  std::vector<std::string> v = q.exist;
  v.insert(v.end(), q.univ.begin(), q.univ.end());
  for (const auto& x : variables(q.matrix))
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  return v;
}

// Negation normal form over And/Or/Not-of-variable.
Formula nnf(const Formula& f, bool positive) {
  switch (f.op()) {
    case Op::Var: return positive ? f : Formula::negate(f);
    case Op::True: return positive ? Formula::top() : Formula::bottom();
    case Op::False: return positive ? Formula::bottom() : Formula::top();
    case Op::Not: return nnf(f.lhs(), !positive);
    case Op::And:
      return positive ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                      : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Or:
      return positive ? Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                      : Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Impl:
      return positive ? Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), true))
                      : Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case Op::Iff: {
      Formula both = Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true));
      Formula neither = Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
      Formula mixed_a = Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), false));
      Formula mixed_b = Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true));
      return positive ? Formula::disj(both, neither) : Formula::disj(mixed_a, mixed_b);
    }
    default: throw Error("QSAT2 matrices must be objective");
  }
}

void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
  if (f.op() == op) {
    flatten(f.lhs(), op, out);
    flatten(f.rhs(), op, out);
  } else {
    out.push_back(f);
  }
}

// Horn rules deriving `head` exactly when the NNF formula holds under the
// guessed literal atoms.
class Deriver {
 public:
  Deriver(LogicProgram& lp, NameSupply& names, std::map<std::string, std::string> negated)
      : lp_(lp), names_(names), negated_(std::move(negated)) {}

  void derive(const std::string& head, const Formula& f) {
    if (f.op() == Op::False) return;
    if (f.op() == Op::Or) {
      std::vector<Formula> parts;
      flatten(f, Op::Or, parts);
      for (const auto& p : parts) derive(head, p);
      return;
    }
    std::vector<Formula> parts;
    flatten(f, Op::And, parts);
    Rule r;
    r.head = {head};
    for (const auto& p : parts) {
      if (p.op() == Op::True) continue;
      if (p.op() == Op::False) return;
      if (auto atom = literal_atom(p)) {
        r.pos.push_back(*atom);
      } else {
        std::string aux = names_.fresh("aux");
        derive(aux, p);
        r.pos.push_back(aux);
      }
    }
    lp_.rules.push_back(std::move(r));
  }

 private:
  std::optional<std::string> literal_atom(const Formula& f) const {
    if (f.op() == Op::Var) return f.name();
    if (f.op() == Op::Not && f.lhs().op() == Op::Var) return negated_.at(f.lhs().name());
    return std::nullopt;
  }

  LogicProgram& lp_;
  NameSupply& names_;
  std::map<std::string, std::string> negated_;
};

}  // namespace

DlInstance transform_to_dl(const Qsat2Instance& q) {
  DlInstance out;
  for (const auto& p : q.exist) {
    Formula x = Formula::var(p);
    out.theory.defaults.push_back({Formula::top(), x, x});
    out.theory.defaults.push_back({Formula::top(), Formula::negate(x), Formula::negate(x)});
  }
  out.task = Task::brave(q.matrix);
  return out;
}

DlpInstance transform_to_dlp(const Qsat2Instance& q) {
  DlpInstance out;
  std::vector<std::string> vocab = vocabulary(q);
  NameSupply names(vocab);
  std::map<std::string, std::string> negated;
  for (const auto& v : vocab) negated[v] = names.fresh("n" + v);
  std::string w = names.fresh("w");

  auto& rules = out.program.rules;
  for (const auto& p : q.exist) rules.push_back({{p, negated[p]}, {}, {}});
  for (const auto& v : vocab) {
    if (std::find(q.exist.begin(), q.exist.end(), v) != q.exist.end()) continue;
    rules.push_back({{v, negated[v]}, {}, {}});
    rules.push_back({{v}, {w}, {}});
    rules.push_back({{negated[v]}, {w}, {}});
  }
  Deriver(out.program, names, negated).derive(w, nnf(q.matrix, true));
  rules.push_back({{}, {}, {w}});
  out.task = Task::existence();
  return out;
}

AbdInstance transform_to_abd(const Qsat2Instance& q) {
  AbdInstance out;
  std::vector<std::string> vocab = vocabulary(q);
  NameSupply names(vocab);
  auto& ap = out.problem;
  for (const auto& p : q.exist) {
    std::string pos = names.fresh("h" + p);
    std::string neg = names.fresh("hn" + p);
    ap.hypotheses.push_back(pos);
    ap.hypotheses.push_back(neg);
    ap.theory.formulas.push_back(Formula::impl(Formula::var(pos), Formula::var(p)));
    ap.theory.formulas.push_back(Formula::impl(Formula::var(neg), Formula::negate(Formula::var(p))));
  }
  ap.observation = names.fresh("s");
  ap.theory.formulas.push_back(Formula::impl(q.matrix, Formula::var(ap.observation)));
  out.task.kind = TaskKind::AbdExists;
  return out;
}

const char* formalism_name(BenchFormalism f) {
  switch (f) {
    case BenchFormalism::Dl: return "dl";
    case BenchFormalism::Dlp: return "dlp";
    case BenchFormalism::Abd: return "abd";
  }
  return "?";
}

std::vector<BenchFormalism> all_bench_formalisms() {
  return {BenchFormalism::Dl, BenchFormalism::Dlp, BenchFormalism::Abd};
}

namespace {

bool run_reduction(const Reduction& r, EngineConfig config) {
  std::vector<std::string> order = r.order_hint;
  order.insert(order.end(), config.order.begin(), config.order.end());
  config.order = std::move(order);
  Engine engine(std::move(config));
  return engine.is_true(r.qbf);
}

}  // namespace

bool pipeline_answer(const Qsat2Instance& q, BenchFormalism f, EngineConfig config) {
  switch (f) {
    case BenchFormalism::Dl: {
      DlInstance i = transform_to_dl(q);
      return run_reduction(reduce_dl_mt(i.theory, i.task), std::move(config));
    }
    case BenchFormalism::Dlp: {
      DlpInstance i = transform_to_dlp(q);
      return run_reduction(reduce_dlp(i.program, i.task), std::move(config));
    }
    case BenchFormalism::Abd: {
      AbdInstance i = transform_to_abd(q);
      return run_reduction(reduce_abd(i.problem, i.task), std::move(config));
    }
  }
  throw Error("unknown formalism");
}

bool RoundTripReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [&](const RoundTripEntry& e) { return e.timeout || e.answer == truth; });
}

RoundTripReport roundtrip_check(const Qsat2Instance& q, EngineConfig config) {
  RoundTripReport report;
  report.seed = q.seed;
  report.truth = qsat2_truth(q, config);
  for (auto f : all_bench_formalisms()) {
    RoundTripEntry e{f};
    auto start = std::chrono::steady_clock::now();
    try {
      e.answer = pipeline_answer(q, f, config);
    } catch (const TimeoutError&) {
      e.timeout = true;
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.entries.push_back(e);
  }
  return report;
}

std::vector<BenchRecord> bench_run(const BenchConfig& config) {
  struct Job {
    BenchFormalism formalism;
    std::size_t k;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto f : config.formalisms)
    for (std::size_t k = config.k_min; k <= config.k_max; ++k)
      for (std::size_t s = 0; s < config.seeds; ++s) jobs.push_back({f, k, config.first_seed + s});

  std::vector<BenchRecord> records(jobs.size());
  EngineConfig engine;
  engine.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(config.timeout_s * 1000));
  parallel_for(jobs.size(), config.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    Qsat2Instance q = gen_qsat2(job.k, config.n, job.seed, config.gen);
    BenchRecord& r = records[i];
    r.formalism = formalism_name(job.formalism);
    r.k = job.k;
    r.n = config.n;
    r.seed = job.seed;
    r.truth = qsat2_truth(q);
    auto start = std::chrono::steady_clock::now();
    try {
      r.answer = pipeline_answer(q, job.formalism, engine);
      r.status = "ok";
    } catch (const TimeoutError&) {
      r.status = "timeout";
    }
    r.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.status == "ok" && r.answer != r.truth)
      throw ConsistencyError(std::string("pipeline answer contradicts the instance truth (") + r.formalism +
                             ", k=" + std::to_string(r.k) + ", seed=" + std::to_string(r.seed) + ")");
  });
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.formalism, a.k, a.seed) < std::tie(b.formalism, b.k, b.seed);
  });
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "formalism,k,n,seed,truth,answer,time_s,status\n";
  for (const auto& r : records) {
    out << r.formalism << ',' << r.k << ',' << r.n << ',' << r.seed << ',' << (r.truth ? "true" : "false") << ','
        << (r.status == "ok" ? (r.answer ? "true" : "false") : "") << ',' << r.time_s << ',' << r.status << '\n';
  }
}

}  // namespace quip
