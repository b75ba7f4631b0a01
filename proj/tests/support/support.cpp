#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quip::testing {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
bool coin(Rng& rng, unsigned one_in) { return rng() % one_in == 0; }

template <class T>
const T& choose(Rng& rng, const std::vector<T>& xs) {
  return xs[pick(rng, xs.size())];
}

Formula literal(Rng& rng, const std::vector<std::string>& vars) {
  Formula v = Formula::var(choose(rng, vars));
  return coin(rng, 2) ? Formula::negate(v) : v;
}

std::vector<std::string> distinct_subset(Rng& rng, const std::vector<std::string>& from, std::size_t max) {
  std::vector<std::string> out;
  std::size_t n = from.empty() ? 0 : pick(rng, max + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& a = choose(rng, from);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

}  // namespace

std::vector<std::string> atoms(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Formula random_formula(Rng& rng, const std::vector<std::string>& vars, int depth) {
  if (depth <= 0 || coin(rng, 4)) {
    if (coin(rng, 14)) return coin(rng, 2) ? Formula::top() : Formula::bottom();
    return Formula::var(choose(rng, vars));
  }
  switch (pick(rng, 6)) {
    case 0: return Formula::negate(random_formula(rng, vars, depth - 1));
    case 1:
    case 2: return Formula::conj(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    case 3: return Formula::disj(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    case 4: return Formula::impl(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    default: return Formula::iff(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
  }
}

namespace {

Formula gen_qbf(Rng& rng, const std::vector<std::string>& leaves, const std::vector<std::string>& pool, int depth) {
  if (!pool.empty() && depth > 0 && coin(rng, 3)) {
    std::vector<std::string> block;
    std::size_t width = 1 + pick(rng, std::min<std::size_t>(2, pool.size()));
    std::vector<std::string> rest = pool;
    for (std::size_t i = 0; i < width; ++i) {
      std::size_t j = pick(rng, rest.size());
      block.push_back(rest[j]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    }
    std::vector<std::string> more = leaves;
    for (const auto& b : block)
      if (std::find(more.begin(), more.end(), b) == more.end()) more.push_back(b);
    Formula body = gen_qbf(rng, more, rest, depth - 1);
    return coin(rng, 2) ? Formula::exists(block, body) : Formula::forall(block, body);
  }
  if (depth <= 0 || leaves.empty() || coin(rng, 5)) {
    if (leaves.empty() || coin(rng, 12)) return coin(rng, 2) ? Formula::top() : Formula::bottom();
    return Formula::var(choose(rng, leaves));
  }
  switch (pick(rng, 6)) {
    case 0: return Formula::negate(gen_qbf(rng, leaves, pool, depth - 1));
    case 1:
    case 2: return Formula::conj(gen_qbf(rng, leaves, pool, depth - 1), gen_qbf(rng, leaves, pool, depth - 1));
    case 3: return Formula::disj(gen_qbf(rng, leaves, pool, depth - 1), gen_qbf(rng, leaves, pool, depth - 1));
    case 4: return Formula::impl(gen_qbf(rng, leaves, pool, depth - 1), gen_qbf(rng, leaves, pool, depth - 1));
    default: return Formula::iff(gen_qbf(rng, leaves, pool, depth - 1), gen_qbf(rng, leaves, pool, depth - 1));
  }
}

}  // namespace

Formula random_qbf(Rng& rng, const std::vector<std::string>& vars, int depth, bool closed) {
  if (!closed) return gen_qbf(rng, vars, vars, depth);
  // Outer blocks bind a random subset; the rest may only occur under inner binders.
  std::vector<std::string> outer, pool;
  for (const auto& v : vars) (coin(rng, 2) ? outer : pool).push_back(v);
  Formula body = gen_qbf(rng, outer, pool, depth);
  std::vector<std::string> free = free_variables(body);
  std::vector<std::vector<std::string>> blocks;
  for (const auto& v : free) {
    if (blocks.empty() || coin(rng, 2)) blocks.emplace_back();
    blocks.back().push_back(v);
  }
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
    body = coin(rng, 2) ? Formula::exists(*it, body) : Formula::forall(*it, body);
  return body;
}

DefaultTheory random_default_theory(Rng& rng, std::size_t max_vars, std::size_t max_defaults) {
  std::vector<std::string> vars = atoms(1 + pick(rng, max_vars));
  DefaultTheory dt;
  for (std::size_t i = pick(rng, 3); i > 0; --i) dt.background.formulas.push_back(random_formula(rng, vars, 2));
  for (std::size_t i = pick(rng, max_defaults + 1); i > 0; --i) {
    Default d;
    if (!coin(rng, 3)) d.prerequisite = coin(rng, 2) ? literal(rng, vars) : random_formula(rng, vars, 1);
    d.consequent = coin(rng, 3) ? random_formula(rng, vars, 1) : literal(rng, vars);
    d.justification = coin(rng, 2) ? d.consequent : literal(rng, vars);
    dt.defaults.push_back(d);
  }
  return dt;
}

LogicProgram random_program(Rng& rng, std::size_t max_atoms, std::size_t max_rules, std::size_t max_head) {
  std::vector<std::string> as = atoms(1 + pick(rng, max_atoms), "a");
  LogicProgram lp;
  for (std::size_t i = pick(rng, max_rules + 1); i > 0; --i) {
    Rule r;
    r.head = coin(rng, 10) ? std::vector<std::string>{} : distinct_subset(rng, as, max_head);
    if (r.head.empty() && !coin(rng, 10)) r.head.push_back(choose(rng, as));
    r.pos = distinct_subset(rng, as, 2);
    r.neg = distinct_subset(rng, as, 2);
    lp.rules.push_back(r);
  }
  return lp;
}

AbductionProblem random_abduction(Rng& rng, std::size_t max_hypotheses) {
  AbductionProblem ap;
  ap.hypotheses = atoms(1 + pick(rng, max_hypotheses), "h");
  std::vector<std::string> others = atoms(1 + pick(rng, 2), "q");
  ap.observation = coin(rng, 4) ? others.front() : "obs";
  std::vector<std::string> vars = ap.hypotheses;
  vars.insert(vars.end(), others.begin(), others.end());
  vars.push_back(ap.observation);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (std::size_t i = 1 + pick(rng, 4); i > 0; --i) {
    if (coin(rng, 2)) {
      // rule-like: some hypotheses and atoms imply a literal or the observation
      std::vector<Formula> body;
      for (std::size_t j = 1 + pick(rng, 2); j > 0; --j) body.push_back(literal(rng, vars));
      Formula head = coin(rng, 2) ? Formula::var(ap.observation) : literal(rng, vars);
      ap.theory.formulas.push_back(Formula::impl(conj_all(body), head));
    } else {
      ap.theory.formulas.push_back(random_formula(rng, vars, 2));
    }
  }
  return ap;
}

namespace {

Formula modal_formula(Rng& rng, const std::vector<std::string>& vars, int depth, int modal_depth) {
  if (depth <= 0 || coin(rng, 3)) {
    if (modal_depth > 0 && coin(rng, 2)) return Formula::modal(modal_formula(rng, vars, 1, modal_depth - 1));
    return Formula::var(choose(rng, vars));
  }
  switch (pick(rng, 5)) {
    case 0: return Formula::negate(modal_formula(rng, vars, depth - 1, modal_depth));
    case 1: return Formula::conj(modal_formula(rng, vars, depth - 1, modal_depth), modal_formula(rng, vars, depth - 1, modal_depth));
    case 2: return Formula::disj(modal_formula(rng, vars, depth - 1, modal_depth), modal_formula(rng, vars, depth - 1, modal_depth));
    default: return Formula::impl(modal_formula(rng, vars, depth - 1, modal_depth), modal_formula(rng, vars, depth - 1, modal_depth));
  }
}

}  // namespace

AelTheory random_ael(Rng& rng, std::size_t max_candidates) {
  std::vector<std::string> vars = atoms(1 + pick(rng, 3));
  for (;;) {
    AelTheory a;
    for (std::size_t i = 1 + pick(rng, 3); i > 0; --i) a.theory.formulas.push_back(modal_formula(rng, vars, 2, 2));
    if (a.atomized().atoms.size() <= max_candidates) return a;
  }
}

CircPolicy random_circ(Rng& rng, std::size_t max_vars) {
  std::vector<std::string> vars = atoms(1 + pick(rng, max_vars));
  CircPolicy c;
  for (std::size_t i = 1 + pick(rng, 3); i > 0; --i) c.theory.formulas.push_back(random_formula(rng, vars, 2));
  for (const auto& v : vars) {
    switch (pick(rng, 3)) {
      case 0: c.minimized.push_back(v); break;
      case 1: c.fixed.push_back(v); break;
      default: c.varying.push_back(v);
    }
  }
  return c;
}

bool expand_eval(const Formula& q, const Assignment& a) {
  switch (q.op()) {
    case Op::Var: {
      auto it = a.find(q.name());
      if (it == a.end()) throw std::runtime_error("unassigned variable " + q.name());
      return it->second;
    }
    case Op::True: return true;
    case Op::False: return false;
    case Op::Not: return !expand_eval(q.lhs(), a);
    case Op::And: return expand_eval(q.lhs(), a) && expand_eval(q.rhs(), a);
    case Op::Or: return expand_eval(q.lhs(), a) || expand_eval(q.rhs(), a);
    case Op::Impl: return !expand_eval(q.lhs(), a) || expand_eval(q.rhs(), a);
    case Op::Iff: return expand_eval(q.lhs(), a) == expand_eval(q.rhs(), a);
    case Op::Exists:
    case Op::Forall: {
      const bool ex = q.op() == Op::Exists;
      const auto& vs = q.bound();
      Assignment b = a;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << vs.size()); ++m) {
        for (std::size_t i = 0; i < vs.size(); ++i) b[vs[i]] = (m >> i) & 1;
        bool r = expand_eval(q.lhs(), b);
        if (ex && r) return true;
        if (!ex && !r) return false;
      }
      return !ex;
    }
    case Op::Modal: throw std::runtime_error("modal atom in a QBF");
  }
  return false;
}

namespace {

struct Qdimacs {
  int vars = 0;
  std::vector<std::pair<bool, int>> prefix;  // (existential, var) in order
  std::vector<std::vector<int>> clauses;
  std::vector<bool> existential;
};

Qdimacs parse_qdimacs(const std::string& text) {
  Qdimacs q;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::size_t declared_clauses = 0, read_clauses = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c") continue;
    if (first == "p") {
      std::string cnf;
      ls >> cnf >> q.vars >> declared_clauses;
      if (cnf != "cnf") throw std::runtime_error("bad header");
      q.existential.assign(static_cast<std::size_t>(q.vars) + 1, true);
      header = true;
      continue;
    }
    if (!header) throw std::runtime_error("missing header");
    if (first == "e" || first == "a") {
      int v;
      bool closed = false;
      while (ls >> v) {
        if (v == 0) {
          closed = true;
          break;
        }
        if (v < 1 || v > q.vars) throw std::runtime_error("prefix variable out of range");
        q.prefix.emplace_back(first == "e", v);
        q.existential[static_cast<std::size_t>(v)] = first == "e";
      }
      if (!closed) throw std::runtime_error("prefix line not terminated by 0");
      continue;
    }
    std::vector<int> clause;
    int lit = std::stoi(first);
    bool closed = false;
    for (;;) {
      if (lit == 0) {
        closed = true;
        break;
      }
      if (std::abs(lit) > q.vars) throw std::runtime_error("literal out of range");
      clause.push_back(lit);
      if (!(ls >> lit)) break;
    }
    if (!closed) throw std::runtime_error("clause not terminated by 0");
    ++read_clauses;
    bool tautology = std::any_of(clause.begin(), clause.end(), [&](int l) {
      return std::find(clause.begin(), clause.end(), -l) != clause.end();
    });
    if (!tautology) q.clauses.push_back(clause);
  }
  if (!header) throw std::runtime_error("missing header");
  if (read_clauses != declared_clauses) throw std::runtime_error("clause count does not match header");
  return q;
}

// value: 0 unassigned, 1 true, -1 false
class QdimacsSolver {
 public:
  explicit QdimacsSolver(const Qdimacs& q) : q_(q), value_(static_cast<std::size_t>(q.vars) + 1, 0) {
    // Free variables (not in the prefix) count as outermost existentials.
    std::vector<bool> in_prefix(value_.size(), false);
    for (auto [e, v] : q.prefix) in_prefix[static_cast<std::size_t>(v)] = true;
    for (int v = 1; v <= q.vars; ++v)
      if (!in_prefix[static_cast<std::size_t>(v)]) order_.emplace_back(true, v);
    order_.insert(order_.end(), q.prefix.begin(), q.prefix.end());
    depth_.assign(value_.size(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) depth_[static_cast<std::size_t>(order_[i].second)] = i;
  }

  bool solve() { return search(0); }

 private:
  int lit_value(int lit) const {
    int v = value_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : -v;
  }

  // 1: all clauses true, -1: some clause false, 0: open. Assigns forced
  // existential literals, recording them in `trail`. Universal reduction:
  // open universal literals quantified inside every open existential of a
  // clause cannot help it, so they are treated as false.
  int propagate(std::vector<int>& trail) {
    for (bool changed = true; changed;) {
      changed = false;
      bool all_true = true;
      for (const auto& c : q_.clauses) {
        int open_exist = 0, last = 0;
        std::size_t deepest_univ = 0;
        bool any_univ = false, sat = false;
        for (int lit : c) {
          int val = lit_value(lit);
          if (val > 0) {
            sat = true;
            break;
          }
          if (val != 0) continue;
          auto v = static_cast<std::size_t>(std::abs(lit));
          if (q_.existential[v]) {
            ++open_exist;
            last = lit;
          } else {
            any_univ = true;
            deepest_univ = std::max(deepest_univ, depth_[v]);
          }
        }
        if (sat) continue;
        all_true = false;
        if (open_exist == 0) return -1;
        auto e = static_cast<std::size_t>(std::abs(last));
        if (open_exist == 1 && (!any_univ || deepest_univ > depth_[e])) {
          value_[e] = last > 0 ? 1 : -1;
          trail.push_back(static_cast<int>(e));
          changed = true;
        }
      }
      if (all_true) return 1;
    }
    return 0;
  }

  bool search(std::size_t pos) {
    std::vector<int> trail;
    int status = propagate(trail);
    bool result;
    if (status != 0) {
      result = status > 0;
    } else {
      while (pos < order_.size() && value_[static_cast<std::size_t>(order_[pos].second)] != 0) ++pos;
      if (pos == order_.size()) throw std::runtime_error("open clauses with every variable assigned");
      auto [ex, v] = order_[pos];
      auto& slot = value_[static_cast<std::size_t>(v)];
      slot = 1;
      bool a = search(pos + 1);
      if (ex && a) {
        result = true;
      } else if (!ex && !a) {
        result = false;
      } else {
        slot = -1;
        result = search(pos + 1);
      }
      slot = 0;
    }
    for (int v : trail) value_[static_cast<std::size_t>(v)] = 0;
    return result;
  }

  const Qdimacs& q_;
  std::vector<int> value_;
  std::vector<std::pair<bool, int>> order_;
  std::vector<std::size_t> depth_;  // position in order_
};

}  // namespace

bool qdimacs_eval(const std::string& text) {
  Qdimacs q = parse_qdimacs(text);
  return QdimacsSolver(q).solve();
}

std::vector<Assignment> all_assignments(const std::vector<std::string>& vars) {
  std::vector<Assignment> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << vars.size()); ++m) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = (m >> i) & 1;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace quip::testing
