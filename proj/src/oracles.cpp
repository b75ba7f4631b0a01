#include "quip/oracles.hpp"

#include <algorithm>
#include <cstdint>

#include "quip/errors.hpp"

namespace quip {

namespace {

void check_bound(std::size_t n, const OracleLimits& limits, const char* what) {
  if (n > limits.max_enumeration)
    throw BoundError(std::string("oracle enumeration over ") + std::to_string(n) + " " + what + " exceeds the bound of " +
                     std::to_string(limits.max_enumeration));
}

bool bits_less(const std::vector<bool>& a, const std::vector<bool>& b) { return a < b; }

}  // namespace

std::vector<ExtensionFingerprint> oracle_extensions(const DefaultTheory& dt, const OracleLimits& limits) {
  const auto& defaults = dt.defaults;
  const std::size_t m = defaults.size();
  check_bound(m, limits, "defaults");

  std::vector<ExtensionFingerprint> found;
  std::vector<Formula> closures;  // Th(T u consequents) of each fingerprint, as one formula
  for (std::uint64_t guess = 0; guess < (std::uint64_t{1} << m); ++guess) {
    // Least set closed under Th and the monotonic rules alpha/gamma of the guess.
    std::vector<bool> applied(m, false);
    Theory closure = dt.background;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (!((guess >> i) & 1) || applied[i]) continue;
        if (tt::entails(closure, defaults[i].prerequisite, limits.exec)) {
          applied[i] = true;
          closure.formulas.push_back(defaults[i].consequent);
          changed = true;
        }
      }
    }
    // The guess must be exactly the defaults whose justification is consistent.
    bool fixpoint = true;
    for (std::size_t i = 0; i < m && fixpoint; ++i) {
      bool consistent = !tt::entails(closure, Formula::negate(defaults[i].justification), limits.exec);
      fixpoint = consistent == static_cast<bool>((guess >> i) & 1);
    }
    if (!fixpoint) continue;

    ExtensionFingerprint fp;
    for (std::size_t i = 0; i < m; ++i)
      if (applied[i]) {
        fp.generating.push_back(i);
        fp.consequents.push_back(defaults[i].consequent);
      }
    Formula presented = closure.conjunction();
    bool duplicate = std::any_of(closures.begin(), closures.end(),
                                 [&](const Formula& f) { return tt::equivalent(f, presented, limits.exec); });
    if (duplicate) continue;
    closures.push_back(presented);
    found.push_back(std::move(fp));
  }
  std::sort(found.begin(), found.end(), [&](const ExtensionFingerprint& a, const ExtensionFingerprint& b) {
    return bits_less(selector_bits(a.generating, m), selector_bits(b.generating, m));
  });
  return found;
}

bool extension_contains(const DefaultTheory& dt, const ExtensionFingerprint& fp, const Formula& phi, tt::Exec exec) {
  Theory e = dt.background;
  for (const auto& c : fp.consequents) e.formulas.push_back(c);
  return tt::entails(e, phi, exec);
}

namespace {

Formula belief_literals(const AtomizedTheory& at, const std::vector<bool>& believed) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < at.atoms.size(); ++i) {
    Formula x = Formula::var(at.atoms[i].var);
    lits.push_back(believed[i] ? x : Formula::negate(x));
  }
  return conj_all(lits);
}

}  // namespace

std::vector<std::vector<std::size_t>> oracle_stable_expansions(const AelTheory& ael, bool consistent_only,
                                                               const OracleLimits& limits) {
  AtomizedTheory at = ael.atomized();
  const std::size_t k = at.atoms.size();
  check_bound(k, limits, "believed-formula candidates");

  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t guess = 0; guess < (std::uint64_t{1} << k); ++guess) {
    std::vector<bool> believed(k);
    for (std::size_t i = 0; i < k; ++i) believed[i] = (guess >> i) & 1;
    Theory base = at.theory;
    base.formulas.push_back(belief_literals(at, believed));
    if (consistent_only && !tt::satisfiable(base.conjunction(), limits.exec)) continue;
    bool stable = true;
    for (std::size_t i = 0; i < k && stable; ++i)
      stable = tt::entails(base, at.atoms[i].inner_atomized, limits.exec) == believed[i];
    if (!stable) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < k; ++i)
      if (believed[i]) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return bits_less(selector_bits(a, k), selector_bits(b, k));
  });
  return out;
}

bool expansion_contains(const AelTheory& ael, const std::vector<std::size_t>& believed, const Formula& phi,
                        tt::Exec exec) {
  AtomizedTheory at = ael.atomized();
  Formula query;
  if (!atomize_with(phi, at.atoms, query))
    throw ReferenceError("query mentions a modal atom that does not occur in the theory");
  Theory base = at.theory;
  base.formulas.push_back(belief_literals(at, selector_bits(believed, at.atoms.size())));
  return tt::entails(base, query, exec);
}

std::vector<Assignment> oracle_stable_models(const LogicProgram& lp, const OracleLimits& limits,
                                             const std::vector<std::string>& extra_atoms) {
  std::vector<std::string> atoms = lp.atoms();
  for (const auto& a : extra_atoms)
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  const std::size_t n = atoms.size();
  check_bound(n, limits, "atoms");

  auto index = [&](const std::string& a) {
    return static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), a) - atoms.begin());
  };
  struct MaskRule {
    std::uint64_t head = 0, pos = 0, neg = 0;
  };
  std::vector<MaskRule> rules;
  for (const auto& r : lp.rules) {
    MaskRule mr;
    for (const auto& a : r.head) mr.head |= std::uint64_t{1} << index(a);
    for (const auto& a : r.pos) mr.pos |= std::uint64_t{1} << index(a);
    for (const auto& a : r.neg) mr.neg |= std::uint64_t{1} << index(a);
    rules.push_back(mr);
  }
  // J is a model of the reduct of the program with respect to I.
  auto models_reduct = [&](std::uint64_t j, std::uint64_t i) {
    for (const auto& r : rules) {
      if (r.neg & i) continue;
      if ((r.pos & j) == r.pos && !(r.head & j)) return false;
    }
    return true;
  };

  std::vector<Assignment> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    if (!models_reduct(i, i)) continue;
    bool minimal = true;
    // Proper subsets of i, largest first.
    for (std::uint64_t j = (i - 1) & i; minimal; j = (j - 1) & i) {
      if (j == i) break;
      if (models_reduct(j, i)) minimal = false;
      if (j == 0) break;
    }
    if (!minimal) continue;
    Assignment a;
    for (std::size_t k = 0; k < n; ++k) a[atoms[k]] = (i >> k) & 1;
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::vector<std::string>> oracle_explanations(const AbductionProblem& ap, bool minimal,
                                                          const OracleLimits& limits) {
  const auto& hyps = ap.hypotheses;
  const std::size_t n = hyps.size();
  check_bound(n, limits, "hypotheses");
  Formula goal = Formula::var(ap.observation);

  std::vector<std::uint64_t> explanations;
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << n); ++e) {
    Theory te = ap.theory;
    for (std::size_t i = 0; i < n; ++i)
      if ((e >> i) & 1) te.formulas.push_back(Formula::var(hyps[i]));
    if (!tt::satisfiable(te.conjunction(), limits.exec)) continue;
    if (!tt::entails(te, goal, limits.exec)) continue;
    explanations.push_back(e);
  }
  if (minimal) {
    std::vector<std::uint64_t> kept;
    for (auto e : explanations) {
      bool has_smaller = std::any_of(explanations.begin(), explanations.end(),
                                     [&](std::uint64_t f) { return f != e && (f & e) == f; });
      if (!has_smaller) kept.push_back(e);
    }
    explanations = std::move(kept);
  }
  std::vector<std::vector<std::string>> out;
  for (auto e : explanations) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
      if ((e >> i) & 1) names.push_back(hyps[i]);
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end(),
            [&](const auto& a, const auto& b) { return bits_less(selector_bits(a, hyps), selector_bits(b, hyps)); });
  return out;
}

bool oracle_relevance(const AbductionProblem& ap, const std::string& h, bool minimal, const OracleLimits& limits) {
  auto all = oracle_explanations(ap, minimal, limits);
  return std::any_of(all.begin(), all.end(),
                     [&](const auto& e) { return std::find(e.begin(), e.end(), h) != e.end(); });
}

bool oracle_necessity(const AbductionProblem& ap, const std::string& h, bool minimal, const OracleLimits& limits) {
  auto all = oracle_explanations(ap, minimal, limits);
  return std::all_of(all.begin(), all.end(),
                     [&](const auto& e) { return std::find(e.begin(), e.end(), h) != e.end(); });
}

std::vector<Assignment> oracle_circ_models(const CircPolicy& c, const OracleLimits& limits) {
  c.validate();
  std::vector<std::string> vocab = c.vocabulary();
  check_bound(vocab.size(), limits, "atoms");
  std::vector<Assignment> all = tt::models(c.theory.conjunction(), vocab);

  auto agrees_on = [](const Assignment& a, const Assignment& b, const std::vector<std::string>& atoms) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const std::string& x) { return a.at(x) == b.at(x); });
  };
  // b|P is a proper subset of a|P
  auto strictly_below = [&](const Assignment& b, const Assignment& a) {
    bool proper = false;
    for (const auto& p : c.minimized) {
      if (b.at(p) && !a.at(p)) return false;
      if (a.at(p) && !b.at(p)) proper = true;
    }
    return proper;
  };
  std::vector<Assignment> out;
  for (const auto& m : all) {
    bool minimal = std::none_of(all.begin(), all.end(), [&](const Assignment& other) {
      return agrees_on(other, m, c.fixed) && strictly_below(other, m);
    });
    if (minimal) out.push_back(m);
  }
  return out;
}

bool oracle_circ_entails(const CircPolicy& c, const Formula& phi, const OracleLimits& limits) {
  auto models = oracle_circ_models(c, limits);
  return std::all_of(models.begin(), models.end(), [&](const Assignment& m) { return eval(phi, m); });
}

}  // namespace quip
