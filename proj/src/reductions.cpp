#include "quip/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "quip/errors.hpp"

namespace quip {

void VarMap::add(std::string var, VarInfo info) { entries.emplace_back(std::move(var), std::move(info)); }

const VarInfo* VarMap::find(const std::string& var) const {
  for (const auto& [name, info] : entries)
    if (name == var) return &info;
  return nullptr;
}

std::vector<std::string> VarMap::selectors() const {
  std::vector<std::string> out;
  for (const auto& [name, info] : entries)
    if (info.kind != Concept::Justification && info.kind != Concept::Auxiliary) out.push_back(name);
  return out;
}

Task Task::existence(bool detail) {
  Task t;
  t.detail = detail;
  return t;
}

Task Task::brave(Formula phi, bool detail) {
  Task t;
  t.kind = TaskKind::Brave;
  t.query = std::move(phi);
  t.detail = detail;
  return t;
}

Task Task::skeptical(Formula phi, bool detail) {
  Task t;
  t.kind = TaskKind::Skeptical;
  t.query = std::move(phi);
  t.detail = detail;
  return t;
}

namespace {

using Names = std::vector<std::string>;

Formula v(const std::string& name) { return Formula::var(name); }

void add_unique(Names& out, const Names& more) {
  for (const auto& n : more)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
}

// X <= Y
Formula leq(const Names& x, const Names& y) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < x.size(); ++i) parts.push_back(Formula::impl(v(x[i]), v(y[i])));
  return conj_all(parts);
}

// X < Y
Formula less(const Names& x, const Names& y) {
  std::vector<Formula> differ;
  for (std::size_t i = 0; i < x.size(); ++i) differ.push_back(Formula::conj(v(y[i]), Formula::negate(v(x[i]))));
  return Formula::conj(leq(x, y), disj_all(differ));
}

const Formula& require_query(const Task& task) {
  if (!task.query) throw Error("task needs a query formula");
  return *task.query;
}

// Wraps the witness condition of an existential task, or the counter-witness
// condition of a universal one, according to the detail flag.
Reduction finish(Formula witness, bool universal, Formula universal_body, const Names& selectors, VarMap map,
                 Names order, bool detail) {
  Reduction r;
  r.detail = detail;
  r.counter = universal;
  r.varmap = std::move(map);
  r.order_hint = std::move(order);
  if (detail)
    r.qbf = std::move(witness);
  else if (universal)
    r.qbf = Formula::forall(selectors, std::move(universal_body));
  else
    r.qbf = Formula::exists(selectors, std::move(witness));
  return r;
}

// Shared machinery of both default logic encodings. V is the vocabulary
// (plus query variables); it is rebound inside every subtest.
struct DlContext {
  const DefaultTheory& dt;
  Names vocab;

  // T & AND(sel_i -> gamma_i)
  Formula extension(const Names& sel) const {
    std::vector<Formula> parts = dt.background.formulas;
    for (std::size_t i = 0; i < sel.size(); ++i) parts.push_back(Formula::impl(v(sel[i]), dt.defaults[i].consequent));
    return conj_all(parts);
  }
  Formula ent(const Names& sel, const Formula& phi) const {
    return Formula::forall(vocab, Formula::impl(extension(sel), phi));
  }
  Formula cons(const Names& sel, const Formula& psi) const {
    return Formula::exists(vocab, Formula::conj(extension(sel), psi));
  }
};

DlContext dl_context(const DefaultTheory& dt, const Task& task) {
  DlContext ctx{dt, dt.vocabulary()};
  if (task.query) add_unique(ctx.vocab, variables(*task.query));
  return ctx;
}

Reduction finish_dl(const DlContext& ctx, Formula ext, const Names& sel, const Names& free_vars, VarMap map,
                    Names order, const Task& task) {
  switch (task.kind) {
    case TaskKind::Existence:
      return finish(ext, false, {}, free_vars, std::move(map), std::move(order), task.detail);
    case TaskKind::Brave: {
      Formula w = Formula::conj(ext, ctx.ent(sel, require_query(task)));
      return finish(w, false, {}, free_vars, std::move(map), std::move(order), task.detail);
    }
    case TaskKind::Skeptical: {
      Formula e = ctx.ent(sel, require_query(task));
      return finish(Formula::conj(ext, Formula::negate(e)), true, Formula::impl(ext, e), free_vars, std::move(map),
                    std::move(order), task.detail);
    }
    default:
      throw Error("task kind does not apply to default logic");
  }
}

}  // namespace

Reduction reduce_dl_mt(const DefaultTheory& dt, const Task& task) {
  DlContext ctx = dl_context(dt, task);
  const auto& d = dt.defaults;
  NameSupply names(ctx.vocab);
  Names g, s;
  for (std::size_t i = 0; i < d.size(); ++i) g.push_back(names.fresh("g" + std::to_string(i + 1)));
  for (std::size_t i = 0; i < d.size(); ++i) s.push_back(names.fresh("s" + std::to_string(i + 1)));

  std::vector<Formula> fix;
  for (std::size_t i = 0; i < d.size(); ++i)
    fix.push_back(Formula::iff(v(g[i]), Formula::conj(ctx.cons(g, d[i].justification), ctx.ent(g, d[i].prerequisite))));

  // No proper subset s of g is closed under the defaults of g.
  std::vector<Formula> escapes;
  for (std::size_t i = 0; i < d.size(); ++i)
    escapes.push_back(conj_all({v(g[i]), Formula::negate(v(s[i])), ctx.ent(s, d[i].prerequisite)}));
  Formula grounded = Formula::forall(s, Formula::impl(less(s, g), disj_all(escapes)));

  Formula ext = Formula::conj(conj_all(fix), grounded);

  VarMap map;
  map.formalism = Formalism::DefaultLogic;
  map.background = dt.background;
  Names order;
  for (std::size_t i = 0; i < d.size(); ++i) {
    map.add(g[i], {Concept::DefaultIndex, i, {}, d[i].consequent});
    order.push_back(g[i]);
    order.push_back(s[i]);
    add_unique(order, variables(d[i].consequent));
    add_unique(order, variables(d[i].justification));
    add_unique(order, variables(d[i].prerequisite));
  }
  return finish_dl(ctx, ext, g, g, std::move(map), std::move(order), task);
}

Reduction reduce_dl_fullset(const DefaultTheory& dt, const Task& task) {
  DlContext ctx = dl_context(dt, task);
  const auto& d = dt.defaults;
  NameSupply names(ctx.vocab);
  Names f, a, s;
  for (std::size_t i = 0; i < d.size(); ++i) f.push_back(names.fresh("f" + std::to_string(i + 1)));
  for (std::size_t i = 0; i < d.size(); ++i) a.push_back(names.fresh("a" + std::to_string(i + 1)));
  for (std::size_t i = 0; i < d.size(); ++i) s.push_back(names.fresh("s" + std::to_string(i + 1)));

  // Closed(X): every default of f whose prerequisite follows from X is in X.
  auto closed = [&](const Names& x) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < d.size(); ++i)
      parts.push_back(Formula::impl(Formula::conj(v(f[i]), ctx.ent(x, d[i].prerequisite)), v(x[i])));
    return conj_all(parts);
  };
  // a is the least closed set
  Formula applied = Formula::conj(closed(a), Formula::forall(s, Formula::impl(closed(s), leq(a, s))));
  std::vector<Formula> full;
  for (std::size_t i = 0; i < d.size(); ++i) full.push_back(Formula::iff(v(f[i]), ctx.cons(a, d[i].justification)));
  Formula ext = Formula::conj(applied, conj_all(full));

  VarMap map;
  map.formalism = Formalism::DefaultLogic;
  map.background = dt.background;
  Names order, free_vars;
  for (std::size_t i = 0; i < d.size(); ++i) {
    map.add(a[i], {Concept::DefaultIndex, i, {}, d[i].consequent});
    map.add(f[i], {Concept::Justification, i, {}, d[i].justification});
    order.insert(order.end(), {f[i], a[i], s[i]});
    add_unique(order, variables(d[i].consequent));
    add_unique(order, variables(d[i].justification));
    add_unique(order, variables(d[i].prerequisite));
  }
  free_vars = f;
  free_vars.insert(free_vars.end(), a.begin(), a.end());
  return finish_dl(ctx, ext, a, free_vars, std::move(map), std::move(order), task);
}

Reduction reduce_dlp(const LogicProgram& lp, const Task& task) {
  Names atoms = lp.atoms();
  if (task.query) add_unique(atoms, variables(*task.query));
  NameSupply names(atoms);
  Names y;
  for (const auto& a : atoms) y.push_back(names.fresh(a + "_"));
  auto copy_of = [&](const std::string& a) {
    return y[static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), a) - atoms.begin())];
  };

  // The reduct w.r.t. the unprimed atoms holds on the atoms, or on the copy y.
  auto reduct_model = [&](bool primed) {
    std::vector<Formula> rules;
    for (const auto& r : lp.rules) {
      std::vector<Formula> body, head;
      for (const auto& n : r.neg) body.push_back(Formula::negate(v(n)));
      for (const auto& p : r.pos) body.push_back(v(primed ? copy_of(p) : p));
      for (const auto& h : r.head) head.push_back(v(primed ? copy_of(h) : h));
      rules.push_back(Formula::impl(conj_all(body), disj_all(head)));
    }
    return conj_all(rules);
  };
  Formula stable =
      Formula::conj(reduct_model(false), Formula::forall(y, Formula::impl(less(y, atoms), Formula::negate(reduct_model(true)))));

  VarMap map;
  map.formalism = Formalism::LogicProgram;
  Names order;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    map.add(atoms[i], {Concept::Atom, i, atoms[i], {}});
    order.push_back(atoms[i]);
    order.push_back(y[i]);
  }
  switch (task.kind) {
    case TaskKind::Existence:
      return finish(stable, false, {}, atoms, std::move(map), std::move(order), task.detail);
    case TaskKind::Brave:
      return finish(Formula::conj(stable, require_query(task)), false, {}, atoms, std::move(map), std::move(order),
                    task.detail);
    case TaskKind::Skeptical: {
      const Formula& phi = require_query(task);
      return finish(Formula::conj(stable, Formula::negate(phi)), true, Formula::impl(stable, phi), atoms, std::move(map),
                    std::move(order), task.detail);
    }
    default:
      throw Error("task kind does not apply to logic programs");
  }
}

Reduction reduce_abd(const AbductionProblem& ap, const Task& task) {
  Names vocab = ap.vocabulary();
  NameSupply names(vocab);
  const Names& hyps = ap.hypotheses;
  Names e, e2;
  for (const auto& h : hyps) e.push_back(names.fresh("e_" + h));
  for (const auto& h : hyps) e2.push_back(names.fresh("e_" + h + "_"));

  auto explains = [&](const Names& sel) {
    std::vector<Formula> parts = ap.theory.formulas;
    for (std::size_t i = 0; i < hyps.size(); ++i) parts.push_back(Formula::impl(v(sel[i]), v(hyps[i])));
    Formula theory = conj_all(parts);
    return Formula::conj(Formula::exists(vocab, theory),
                         Formula::forall(vocab, Formula::impl(theory, v(ap.observation))));
  };
  Formula x = explains(e);
  if (task.minimal) x = Formula::conj(x, Formula::forall(e2, Formula::impl(less(e2, e), Formula::negate(explains(e2)))));

  VarMap map;
  map.formalism = Formalism::Abduction;
  Names order;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    map.add(e[i], {Concept::Hypothesis, i, hyps[i], {}});
    order.push_back(e[i]);
    order.push_back(e2[i]);
  }
  auto selector_of = [&](const std::string& h) {
    auto it = std::find(hyps.begin(), hyps.end(), h);
    if (it == hyps.end()) throw ReferenceError("'" + h + "' is not a hypothesis");
    return v(e[static_cast<std::size_t>(it - hyps.begin())]);
  };
  switch (task.kind) {
    case TaskKind::AbdExists:
    case TaskKind::Existence:
      return finish(x, false, {}, e, std::move(map), std::move(order), task.detail);
    case TaskKind::AbdRelevance:
      return finish(Formula::conj(x, selector_of(task.hypothesis)), false, {}, e, std::move(map), std::move(order),
                    task.detail);
    case TaskKind::AbdNecessity: {
      Formula eh = selector_of(task.hypothesis);
      return finish(Formula::conj(x, Formula::negate(eh)), true, Formula::impl(x, eh), e, std::move(map),
                    std::move(order), task.detail);
    }
    default:
      throw Error("task kind does not apply to abduction");
  }
}

Reduction reduce_ael(const AelTheory& ael, const Task& task) {
  std::set<std::string> reserved;
  if (task.query)
    for (const auto& n : variables(*task.query)) reserved.insert(n);
  AtomizedTheory at = atomize_modal(ael.theory, reserved);
  Formula query;
  if (task.query && !atomize_with(*task.query, at.atoms, query))
    throw ReferenceError("query mentions a modal atom that does not occur in the theory");

  Names x;
  for (const auto& m : at.atoms) x.push_back(m.var);
  Names objective;
  auto collect = [&](const Formula& f) {
    for (const auto& n : variables(f))
      if (std::find(x.begin(), x.end(), n) == x.end() && std::find(objective.begin(), objective.end(), n) == objective.end())
        objective.push_back(n);
  };
  Formula t = at.theory.conjunction();
  collect(t);
  for (const auto& m : at.atoms) collect(m.inner_atomized);
  if (task.query) collect(query);

  auto believes = [&](const Formula& psi) { return Formula::forall(objective, Formula::impl(t, psi)); };
  std::vector<Formula> parts;
  for (const auto& m : at.atoms) parts.push_back(Formula::iff(v(m.var), believes(m.inner_atomized)));
  if (task.consistent_only) parts.push_back(Formula::exists(objective, t));
  Formula expansion = conj_all(parts);

  VarMap map;
  map.formalism = Formalism::Autoepistemic;
  for (std::size_t i = 0; i < at.atoms.size(); ++i) map.add(x[i], {Concept::ModalCandidate, i, {}, at.atoms[i].inner});
  Names order = x;
  switch (task.kind) {
    case TaskKind::Existence:
      return finish(expansion, false, {}, x, std::move(map), std::move(order), task.detail);
    case TaskKind::Brave:
      return finish(Formula::conj(expansion, believes(query)), false, {}, x, std::move(map), std::move(order),
                    task.detail);
    case TaskKind::Skeptical: {
      Formula b = believes(query);
      return finish(Formula::conj(expansion, Formula::negate(b)), true, Formula::impl(expansion, b), x, std::move(map),
                    std::move(order), task.detail);
    }
    default:
      throw Error("task kind does not apply to autoepistemic logic");
  }
}

namespace {

struct CircCopy {
  Names p, p2, z, z2;
};

CircCopy circ_copy(const CircPolicy& c) {
  NameSupply names(c.vocabulary());
  CircCopy cc{c.minimized, {}, c.varying, {}};
  for (const auto& a : c.minimized) cc.p2.push_back(names.fresh(a + "_"));
  for (const auto& a : c.varying) cc.z2.push_back(names.fresh(a + "_"));
  return cc;
}

}  // namespace

Qbf build_circ(const CircPolicy& c) {
  c.validate();
  CircCopy cc = circ_copy(c);
  std::map<std::string, Formula> sigma;
  for (std::size_t i = 0; i < cc.p.size(); ++i) sigma[cc.p[i]] = v(cc.p2[i]);
  for (std::size_t i = 0; i < cc.z.size(); ++i) sigma[cc.z[i]] = v(cc.z2[i]);
  Formula t = c.theory.conjunction();
  Names primed = cc.p2;
  primed.insert(primed.end(), cc.z2.begin(), cc.z2.end());
  Formula smaller = Formula::conj(substitute(t, sigma), leq(cc.p2, cc.p));
  return Formula::conj(t, Formula::forall(primed, Formula::impl(smaller, leq(cc.p, cc.p2))));
}

Qbf circ_entails_qbf(const CircPolicy& c, const Formula& phi) {
  Names vocab = c.vocabulary();
  for (const auto& n : variables(phi))
    if (std::find(vocab.begin(), vocab.end(), n) == vocab.end())
      throw ReferenceError("query atom '" + n + "' is not in P, Q or Z");
  return Formula::forall(vocab, Formula::impl(build_circ(c), phi));
}

Reduction reduce_circ(const CircPolicy& c, const Task& task) {
  Qbf circ = build_circ(c);
  CircCopy cc = circ_copy(c);
  Names vocab = c.vocabulary();

  VarMap map;
  map.formalism = Formalism::Circumscription;
  for (std::size_t i = 0; i < vocab.size(); ++i) map.add(vocab[i], {Concept::Atom, i, vocab[i], {}});
  Names order;
  for (std::size_t i = 0; i < cc.p.size(); ++i) order.insert(order.end(), {cc.p[i], cc.p2[i]});
  for (std::size_t i = 0; i < cc.z.size(); ++i) order.insert(order.end(), {cc.z[i], cc.z2[i]});

  switch (task.kind) {
    case TaskKind::Existence:
      return finish(circ, false, {}, vocab, std::move(map), std::move(order), task.detail);
    case TaskKind::CircEntails:
    case TaskKind::Skeptical: {
      const Formula& phi = require_query(task);
      Reduction r = finish(Formula::conj(circ, Formula::negate(phi)), true, {}, vocab, std::move(map), std::move(order),
                           task.detail);
      if (!task.detail) r.qbf = circ_entails_qbf(c, phi);
      return r;
    }
    default:
      throw Error("task kind does not apply to circumscription");
  }
}

}  // namespace quip
