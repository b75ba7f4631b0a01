#include "quip/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "quip/errors.hpp"
#include "quip/qbf.hpp"

namespace quip {

namespace {

const std::string kEmptyName;
const std::vector<std::string> kNoVars;
const Formula kNull;

}  // namespace

Formula Formula::var(std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Var;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::top() { return Formula(); }

Formula Formula::bottom() {
  static const Formula f = [] {
    auto n = std::make_shared<FormulaNode>();
    n->op = Op::False;
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::negate(Formula f) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Not;
  n->lhs = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::And;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Or;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::impl(Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Impl;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::iff(Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Iff;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::modal(Formula inner) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Modal;
  n->lhs = std::move(inner);
  return Formula(std::move(n));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Exists;
  n->bound = std::move(vars);
  n->lhs = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Forall;
  n->bound = std::move(vars);
  n->lhs = std::move(body);
  return Formula(std::move(n));
}

Op Formula::op() const { return node_ ? node_->op : Op::True; }
const std::string& Formula::name() const { return node_ ? node_->name : kEmptyName; }
const std::vector<std::string>& Formula::bound() const { return node_ ? node_->bound : kNoVars; }
const Formula& Formula::lhs() const { return node_ ? node_->lhs : kNull; }
const Formula& Formula::rhs() const { return node_ ? node_->rhs : kNull; }

bool Formula::is_binary() const {
  switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Impl:
    case Op::Iff:
      return true;
    default:
      return false;
  }
}

bool Formula::is_quantifier() const { return op() == Op::Exists || op() == Op::Forall; }

std::size_t Formula::size() const {
  switch (op()) {
    case Op::Var:
    case Op::True:
    case Op::False:
      return 1;
    case Op::Not:
    case Op::Modal:
    case Op::Exists:
    case Op::Forall:
      return 1 + lhs().size();
    default:
      return 1 + lhs().size() + rhs().size();
  }
}

int compare(const Formula& a, const Formula& b) {
  if (a.id() == b.id()) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  switch (a.op()) {
    case Op::True:
    case Op::False:
      return 0;
    case Op::Var:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Op::Not:
    case Op::Modal:
      return compare(a.lhs(), b.lhs());
    case Op::Exists:
    case Op::Forall:
      if (a.bound() != b.bound()) return a.bound() < b.bound() ? -1 : 1;
      return compare(a.lhs(), b.lhs());
    default: {
      int c = compare(a.lhs(), b.lhs());
      return c != 0 ? c : compare(a.rhs(), b.rhs());
    }
  }
}

bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
  return acc;
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Op::And) {
      walk(g.lhs());
      walk(g.rhs());
    } else {
      out.push_back(g);
    }
  };
  walk(f);
  return out;
}

namespace {

void collect_vars(const Formula& f, std::vector<std::string>& out, std::unordered_set<std::string>& seen) {
  switch (f.op()) {
    case Op::Var:
      if (seen.insert(f.name()).second) out.push_back(f.name());
      return;
    case Op::True:
    case Op::False:
      return;
    case Op::Exists:
    case Op::Forall:
      collect_vars(f.lhs(), out, seen);
      for (const auto& v : f.bound())
        if (seen.insert(v).second) out.push_back(v);
      return;
    case Op::Not:
    case Op::Modal:
      collect_vars(f.lhs(), out, seen);
      return;
    default:
      collect_vars(f.lhs(), out, seen);
      collect_vars(f.rhs(), out, seen);
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound_stack, std::vector<std::string>& out,
                  std::unordered_set<std::string>& seen) {
  switch (f.op()) {
    case Op::Var:
      if (std::find(bound_stack.begin(), bound_stack.end(), f.name()) == bound_stack.end() &&
          seen.insert(f.name()).second)
        out.push_back(f.name());
      return;
    case Op::True:
    case Op::False:
      return;
    case Op::Exists:
    case Op::Forall: {
      std::size_t mark = bound_stack.size();
      bound_stack.insert(bound_stack.end(), f.bound().begin(), f.bound().end());
      collect_free(f.lhs(), bound_stack, out, seen);
      bound_stack.resize(mark);
      return;
    }
    case Op::Not:
    case Op::Modal:
      collect_free(f.lhs(), bound_stack, out, seen);
      return;
    default:
      collect_free(f.lhs(), bound_stack, out, seen);
      collect_free(f.rhs(), bound_stack, out, seen);
  }
}

bool contains_op(const Formula& f, Op a, Op b) {
  if (f.op() == a || f.op() == b) return true;
  switch (f.op()) {
    case Op::Var:
    case Op::True:
    case Op::False:
      return false;
    case Op::Not:
    case Op::Modal:
    case Op::Exists:
    case Op::Forall:
      return contains_op(f.lhs(), a, b);
    default:
      return contains_op(f.lhs(), a, b) || contains_op(f.rhs(), a, b);
  }
}

// Rebuilds `f` with `leaf` applied to every free Var node.
template <typename Leaf>
Formula map_free_vars(const Formula& f, Leaf&& leaf, std::vector<std::string>& bound_stack) {
  switch (f.op()) {
    case Op::Var:
      if (std::find(bound_stack.begin(), bound_stack.end(), f.name()) != bound_stack.end()) return f;
      return leaf(f);
    case Op::True:
    case Op::False:
      return f;
    case Op::Not:
      return Formula::negate(map_free_vars(f.lhs(), leaf, bound_stack));
    case Op::Modal:
      return Formula::modal(map_free_vars(f.lhs(), leaf, bound_stack));
    case Op::Exists:
    case Op::Forall: {
      std::size_t mark = bound_stack.size();
      bound_stack.insert(bound_stack.end(), f.bound().begin(), f.bound().end());
      Formula body = map_free_vars(f.lhs(), leaf, bound_stack);
      bound_stack.resize(mark);
      return f.op() == Op::Exists ? Formula::exists(f.bound(), body) : Formula::forall(f.bound(), body);
    }
    case Op::And:
      return Formula::conj(map_free_vars(f.lhs(), leaf, bound_stack), map_free_vars(f.rhs(), leaf, bound_stack));
    case Op::Or:
      return Formula::disj(map_free_vars(f.lhs(), leaf, bound_stack), map_free_vars(f.rhs(), leaf, bound_stack));
    case Op::Impl:
      return Formula::impl(map_free_vars(f.lhs(), leaf, bound_stack), map_free_vars(f.rhs(), leaf, bound_stack));
    case Op::Iff:
      return Formula::iff(map_free_vars(f.lhs(), leaf, bound_stack), map_free_vars(f.rhs(), leaf, bound_stack));
  }
  return f;
}

}  // namespace

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_vars(f, out, seen);
  return out;
}

std::vector<std::string> variables(const Theory& t) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& f : t.formulas) collect_vars(f, out, seen);
  return out;
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out, stack;
  std::unordered_set<std::string> seen;
  collect_free(f, stack, out, seen);
  return out;
}

bool has_modal(const Formula& f) { return contains_op(f, Op::Modal, Op::Modal); }
bool has_quantifier(const Formula& f) { return contains_op(f, Op::Exists, Op::Forall); }
bool is_objective(const Formula& f) { return !has_modal(f) && !has_quantifier(f); }

bool eval(const Formula& f, const Assignment& a) {
  switch (f.op()) {
    case Op::Var: {
      auto it = a.find(f.name());
      if (it == a.end()) throw Error("unassigned variable '" + f.name() + "'");
      return it->second;
    }
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Not:
      return !eval(f.lhs(), a);
    case Op::And:
      return eval(f.lhs(), a) && eval(f.rhs(), a);
    case Op::Or:
      return eval(f.lhs(), a) || eval(f.rhs(), a);
    case Op::Impl:
      return !eval(f.lhs(), a) || eval(f.rhs(), a);
    case Op::Iff:
      return eval(f.lhs(), a) == eval(f.rhs(), a);
    case Op::Modal:
      throw Error("cannot evaluate a modal atom classically");
    case Op::Exists:
    case Op::Forall:
      throw Error("cannot evaluate a quantified formula classically");
  }
  return false;
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& sigma) {
  if (sigma.empty()) return f;
  std::vector<std::string> stack;
  return map_free_vars(
      f,
      [&](const Formula& v) {
        auto it = sigma.find(v.name());
        return it == sigma.end() ? v : it->second;
      },
      stack);
}

Formula rename(const Formula& f, const std::map<std::string, std::string>& names) {
  std::map<std::string, Formula> sigma;
  for (const auto& [from, to] : names) sigma.emplace(from, Formula::var(to));
  return substitute(f, sigma);
}

namespace {

struct Atomizer {
  NameSupply& names;
  std::vector<ModalAtom>& atoms;
  std::map<Formula, std::size_t, StructuralLess> index;
  bool allow_new = true;
  bool failed = false;

  Formula run(const Formula& f) {
    switch (f.op()) {
      case Op::Var:
      case Op::True:
      case Op::False:
        return f;
      case Op::Modal: {
        auto it = index.find(f);
        if (it != index.end()) {
          // Pre-order registration: an outer atom's slot exists before its
          // inner atoms are visited, so fill atomized inner lazily.
          return Formula::var(atoms[it->second].var);
        }
        if (!allow_new) {
          failed = true;
          return f;
        }
        std::size_t slot = atoms.size();
        atoms.push_back({names.fresh("L_" + std::to_string(slot + 1)), f.lhs(), {}});
        index.emplace(f, slot);
        Formula inner = run(f.lhs());
        atoms[slot].inner_atomized = inner;
        return Formula::var(atoms[slot].var);
      }
      case Op::Not:
        return Formula::negate(run(f.lhs()));
      case Op::Exists:
        return Formula::exists(f.bound(), run(f.lhs()));
      case Op::Forall:
        return Formula::forall(f.bound(), run(f.lhs()));
      case Op::And:
        return Formula::conj(run(f.lhs()), run(f.rhs()));
      case Op::Or:
        return Formula::disj(run(f.lhs()), run(f.rhs()));
      case Op::Impl:
        return Formula::impl(run(f.lhs()), run(f.rhs()));
      case Op::Iff:
        return Formula::iff(run(f.lhs()), run(f.rhs()));
    }
    return f;
  }
};

}  // namespace

AtomizedTheory atomize_modal(const Theory& t, const std::set<std::string>& reserved) {
  NameSupply names(variables(t));
  for (const auto& r : reserved) names.reserve(r);
  AtomizedTheory out;
  Atomizer at{names, out.atoms, {}};
  for (const auto& f : t.formulas) out.theory.formulas.push_back(at.run(f));
  return out;
}

bool atomize_with(const Formula& f, const std::vector<ModalAtom>& atoms, Formula& out) {
  NameSupply unused;
  std::vector<ModalAtom> table = atoms;
  Atomizer at{unused, table, {}};
  for (std::size_t i = 0; i < atoms.size(); ++i) at.index.emplace(Formula::modal(atoms[i].inner), i);
  at.allow_new = false;
  out = at.run(f);
  return !at.failed;
}

Formula deatomize(const Formula& f, const std::vector<ModalAtom>& atoms) {
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < atoms.size(); ++i) slot.emplace(atoms[i].var, i);
  std::function<Formula(const Formula&)> back = [&](const Formula& g) -> Formula {
    std::vector<std::string> stack;
    return map_free_vars(
        g,
        [&](const Formula& v) -> Formula {
          auto it = slot.find(v.name());
          if (it == slot.end()) return v;
          return Formula::modal(back(atoms[it->second].inner_atomized));
        },
        stack);
  };
  return back(f);
}

bool entails(const Theory& t, const Formula& phi) {
  Formula body = Formula::impl(t.conjunction(), phi);
  Engine engine;
  return engine.is_true(Formula::forall(free_variables(body), body));
}

bool satisfiable(const Theory& t) {
  Formula body = t.conjunction();
  Engine engine;
  return engine.is_true(Formula::exists(free_variables(body), body));
}

NameSupply::NameSupply(const std::vector<std::string>& used) : used_(used.begin(), used.end()) {}

std::string NameSupply::fresh(const std::string& base) {
  std::string name = base;
  for (std::size_t i = 1; used_.count(name) || is_reserved_word(name); ++i) name = base + "_" + std::to_string(i);
  used_.insert(name);
  return name;
}

bool is_reserved_word(std::string_view word) {
  return word == "v" || word == "L" || word == "TRUE" || word == "FALSE" || word == "exists" ||
         word == "forall" || word == "not";
}

}  // namespace quip
