#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace quip {

enum class Op { Var, True, False, Not, And, Or, Impl, Iff, Modal, Exists, Forall };

struct FormulaNode;

// Immutable propositional formula. Besides the classical connectives a node
// may be a modal atom L(f) or a quantifier block; a formula without those is
// called objective. Quantified formulas double as QBFs: quantifier nodes may
// occur at any depth and free variables are allowed.
//
// Copies share structure, so passing by value is cheap.
class Formula {
 public:
  Formula() = default;  // TRUE

  static Formula var(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula impl(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula modal(Formula inner);
  // An empty variable list yields `body` unchanged.
  static Formula exists(std::vector<std::string> vars, Formula body);
  static Formula forall(std::vector<std::string> vars, Formula body);

  Op op() const;
  const std::string& name() const;                // Var only
  const std::vector<std::string>& bound() const;  // Exists/Forall only
  const Formula& lhs() const;  // operand of Not/Modal/quantifiers, left of binary
  const Formula& rhs() const;

  bool is_binary() const;
  bool is_quantifier() const;

  // Number of nodes of the tree (shared subtrees counted per occurrence).
  std::size_t size() const;

  // Identity of the underlying node; usable as a memoization key while the
  // formula is alive.
  const FormulaNode* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

// A default-constructed Formula (null node) is TRUE.
struct FormulaNode {
  Op op;
  std::string name;
  std::vector<std::string> bound;
  Formula lhs;
  Formula rhs;
};

// Structural total order; equal iff the trees are identical.
int compare(const Formula& a, const Formula& b);

struct StructuralLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

// Left-nested conjunction/disjunction; TRUE / FALSE for an empty list.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

// Top-level conjuncts, flattening nested And nodes left to right.
std::vector<Formula> conjuncts(const Formula& f);

// Ordered set of formulas identified with their conjunction.
struct Theory {
  std::vector<Formula> formulas;

  Theory() = default;
  Theory(std::vector<Formula> fs) : formulas(std::move(fs)) {}
  static Theory from_formula(const Formula& f) { return Theory(conjuncts(f)); }

  Formula conjunction() const { return conj_all(formulas); }
  bool empty() const { return formulas.empty(); }
  friend bool operator==(const Theory&, const Theory&) = default;
};

// Total interpretation of a vocabulary.
using Assignment = std::map<std::string, bool>;

// Variables occurring in `f` (free or bound, binders included) in order of
// first occurrence, depth-first left to right.
std::vector<std::string> variables(const Formula& f);
std::vector<std::string> variables(const Theory& t);

// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);

bool is_objective(const Formula& f);
bool has_modal(const Formula& f);
bool has_quantifier(const Formula& f);

// Classical truth value. Throws Error on a modal atom or quantifier and on a
// variable missing from `a`.
bool eval(const Formula& f, const Assignment& a);

// Simultaneous substitution of free occurrences. Variables bound by a
// quantifier inside `f` shadow the mapping; no renaming is performed, so the
// replacement formulas must not mention variables bound in `f`.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& sigma);
Formula rename(const Formula& f, const std::map<std::string, std::string>& names);

// Result of replacing modal atoms by fresh propositional variables.
struct ModalAtom {
  std::string var;        // fresh variable standing for L(inner)
  Formula inner;          // original inner formula (may itself contain L)
  Formula inner_atomized; // inner with nested modal atoms replaced
};

struct AtomizedTheory {
  Theory theory;                 // objective, over the extended vocabulary
  std::vector<ModalAtom> atoms;  // outermost-first order of first occurrence
};

// Replaces every structurally distinct modal subterm L(psi) by one fresh
// variable. Fresh names avoid every variable of `t` and of `reserved`.
AtomizedTheory atomize_modal(const Theory& t, const std::set<std::string>& reserved = {});

// Atomizes `f` against an existing table; returns false if `f` contains a
// modal atom not in the table.
bool atomize_with(const Formula& f, const std::vector<ModalAtom>& atoms, Formula& out);

// Inverse of atomize_modal: replaces the fresh variables by their modal atoms.
Formula deatomize(const Formula& f, const std::vector<ModalAtom>& atoms);

// Classical entailment T |= phi, decided by evaluating the closed QBF
// forall V (T -> phi) with the BDD engine.
bool entails(const Theory& t, const Formula& phi);
bool satisfiable(const Theory& t);

// Generates identifiers that avoid a growing set of used names.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(const std::vector<std::string>& used);

  void reserve(const std::string& name) { used_.insert(name); }
  bool used(const std::string& name) const { return used_.count(name) != 0; }
  // `base` if unused, else `base` followed by the smallest free suffix.
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
};

// Words that cannot be variable names in the concrete syntax.
bool is_reserved_word(std::string_view word);

}  // namespace quip
