#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "quip/bdd.hpp"
#include "quip/formula.hpp"

namespace quip {

// A QBF is a Formula that may contain Exists/Forall nodes anywhere (prenex
// form is not required) and may have free variables.
using Qbf = Formula;

struct Literal {
  std::string var;
  bool positive;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Term = std::vector<Literal>;

// Sum of products over the free variables of an evaluated QBF. The empty term
// is the constant true cube; no terms at all is false.
struct Sop {
  std::vector<Term> terms;

  bool holds(const Assignment& a) const;
  bool is_false() const { return terms.empty(); }
};

std::string to_string(const Term& t);
std::string to_string(const Sop& s);

struct EngineConfig {
  // Variables placed at the top of the order, in this order; all remaining
  // variables follow in order of first occurrence.
  std::vector<std::string> order;
  std::size_t node_budget = 20'000'000;
  std::optional<std::chrono::milliseconds> timeout;
};

struct Bdd {
  bdd::NodeId node = bdd::kFalse;
  friend bool operator==(Bdd, Bdd) = default;
};

// BDD-based QBF evaluator. Subformulas are compiled bottom-up; an existential
// block becomes the OR of the cofactors of its body, a universal block the
// AND, one variable at a time starting with the innermost (last listed).
//
// Variable levels are fixed when first seen and never reordered, so BDDs from
// successive compile() calls on one engine are directly comparable.
class Engine {
 public:
  explicit Engine(EngineConfig config = {});

  Bdd compile(const Qbf& q);

  // Truth value of a closed QBF. Throws Error if `q` has free variables.
  bool is_true(const Qbf& q);

  // One product term per path to the 1-terminal.
  Sop to_sop(Bdd b) const;

  bool eval(Bdd b, const Assignment& a) const;

  // Level -> variable name.
  const std::vector<std::string>& order() const { return names_; }
  std::size_t dag_size(Bdd b) const { return manager_.dag_size(b.node); }
  std::size_t node_count() const { return manager_.node_count(); }
  bool is_constant(Bdd b, bool value) const { return b.node == (value ? bdd::kTrue : bdd::kFalse); }

  bdd::Manager& manager() { return manager_; }

 private:
  bdd::Level level_of(const std::string& name);
  bdd::NodeId build(const Formula& f);

  EngineConfig config_;
  bdd::Manager manager_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, bdd::Level> levels_;
  std::unordered_map<const FormulaNode*, bdd::NodeId> memo_;
  std::vector<Formula> keep_alive_;
};

// Equisatisfiable prenex CNF of a closed QBF in QDIMACS format. Bound
// variables are renamed apart, the formula is prenexed and the matrix is
// converted with definitional (Tseitin) clauses whose auxiliary variables
// form the innermost existential block.
std::string export_qdimacs(const Qbf& q);

}  // namespace quip
