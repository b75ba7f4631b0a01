#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quip/formalisms.hpp"
#include "quip/qbf.hpp"

namespace quip {

enum class Concept {
  DefaultIndex,    // default i applied (generating)
  Justification,   // justification of default i assumed consistent; determined by the witness
  Hypothesis,      // hypothesis selected
  ModalCandidate,  // L(formula) believed
  Atom,            // program or theory atom
  Auxiliary,
};

struct VarInfo {
  Concept kind = Concept::Auxiliary;
  std::size_t index = 0;  // default / candidate / hypothesis position
  std::string name;       // hypothesis or atom name
  Formula formula;        // consequent of a default, inner formula of a candidate
};

enum class Formalism { DefaultLogic, Autoepistemic, LogicProgram, Abduction, Circumscription };

// Internal QBF variable -> problem concept, in insertion order. Selector
// variables (everything except Justification and Auxiliary) decide the
// witness; their insertion order is the canonical witness order.
struct VarMap {
  Formalism formalism = Formalism::DefaultLogic;
  Theory background;  // DL only: T, rendered as part of each extension
  std::vector<std::pair<std::string, VarInfo>> entries;

  void add(std::string var, VarInfo info);
  const VarInfo* find(const std::string& var) const;
  std::vector<std::string> selectors() const;
};

enum class TaskKind { Existence, Brave, Skeptical, CircEntails, AbdExists, AbdRelevance, AbdNecessity };

struct Task {
  TaskKind kind = TaskKind::Existence;
  std::optional<Formula> query;  // Brave, Skeptical, CircEntails
  std::string hypothesis;        // AbdRelevance, AbdNecessity
  bool minimal = false;          // abduction only
  bool detail = false;
  bool consistent_only = true;   // AEL only

  static Task existence(bool detail = false);
  static Task brave(Formula phi, bool detail = false);
  static Task skeptical(Formula phi, bool detail = false);
};

// A closed QBF (detail off) or an open one whose free variables are the
// selectors of `varmap` (detail on). In detail mode skeptical and necessity
// tasks yield counter-witnesses: objects that do not have the property.
struct Reduction {
  Qbf qbf;
  VarMap varmap;
  std::vector<std::string> order_hint;  // suggested top of the BDD order
  bool detail = false;
  bool counter = false;  // detail witnesses refute the task (skeptical, necessity)
};

// Default logic through the generating-set characterization: free g_i says
// default i generates the extension Th(T u {gamma_i : g_i}).
Reduction reduce_dl_mt(const DefaultTheory& dt, const Task& task);

// Default logic through full sets: free f_i guesses which justifications are
// consistent, a_i are the defaults applied under that guess.
Reduction reduce_dl_fullset(const DefaultTheory& dt, const Task& task);

// Free variables are the atoms of the program (and of the query).
Reduction reduce_dlp(const LogicProgram& lp, const Task& task);

Reduction reduce_abd(const AbductionProblem& ap, const Task& task);

// Throws ReferenceError if the query contains a modal atom not in the theory.
Reduction reduce_ael(const AelTheory& ael, const Task& task);

// CIRC(T; P, Z) = T & forall P' Z' ((T[P/P', Z/Z'] & P' <= P) -> P <= P'),
// with X <= Y the conjunction of x_i -> y_i. Free variables are P u Q u Z.
Qbf build_circ(const CircPolicy& c);

// forall V (CIRC(T; P, Z) -> phi)
Qbf circ_entails_qbf(const CircPolicy& c, const Formula& phi);

// Existence lists (detail) or decides the existence of circumscriptive models;
// CircEntails decides inference or, in detail mode, lists counter-models.
Reduction reduce_circ(const CircPolicy& c, const Task& task);

}  // namespace quip
