#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quip/formula.hpp"

namespace quip {

// prerequisite : justification / consequent. A missing prerequisite is TRUE.
struct Default {
  Formula prerequisite;
  Formula justification;
  Formula consequent;
  friend bool operator==(const Default&, const Default&) = default;
};

struct DefaultTheory {
  Theory background;
  std::vector<Default> defaults;

  std::vector<std::string> vocabulary() const;
};

// head1 v ... v headk <- pos1, ..., posm, not neg1, ..., not negn.
// An empty head makes the rule an integrity constraint.
struct Rule {
  std::vector<std::string> head;
  std::vector<std::string> pos;
  std::vector<std::string> neg;
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct LogicProgram {
  std::vector<Rule> rules;

  // Atoms in order of first occurrence (head, positive body, negative body).
  std::vector<std::string> atoms() const;
  friend bool operator==(const LogicProgram&, const LogicProgram&) = default;
};

struct AbductionProblem {
  Theory theory;
  std::vector<std::string> hypotheses;
  std::string observation;

  std::vector<std::string> vocabulary() const;
};

struct AelTheory {
  Theory theory;

  // The inner formulas of all modal subterms (believed-formula candidates)
  // together with their atomization.
  AtomizedTheory atomized() const { return atomize_modal(theory); }
};

// Parallel circumscription: minimize P, keep Q fixed, let Z vary.
struct CircPolicy {
  Theory theory;
  std::vector<std::string> minimized;
  std::vector<std::string> fixed;
  std::vector<std::string> varying;

  std::vector<std::string> vocabulary() const;
  // Throws ReferenceError unless P, Q, Z are disjoint and cover vars(T).
  void validate() const;
};

// Finite presentation of an extension Th(T u consequents).
struct ExtensionFingerprint {
  std::vector<std::size_t> generating;  // indices into DefaultTheory::defaults, increasing
  std::vector<Formula> consequents;     // consequents of `generating`, same order
  friend bool operator==(const ExtensionFingerprint&, const ExtensionFingerprint&) = default;
};

// Selector bit-vector of `chosen` (indices or names) over `universe`; the
// canonical sort key for witnesses.
std::vector<bool> selector_bits(const std::vector<std::size_t>& chosen, std::size_t universe);
std::vector<bool> selector_bits(const std::vector<std::string>& chosen, const std::vector<std::string>& universe);

}  // namespace quip
