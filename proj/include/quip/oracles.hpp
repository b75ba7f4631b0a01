#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quip/formalisms.hpp"
#include "quip/truth_table.hpp"

namespace quip {

// Exhaustive reference semantics for each formalism, written straight from
// the definitions. They enumerate guesses and decide classical entailment by
// truth tables, never through the QBF pipeline.
struct OracleLimits {
  std::size_t max_enumeration = 16;  // defaults, SF members, atoms or hypotheses
  tt::Exec exec = tt::Exec::Parallel;
};

// Extensions of a default theory, one fingerprint per extension (extensions
// with logically equivalent Th(T u consequents) are merged), sorted by the
// generating-set bit-vector.
std::vector<ExtensionFingerprint> oracle_extensions(const DefaultTheory& dt, const OracleLimits& limits = {});

// Does Th(T u fp.consequents) contain phi?
bool extension_contains(const DefaultTheory& dt, const ExtensionFingerprint& fp, const Formula& phi,
                        tt::Exec exec = tt::Exec::Parallel);

// Stable expansions as the sets S of believed candidates (indices into
// atomized().atoms), sorted by bit-vector. With `consistent_only` an
// inconsistent expansion is not reported.
std::vector<std::vector<std::size_t>> oracle_stable_expansions(const AelTheory& ael, bool consistent_only = true,
                                                               const OracleLimits& limits = {});

// Does the expansion believing exactly `believed` contain phi? phi may use
// modal atoms of the theory.
bool expansion_contains(const AelTheory& ael, const std::vector<std::size_t>& believed, const Formula& phi,
                        tt::Exec exec = tt::Exec::Parallel);

// Stable models over LogicProgram::atoms() plus `extra_atoms`.
std::vector<Assignment> oracle_stable_models(const LogicProgram& lp, const OracleLimits& limits = {},
                                             const std::vector<std::string>& extra_atoms = {});

// (Minimal) abductive explanations as hypothesis lists in H order.
std::vector<std::vector<std::string>> oracle_explanations(const AbductionProblem& ap, bool minimal,
                                                          const OracleLimits& limits = {});
bool oracle_relevance(const AbductionProblem& ap, const std::string& h, bool minimal, const OracleLimits& limits = {});
// Vacuously true when no explanation exists.
bool oracle_necessity(const AbductionProblem& ap, const std::string& h, bool minimal, const OracleLimits& limits = {});

// Models of CIRC(T; P, Z) over P u Q u Z in increasing index order.
std::vector<Assignment> oracle_circ_models(const CircPolicy& c, const OracleLimits& limits = {});
bool oracle_circ_entails(const CircPolicy& c, const Formula& phi, const OracleLimits& limits = {});

}  // namespace quip
