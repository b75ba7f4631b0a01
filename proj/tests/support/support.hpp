#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quip/formalisms.hpp"
#include "quip/formula.hpp"

namespace quip::testing {

using Rng = std::mt19937_64;

std::vector<std::string> atoms(std::size_t n, const std::string& prefix = "p");

// Objective formula over `vars` with at most `depth` nested connectives.
Formula random_formula(Rng& rng, const std::vector<std::string>& vars, int depth);

// Formula with quantifier blocks at random depths (never rebinding a
// variable bound above). With `closed`, every variable of `vars` that is
// still free is bound by an outermost block.
Formula random_qbf(Rng& rng, const std::vector<std::string>& vars, int depth, bool closed);

DefaultTheory random_default_theory(Rng& rng, std::size_t max_vars, std::size_t max_defaults);
LogicProgram random_program(Rng& rng, std::size_t max_atoms, std::size_t max_rules, std::size_t max_head);
AbductionProblem random_abduction(Rng& rng, std::size_t max_hypotheses);
// A theory with at most `max_candidates` distinct modal atoms (nesting allowed).
AelTheory random_ael(Rng& rng, std::size_t max_candidates);
CircPolicy random_circ(Rng& rng, std::size_t max_vars);

// Reference QBF semantics by Shannon expansion:
// exists x f = f[x/T] v f[x/F]; forall x f = f[x/T] & f[x/F].
// Every free variable must be assigned in `a`.
bool expand_eval(const Formula& q, const Assignment& a);

// Parses QDIMACS text and decides the formula by search over the prefix
// with unit propagation on existential literals. Throws std::runtime_error
// on malformed input.
bool qdimacs_eval(const std::string& text);

// All assignments of `vars`, in increasing index order (bit i = vars[i]).
std::vector<Assignment> all_assignments(const std::vector<std::string>& vars);

}  // namespace quip::testing
