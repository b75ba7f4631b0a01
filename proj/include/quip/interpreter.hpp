#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "quip/qbf.hpp"
#include "quip/reductions.hpp"

namespace quip {

struct DlExtension {
  Theory background;
  std::vector<std::size_t> generating;  // default indices, increasing
  std::vector<Formula> consequents;     // in default order
  friend bool operator==(const DlExtension&, const DlExtension&) = default;
};

struct AelExpansion {
  std::vector<std::size_t> believed;  // candidate indices, increasing
  std::vector<Formula> formulas;
  friend bool operator==(const AelExpansion&, const AelExpansion&) = default;
};

struct StableModel {
  std::vector<std::string> atoms;  // true atoms in program order
  friend bool operator==(const StableModel&, const StableModel&) = default;
};

struct Explanation {
  std::vector<std::string> hypotheses;
  friend bool operator==(const Explanation&, const Explanation&) = default;
};

struct CircModel {
  std::vector<std::string> atoms;  // true atoms in P, Q, Z order
  friend bool operator==(const CircModel&, const CircModel&) = default;
};

using Witness = std::variant<DlExtension, AelExpansion, StableModel, Explanation, CircModel>;

// Maps every SOP term to the witnesses it covers. Selector variables missing
// from a term are expanded over both polarities; Justification variables are
// ignored. Witnesses are deduplicated and sorted by selector bit-vector.
// Throws ConsistencyError for a variable missing from `map`.
std::vector<Witness> interpret(const Sop& sop, const VarMap& map);

std::string render(const Witness& w);
const char* render_answer(bool yes);

struct Outcome {
  bool answer = false;
  std::vector<Witness> witnesses;  // detail mode only
};

// Compiles the reduction with its order hint placed in front of
// `config.order`. In detail mode the answer is derived from the witnesses
// (counter-witnesses refute it).
Outcome solve(const Reduction& r, EngineConfig config = {});

}  // namespace quip
