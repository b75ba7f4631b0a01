#include "quip/formalisms.hpp"

#include <algorithm>
#include <set>

#include "quip/errors.hpp"

namespace quip {

namespace {

void add_unique(std::vector<std::string>& out, const std::vector<std::string>& names) {
  for (const auto& n : names)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
}

}  // namespace

std::vector<std::string> DefaultTheory::vocabulary() const {
  std::vector<std::string> out = variables(background);
  for (const auto& d : defaults) {
    add_unique(out, variables(d.prerequisite));
    add_unique(out, variables(d.justification));
    add_unique(out, variables(d.consequent));
  }
  return out;
}

std::vector<std::string> LogicProgram::atoms() const {
  std::vector<std::string> out;
  for (const auto& r : rules) {
    add_unique(out, r.head);
    add_unique(out, r.pos);
    add_unique(out, r.neg);
  }
  return out;
}

std::vector<std::string> AbductionProblem::vocabulary() const {
  std::vector<std::string> out = variables(theory);
  add_unique(out, hypotheses);
  add_unique(out, {observation});
  return out;
}

std::vector<std::string> CircPolicy::vocabulary() const {
  std::vector<std::string> out = minimized;
  add_unique(out, fixed);
  add_unique(out, varying);
  return out;
}

void CircPolicy::validate() const {
  std::set<std::string> seen;
  for (const auto* part : {&minimized, &fixed, &varying})
    for (const auto& a : *part)
      if (!seen.insert(a).second) throw ReferenceError("atom '" + a + "' occurs in more than one of P, Q, Z");
  for (const auto& v : variables(theory))
    if (!seen.count(v)) throw ReferenceError("atom '" + v + "' of the theory is not assigned to P, Q or Z");
}

std::vector<bool> selector_bits(const std::vector<std::size_t>& chosen, std::size_t universe) {
  std::vector<bool> bits(universe, false);
  for (auto i : chosen) bits.at(i) = true;
  return bits;
}

std::vector<bool> selector_bits(const std::vector<std::string>& chosen, const std::vector<std::string>& universe) {
  std::vector<bool> bits(universe.size(), false);
  for (std::size_t i = 0; i < universe.size(); ++i)
    bits[i] = std::find(chosen.begin(), chosen.end(), universe[i]) != chosen.end();
  return bits;
}

}  // namespace quip
