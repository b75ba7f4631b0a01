#include "quip/interpreter.hpp"

#include <algorithm>
#include <unordered_map>

#include "quip/errors.hpp"
#include "quip/syntax.hpp"

namespace quip {

namespace {

using Bits = std::vector<bool>;

void expand(const Term& term, const VarMap& map, const std::unordered_map<std::string, std::size_t>& slot,
            std::vector<Bits>& out) {
  const std::size_t n = slot.size();
  Bits fixed(n, false), known(n, false);
  for (const auto& lit : term) {
    const VarInfo* info = map.find(lit.var);
    if (!info) throw ConsistencyError("witness variable '" + lit.var + "' has no meaning in the problem");
    auto it = slot.find(lit.var);
    if (it == slot.end()) continue;  // justification or auxiliary
    known[it->second] = true;
    fixed[it->second] = lit.positive;
  }
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < n; ++i)
    if (!known[i]) open.push_back(i);
  if (open.size() >= 31) throw ResourceError("too many unconstrained selectors to list the witnesses");
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << open.size()); ++k) {
    Bits b = fixed;
    for (std::size_t j = 0; j < open.size(); ++j) b[open[j]] = (k >> j) & 1;
    out.push_back(std::move(b));
  }
}

Witness build(const Bits& bits, const VarMap& map, const std::vector<std::string>& selectors) {
  std::vector<const VarInfo*> chosen;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) chosen.push_back(map.find(selectors[i]));
  switch (map.formalism) {
    case Formalism::DefaultLogic: {
      DlExtension e{map.background, {}, {}};
      for (const auto* info : chosen) {
        e.generating.push_back(info->index);
        e.consequents.push_back(info->formula);
      }
      return e;
    }
    case Formalism::Autoepistemic: {
      AelExpansion e;
      for (const auto* info : chosen) {
        e.believed.push_back(info->index);
        e.formulas.push_back(info->formula);
      }
      return e;
    }
    case Formalism::LogicProgram: {
      StableModel m;
      for (const auto* info : chosen) m.atoms.push_back(info->name);
      return m;
    }
    case Formalism::Abduction: {
      Explanation e;
      for (const auto* info : chosen) e.hypotheses.push_back(info->name);
      return e;
    }
    case Formalism::Circumscription: {
      CircModel m;
      for (const auto* info : chosen) m.atoms.push_back(info->name);
      return m;
    }
  }
  throw ConsistencyError("unknown formalism");
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string parenthesized(const std::vector<Formula>& fs, const char* sep) {
  std::vector<std::string> parts;
  for (const auto& f : fs) parts.push_back("(" + to_string(f) + ")");
  return join(parts, sep);
}

}  // namespace

std::vector<Witness> interpret(const Sop& sop, const VarMap& map) {
  std::vector<std::string> selectors = map.selectors();
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < selectors.size(); ++i) slot[selectors[i]] = i;

  std::vector<Bits> all;
  for (const auto& term : sop.terms) expand(term, map, slot, all);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<Witness> out;
  for (const auto& bits : all) out.push_back(build(bits, map, selectors));
  return out;
}

std::string render(const Witness& w) {
  struct Visitor {
    std::string operator()(const DlExtension& e) const {
      return "Th( {" + parenthesized(e.background.formulas, "&") + "} u {" + parenthesized(e.consequents, " ") + "} )";
    }
    std::string operator()(const AelExpansion& e) const {
      std::vector<std::string> parts;
      for (const auto& f : e.formulas) parts.push_back(to_string(f));
      return "Bel: {" + join(parts, ", ") + "}";
    }
    std::string operator()(const StableModel& m) const { return "{" + join(m.atoms, ", ") + "}"; }
    std::string operator()(const Explanation& e) const { return "{" + join(e.hypotheses, ", ") + "}"; }
    std::string operator()(const CircModel& m) const { return "{" + join(m.atoms, ", ") + "}"; }
  };
  return std::visit(Visitor{}, w);
}

const char* render_answer(bool yes) { return yes ? "YES" : "NO"; }

Outcome solve(const Reduction& r, EngineConfig config) {
  std::vector<std::string> order = r.order_hint;
  order.insert(order.end(), config.order.begin(), config.order.end());
  config.order = std::move(order);
  Engine engine(std::move(config));
  Outcome out;
  if (!r.detail) {
    out.answer = engine.is_true(r.qbf);
    return out;
  }
  Bdd b = engine.compile(r.qbf);
  out.witnesses = interpret(engine.to_sop(b), r.varmap);
  out.answer = r.counter ? out.witnesses.empty() : !out.witnesses.empty();
  return out;
}

}  // namespace quip
