#include "quip/qbf.hpp"

#include <algorithm>

#include "quip/errors.hpp"
#include "quip/syntax.hpp"

namespace quip {

bool Sop::holds(const Assignment& a) const {
  for (const auto& term : terms) {
    bool ok = true;
    for (const auto& lit : term) {
      auto it = a.find(lit.var);
      if (it == a.end()) throw Error("assignment misses SOP variable '" + lit.var + "'");
      if (it->second != lit.positive) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::string to_string(const Term& t) {
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    if (!t[i].positive) out += '!';
    out += t[i].var;
  }
  return out + "}";
}

std::string to_string(const Sop& s) {
  if (s.terms.empty()) return "FALSE";
  std::string out;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    if (i) out += " v ";
    out += to_string(s.terms[i]);
  }
  return out;
}

namespace {

bdd::Limits limits_for(const EngineConfig& c) {
  bdd::Limits l;
  l.node_budget = c.node_budget;
  if (c.timeout) l.deadline = std::chrono::steady_clock::now() + *c.timeout;
  return l;
}

}  // namespace

Engine::Engine(EngineConfig config) : config_(std::move(config)), manager_(limits_for(config_)) {
  for (const auto& name : config_.order) level_of(name);
}

bdd::Level Engine::level_of(const std::string& name) {
  auto [it, inserted] = levels_.emplace(name, static_cast<bdd::Level>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

Bdd Engine::compile(const Qbf& q) {
  for (const auto& name : variables(q)) level_of(name);
  keep_alive_.push_back(q);
  return Bdd{build(q)};
}

bdd::NodeId Engine::build(const Formula& f) {
  switch (f.op()) {
    case Op::True:
      return bdd::kTrue;
    case Op::False:
      return bdd::kFalse;
    case Op::Var:
      return manager_.var(level_of(f.name()));
    case Op::Modal:
      throw Error("modal atom " + to_string(f) + " must be atomized before QBF evaluation");
    default:
      break;
  }
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
  bdd::NodeId r = bdd::kFalse;
  switch (f.op()) {
    case Op::Not:
      r = manager_.negate(build(f.lhs()));
      break;
    case Op::And: {
      bdd::NodeId a = build(f.lhs());
      r = a == bdd::kFalse ? a : manager_.conj(a, build(f.rhs()));
      break;
    }
    case Op::Or: {
      bdd::NodeId a = build(f.lhs());
      r = a == bdd::kTrue ? a : manager_.disj(a, build(f.rhs()));
      break;
    }
    case Op::Impl: {
      bdd::NodeId a = build(f.lhs());
      r = a == bdd::kFalse ? bdd::kTrue : manager_.implies(a, build(f.rhs()));
      break;
    }
    case Op::Iff:
      r = manager_.equiv(build(f.lhs()), build(f.rhs()));
      break;
    case Op::Exists:
    case Op::Forall: {
      r = build(f.lhs());
      const auto& vars = f.bound();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        bdd::Level l = level_of(*it);
        r = f.op() == Op::Exists ? manager_.exists(r, l) : manager_.forall(r, l);
      }
      break;
    }
    default:
      break;
  }
  memo_.emplace(f.id(), r);
  return r;
}

bool Engine::is_true(const Qbf& q) {
  auto free = free_variables(q);
  if (!free.empty()) throw Error("QBF is not closed: '" + free.front() + "' occurs free");
  Bdd b = compile(q);
  return b.node == bdd::kTrue;
}

Sop Engine::to_sop(Bdd b) const {
  Sop sop;
  manager_.for_each_one_path(b.node, [&](const std::vector<std::pair<bdd::Level, bool>>& path) {
    Term t;
    t.reserve(path.size());
    for (auto [level, value] : path) t.push_back({names_[level], value});
    sop.terms.push_back(std::move(t));
  });
  return sop;
}

bool Engine::eval(Bdd b, const Assignment& a) const {
  std::vector<bool> values(names_.size(), false);
  for (std::size_t l = 0; l < names_.size(); ++l) {
    auto it = a.find(names_[l]);
    if (it != a.end()) values[l] = it->second;
  }
  return manager_.eval(b.node, values);
}

}  // namespace quip
