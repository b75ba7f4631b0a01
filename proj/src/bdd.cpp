#include "quip/bdd.hpp"

#include <algorithm>
#include <string>

#include "quip/errors.hpp"

namespace quip::bdd {

namespace {

inline std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

inline std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix(a * 0x9e3779b97f4a7c15ULL ^ mix(b + 0x632be59bd9b4e019ULL) ^ (c << 1) * 0x85ebca6b);
}

constexpr std::size_t kInitialUnique = 1u << 12;
constexpr std::size_t kInitialCache = 1u << 14;
constexpr std::size_t kMaxCache = 1u << 22;

}  // namespace

Manager::Manager(Limits limits) : limits_(limits) {
  nodes_.push_back({kTerminalLevel, kFalse, kFalse});
  nodes_.push_back({kTerminalLevel, kTrue, kTrue});
  unique_.assign(kInitialUnique, 0);
  unique_mask_ = kInitialUnique - 1;
  cache_.resize(kInitialCache);
  cache_mask_ = kInitialCache - 1;
}

NodeId Manager::var(Level level) { return make(level, kFalse, kTrue); }

NodeId Manager::make(Level level, NodeId low, NodeId high) {
  if (low == high) return low;
  std::size_t slot = hash3(level, low, high) & unique_mask_;
  while (NodeId id = unique_[slot]) {
    const Node& n = nodes_[id];
    if (n.level == level && n.low == low && n.high == high) return id;
    slot = (slot + 1) & unique_mask_;
  }
  if (nodes_.size() >= limits_.node_budget)
    throw ResourceError("BDD node budget of " + std::to_string(limits_.node_budget) + " nodes exceeded");
  tick();
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({level, low, high});
  unique_[slot] = id;
  if (nodes_.size() * 2 > unique_.size()) grow_unique();
  return id;
}

void Manager::grow_unique() {
  std::size_t cap = unique_.size() * 2;
  unique_.assign(cap, 0);
  unique_mask_ = cap - 1;
  for (NodeId id = 2; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    std::size_t slot = hash3(n.level, n.low, n.high) & unique_mask_;
    while (unique_[slot]) slot = (slot + 1) & unique_mask_;
    unique_[slot] = id;
  }
  // Keep the computed table roughly proportional to the node store.
  if (cache_.size() < kMaxCache && cache_.size() < nodes_.size()) {
    std::size_t size = std::min(kMaxCache, cache_.size() * 4);
    cache_.assign(size, CacheEntry{});
    cache_mask_ = size - 1;
  }
}

void Manager::tick() {
  if ((++ticks_ & 0xfff) != 0 || !limits_.deadline) return;
  if (std::chrono::steady_clock::now() > *limits_.deadline) throw TimeoutError("BDD evaluation timed out");
}

std::size_t Manager::cache_slot(std::uint32_t tag, NodeId a, NodeId b, std::uint32_t c) const {
  return hash3(a, b, (static_cast<std::uint64_t>(c) << 4) | tag) & cache_mask_;
}

bool Manager::cache_lookup(std::uint32_t tag, NodeId a, NodeId b, std::uint32_t c, NodeId& result) const {
  const CacheEntry& e = cache_[cache_slot(tag, a, b, c)];
  if (e.tag == tag && e.a == a && e.b == b && e.c == c) {
    result = e.result;
    return true;
  }
  return false;
}

void Manager::cache_store(std::uint32_t tag, NodeId a, NodeId b, std::uint32_t c, NodeId result) {
  cache_[cache_slot(tag, a, b, c)] = {tag, a, b, c, result};
}

NodeId Manager::negate(NodeId f) {
  if (f == kFalse) return kTrue;
  if (f == kTrue) return kFalse;
  NodeId r;
  if (cache_lookup(kNot, f, 0, 0, r)) return r;
  Node n = nodes_[f];
  NodeId lo = negate(n.low);
  NodeId hi = negate(n.high);
  r = make(n.level, lo, hi);
  cache_store(kNot, f, 0, 0, r);
  return r;
}

NodeId Manager::apply(BinOp op, NodeId f, NodeId g) {
  switch (op) {
    case BinOp::And:
      if (f == kFalse || g == kFalse) return kFalse;
      if (f == kTrue || f == g) return g;
      if (g == kTrue) return f;
      break;
    case BinOp::Or:
      if (f == kTrue || g == kTrue) return kTrue;
      if (f == kFalse || f == g) return g;
      if (g == kFalse) return f;
      break;
    case BinOp::Xor:
      if (f == g) return kFalse;
      if (f == kFalse) return g;
      if (g == kFalse) return f;
      if (f == kTrue) return negate(g);
      if (g == kTrue) return negate(f);
      break;
  }
  if (f > g) std::swap(f, g);
  std::uint32_t tag = kAnd + static_cast<std::uint32_t>(op);
  NodeId r;
  if (cache_lookup(tag, f, g, 0, r)) return r;
  const Node nf = nodes_[f];
  const Node ng = nodes_[g];
  Level top = std::min(nf.level, ng.level);
  NodeId f0 = nf.level == top ? nf.low : f, f1 = nf.level == top ? nf.high : f;
  NodeId g0 = ng.level == top ? ng.low : g, g1 = ng.level == top ? ng.high : g;
  NodeId lo = apply(op, f0, g0);
  NodeId hi = apply(op, f1, g1);
  r = make(top, lo, hi);
  cache_store(tag, f, g, 0, r);
  return r;
}

NodeId Manager::restrict(NodeId f, Level level, bool value) { return restrict_rec(f, level, value); }

NodeId Manager::restrict_rec(NodeId f, Level level, bool value) {
  const Node n = nodes_[f];
  if (n.level > level) return f;  // includes terminals
  if (n.level == level) return value ? n.high : n.low;
  std::uint32_t tag = value ? kRestrict1 : kRestrict0;
  NodeId r;
  if (cache_lookup(tag, f, 0, level, r)) return r;
  NodeId lo = restrict_rec(n.low, level, value);
  NodeId hi = restrict_rec(n.high, level, value);
  r = make(n.level, lo, hi);
  cache_store(tag, f, 0, level, r);
  return r;
}

NodeId Manager::exists(NodeId f, Level level) { return quantify(f, level, true); }
NodeId Manager::forall(NodeId f, Level level) { return quantify(f, level, false); }

NodeId Manager::quantify(NodeId f, Level level, bool existential) {
  const Node n = nodes_[f];
  if (n.level > level) return f;
  BinOp join = existential ? BinOp::Or : BinOp::And;
  if (n.level == level) return apply(join, n.low, n.high);
  std::uint32_t tag = existential ? kExists : kForall;
  NodeId r;
  if (cache_lookup(tag, f, 0, level, r)) return r;
  NodeId lo = quantify(n.low, level, existential);
  NodeId hi = quantify(n.high, level, existential);
  r = make(n.level, lo, hi);
  cache_store(tag, f, 0, level, r);
  return r;
}

bool Manager::eval(NodeId f, const std::vector<bool>& values) const {
  while (f > kTrue) {
    const Node& n = nodes_[f];
    f = values.at(n.level) ? n.high : n.low;
  }
  return f == kTrue;
}

std::size_t Manager::dag_size(NodeId f) const {
  std::vector<NodeId> stack{f};
  std::vector<bool> seen(nodes_.size(), false);
  std::size_t count = 0;
  while (!stack.empty()) {
    NodeId g = stack.back();
    stack.pop_back();
    if (seen[g]) continue;
    seen[g] = true;
    ++count;
    if (g > kTrue) {
      stack.push_back(nodes_[g].low);
      stack.push_back(nodes_[g].high);
    }
  }
  return count;
}

}  // namespace quip::bdd
