#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace quip::bdd {

using NodeId = std::uint32_t;
using Level = std::uint32_t;

inline constexpr NodeId kFalse = 0;
inline constexpr NodeId kTrue = 1;
inline constexpr Level kTerminalLevel = UINT32_MAX;

struct Node {
  Level level;
  NodeId low;
  NodeId high;
};

struct Limits {
  std::size_t node_budget = 20'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class BinOp : std::uint32_t { And, Or, Xor };

// Reduced ordered BDDs over variables identified by their level (level 0 is
// the root-most variable). Nodes are hash-consed in a unique table, so two
// NodeIds denote the same function iff they are equal. Operations are
// memoized in a lossy computed table. Nodes are never freed; the manager is
// meant to live for one evaluation.
//
// A manager is not thread-safe. Independent managers may be used from
// different threads.
class Manager {
 public:
  explicit Manager(Limits limits = {});

  NodeId constant(bool value) const { return value ? kTrue : kFalse; }
  NodeId var(Level level);
  NodeId make(Level level, NodeId low, NodeId high);

  Level level(NodeId f) const { return nodes_[f].level; }
  NodeId low(NodeId f) const { return nodes_[f].low; }
  NodeId high(NodeId f) const { return nodes_[f].high; }
  bool is_constant(NodeId f) const { return f <= kTrue; }

  NodeId negate(NodeId f);
  NodeId apply(BinOp op, NodeId f, NodeId g);
  NodeId conj(NodeId f, NodeId g) { return apply(BinOp::And, f, g); }
  NodeId disj(NodeId f, NodeId g) { return apply(BinOp::Or, f, g); }
  NodeId implies(NodeId f, NodeId g) { return apply(BinOp::Or, negate(f), g); }
  NodeId equiv(NodeId f, NodeId g) { return negate(apply(BinOp::Xor, f, g)); }

  // Cofactor f|_{level = value}.
  NodeId restrict(NodeId f, Level level, bool value);
  // OR / AND of the two cofactors with respect to `level`.
  NodeId exists(NodeId f, Level level);
  NodeId forall(NodeId f, Level level);

  // `values[l]` is the value of the variable at level l.
  bool eval(NodeId f, const std::vector<bool>& values) const;

  // Calls `emit(path)` for every path from f to the 1-terminal, where path is
  // the list of (level, value) decisions along it.
  template <typename Emit>
  void for_each_one_path(NodeId f, Emit&& emit) const {
    std::vector<std::pair<Level, bool>> path;
    walk_paths(f, path, emit);
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t dag_size(NodeId f) const;
  const Limits& limits() const { return limits_; }

 private:
  struct CacheEntry {
    std::uint32_t tag = 0;  // operation code + 1; 0 marks an empty slot
    NodeId a = 0;
    NodeId b = 0;
    std::uint32_t c = 0;
    NodeId result = 0;
  };

  enum OpCode : std::uint32_t { kAnd = 1, kOr, kXor, kNot, kRestrict0, kRestrict1, kExists, kForall };

  NodeId quantify(NodeId f, Level level, bool existential);
  NodeId restrict_rec(NodeId f, Level level, bool value);

  bool cache_lookup(std::uint32_t tag, NodeId a, NodeId b, std::uint32_t c, NodeId& result) const;
  void cache_store(std::uint32_t tag, NodeId a, NodeId b, std::uint32_t c, NodeId result);
  std::size_t cache_slot(std::uint32_t tag, NodeId a, NodeId b, std::uint32_t c) const;

  void grow_unique();
  void tick();

  template <typename Emit>
  void walk_paths(NodeId f, std::vector<std::pair<Level, bool>>& path, Emit& emit) const {
    if (f == kFalse) return;
    if (f == kTrue) {
      emit(path);
      return;
    }
    const Node& n = nodes_[f];
    path.emplace_back(n.level, false);
    walk_paths(n.low, path, emit);
    path.back().second = true;
    walk_paths(n.high, path, emit);
    path.pop_back();
  }

  Limits limits_;
  std::vector<Node> nodes_;
  std::vector<NodeId> unique_;  // open addressing, 0 = empty
  std::size_t unique_mask_ = 0;
  std::vector<CacheEntry> cache_;
  std::size_t cache_mask_ = 0;
  std::uint64_t ticks_ = 0;
};

}  // namespace quip::bdd
