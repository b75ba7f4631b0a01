#include "quip/truth_table.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "quip/errors.hpp"

namespace quip::tt {

namespace {

constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Blocks below this count are not worth a parallel region.
constexpr std::uint64_t kParallelThreshold = 256;

}  // namespace

Program::Program(const Formula& f, const std::vector<std::string>& vocabulary) : num_vars_(vocabulary.size()) {
  if (num_vars_ > kMaxVariables)
    throw BoundError("truth table over " + std::to_string(num_vars_) + " variables exceeds the limit of " +
                     std::to_string(kMaxVariables));
  emit(f, vocabulary);
  std::size_t depth = 0;
  for (const auto& ins : code_) {
    switch (ins.code) {
      case Code::Var:
      case Code::True:
      case Code::False:
        max_stack_ = std::max(max_stack_, ++depth);
        break;
      case Code::Not:
        break;
      default:
        --depth;
    }
  }
}

void Program::emit(const Formula& f, const std::vector<std::string>& vocabulary) {
  switch (f.op()) {
    case Op::Var: {
      auto it = std::find(vocabulary.begin(), vocabulary.end(), f.name());
      if (it == vocabulary.end()) throw Error("variable '" + f.name() + "' is not in the vocabulary");
      code_.push_back({Code::Var, static_cast<std::uint32_t>(it - vocabulary.begin())});
      return;
    }
    case Op::True:
      code_.push_back({Code::True, 0});
      return;
    case Op::False:
      code_.push_back({Code::False, 0});
      return;
    case Op::Not:
      emit(f.lhs(), vocabulary);
      code_.push_back({Code::Not, 0});
      return;
    case Op::And:
    case Op::Or:
    case Op::Impl:
    case Op::Iff: {
      emit(f.lhs(), vocabulary);
      emit(f.rhs(), vocabulary);
      Code c = f.op() == Op::And ? Code::And : f.op() == Op::Or ? Code::Or : f.op() == Op::Impl ? Code::Impl : Code::Iff;
      code_.push_back({c, 0});
      return;
    }
    default:
      throw Error("truth tables need an objective formula");
  }
}

std::uint64_t Program::num_blocks() const { return num_vars_ <= 6 ? 1 : (std::uint64_t{1} << (num_vars_ - 6)); }

std::uint64_t Program::lane_mask() const {
  return num_vars_ >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (std::uint64_t{1} << num_vars_)) - 1);
}

std::uint64_t Program::eval_block(std::uint64_t block) const {
  std::uint64_t stack_storage[64];
  std::vector<std::uint64_t> heap;
  std::uint64_t* stack = stack_storage;
  if (max_stack_ > 64) {
    heap.resize(max_stack_);
    stack = heap.data();
  }
  std::size_t sp = 0;
  for (const auto& ins : code_) {
    switch (ins.code) {
      case Code::Var:
        stack[sp++] = ins.var < 6 ? kLanePattern[ins.var] : ((block >> (ins.var - 6)) & 1 ? ~std::uint64_t{0} : 0);
        break;
      case Code::True:
        stack[sp++] = ~std::uint64_t{0};
        break;
      case Code::False:
        stack[sp++] = 0;
        break;
      case Code::Not:
        stack[sp - 1] = ~stack[sp - 1];
        break;
      case Code::And:
        --sp;
        stack[sp - 1] &= stack[sp];
        break;
      case Code::Or:
        --sp;
        stack[sp - 1] |= stack[sp];
        break;
      case Code::Impl:
        --sp;
        stack[sp - 1] = ~stack[sp - 1] | stack[sp];
        break;
      case Code::Iff:
        --sp;
        stack[sp - 1] = ~(stack[sp - 1] ^ stack[sp]);
        break;
    }
  }
  return stack[0] & lane_mask();
}

std::uint64_t count_models(const Program& p, Exec exec) {
  const std::int64_t blocks = static_cast<std::int64_t>(p.num_blocks());
  std::uint64_t total = 0;
  if (exec == Exec::Parallel && static_cast<std::uint64_t>(blocks) >= kParallelThreshold) {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) total += __builtin_popcountll(p.eval_block(b));
  } else {
    for (std::int64_t b = 0; b < blocks; ++b) total += __builtin_popcountll(p.eval_block(b));
  }
  return total;
}

bool any_model(const Program& p, Exec exec) {
  const std::int64_t blocks = static_cast<std::int64_t>(p.num_blocks());
  if (exec == Exec::Parallel && static_cast<std::uint64_t>(blocks) >= kParallelThreshold) {
    std::atomic<bool> found{false};
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      if (found.load(std::memory_order_relaxed)) continue;
      if (p.eval_block(b)) found.store(true, std::memory_order_relaxed);
    }
    return found.load();
  }
  for (std::int64_t b = 0; b < blocks; ++b)
    if (p.eval_block(b)) return true;
  return false;
}

bool satisfiable(const Formula& f, Exec exec) { return any_model(Program(f, variables(f)), exec); }

bool entails(const Theory& t, const Formula& phi, Exec exec) {
  return !satisfiable(Formula::conj(t.conjunction(), Formula::negate(phi)), exec);
}

bool equivalent(const Formula& a, const Formula& b, Exec exec) {
  return !satisfiable(Formula::negate(Formula::iff(a, b)), exec);
}

std::vector<Assignment> models(const Formula& f, const std::vector<std::string>& vocabulary) {
  Program p(f, vocabulary);
  std::vector<Assignment> out;
  for (std::uint64_t b = 0; b < p.num_blocks(); ++b) {
    std::uint64_t lanes = p.eval_block(b);
    while (lanes) {
      int lane = __builtin_ctzll(lanes);
      lanes &= lanes - 1;
      std::uint64_t index = (b << 6) | static_cast<std::uint64_t>(lane);
      Assignment a;
      for (std::size_t i = 0; i < vocabulary.size(); ++i) a[vocabulary[i]] = (index >> i) & 1;
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::uint64_t count_models_reference(const Formula& f, const std::vector<std::string>& vocabulary) {
  if (vocabulary.size() > kMaxVariables) throw BoundError("vocabulary too large for the reference enumerator");
  std::uint64_t count = 0;
  Assignment a;
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << vocabulary.size()); ++index) {
    for (std::size_t i = 0; i < vocabulary.size(); ++i) a[vocabulary[i]] = (index >> i) & 1;
    if (eval(f, a)) ++count;
  }
  return count;
}

bool entails_reference(const Theory& t, const Formula& phi) {
  Formula counter = Formula::conj(t.conjunction(), Formula::negate(phi));
  return count_models_reference(counter, variables(counter)) == 0;
}

}  // namespace quip::tt
