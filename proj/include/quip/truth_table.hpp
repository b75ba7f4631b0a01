#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "quip/formula.hpp"

namespace quip::tt {

enum class Exec { Serial, Parallel };

// Largest vocabulary the enumerators accept.
inline constexpr std::size_t kMaxVariables = 30;

// An objective formula compiled to a postfix program that evaluates 64
// assignments at once, one per bit lane. Variable i of the vocabulary is bit
// i of the assignment index.
class Program {
 public:
  Program(const Formula& f, const std::vector<std::string>& vocabulary);

  // Lane mask of satisfying assignments among indices [64*block, 64*block+63].
  std::uint64_t eval_block(std::uint64_t block) const;

  std::size_t num_vars() const { return num_vars_; }
  std::uint64_t num_blocks() const;
  // Lanes that correspond to real assignments in a block (all 64 unless the
  // vocabulary has fewer than 6 variables).
  std::uint64_t lane_mask() const;

 private:
  enum class Code : std::uint8_t { Var, True, False, Not, And, Or, Impl, Iff };
  struct Instr {
    Code code;
    std::uint32_t var;
  };
  void emit(const Formula& f, const std::vector<std::string>& vocabulary);

  std::vector<Instr> code_;
  std::size_t num_vars_;
  std::size_t max_stack_ = 0;
};

// Kernels over all 2^n assignments of a vocabulary.
std::uint64_t count_models(const Program& p, Exec exec = Exec::Parallel);
bool any_model(const Program& p, Exec exec = Exec::Parallel);

// Convenience wrappers; the vocabulary is the variables of the inputs.
bool satisfiable(const Formula& f, Exec exec = Exec::Parallel);
bool entails(const Theory& t, const Formula& phi, Exec exec = Exec::Parallel);
bool equivalent(const Formula& a, const Formula& b, Exec exec = Exec::Parallel);

// All models over `vocabulary`, in increasing assignment-index order.
std::vector<Assignment> models(const Formula& f, const std::vector<std::string>& vocabulary);

// Scalar reference: evaluates `f` assignment by assignment with quip::eval.
std::uint64_t count_models_reference(const Formula& f, const std::vector<std::string>& vocabulary);
bool entails_reference(const Theory& t, const Formula& phi);

}  // namespace quip::tt
