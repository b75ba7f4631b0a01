#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quip/formalisms.hpp"
#include "quip/reductions.hpp"

namespace quip {

// --- input file AST -------------------------------------------------------

// @SET / @UNSET with one of DETAIL, BRAVE, SKEPTICAL, MINIMAL, INCONSISTENT.
struct FlagCommand {
  bool set = true;
  std::string flag;
};

// name := formula
struct TheoryDef {
  std::string name;
  Formula body;
};

// @D name := { prereq : justification | consequent, ... }
struct DefaultsDef {
  std::string name;
  std::vector<Default> defaults;
};

// @P name := { a v b :- c, not d. ... }
struct ProgramDef {
  std::string name;
  LogicProgram program;
};

// @A name := { a, b }
struct AtomSetDef {
  std::string name;
  std::vector<std::string> atoms;
};

// A slot is either a reference to a definition or an inline value.
struct TheorySlot {
  std::optional<std::string> ref;  // a lone identifier
  Formula formula;
};
struct DefaultsSlot {
  std::optional<std::string> ref;
  std::vector<Default> defaults;
};
struct ProgramSlot {
  std::optional<std::string> ref;
  LogicProgram program;
};
struct AtomsSlot {
  std::optional<std::string> ref;
  std::vector<std::string> atoms;
};

struct DlCommand {
  TheorySlot theory;
  DefaultsSlot defaults;
  std::optional<Formula> query;
};

struct LpCommand {
  ProgramSlot program;
  std::optional<Formula> query;
};

struct AelCommand {
  TheorySlot theory;
  std::optional<Formula> query;
};

enum class AbdMode { Exists, Relevance, Necessity };

// @ABD? ( T ; H ; p )   @ABD+ h ( T ; H ; p )   @ABD! h ( T ; H ; p )
struct AbdCommand {
  AbdMode mode = AbdMode::Exists;
  std::string hypothesis;
  TheorySlot theory;
  AtomsSlot hypotheses;
  std::string observation;
};

// @CIRC ( T ; P ; Q [; Z] ) [|= phi]; without Z the remaining atoms vary.
struct CircCommand {
  TheorySlot theory;
  AtomsSlot minimized;
  AtomsSlot fixed;
  std::optional<AtomsSlot> varying;
  std::optional<Formula> query;
};

using Item = std::variant<FlagCommand, TheoryDef, DefaultsDef, ProgramDef, AtomSetDef, DlCommand, LpCommand, AelCommand,
                          AbdCommand, CircCommand>;

struct Statement {
  Item item;
  std::size_t line = 0;
};

// Parses a whole input file and checks that every reference names an
// earlier definition and that no name is defined twice. Throws SyntaxError
// or ReferenceError (the latter prefixed with the line).
std::vector<Statement> parse_input(std::string_view text);

// Renders statements back to input syntax, one per line.
std::string print_input(const std::vector<Statement>& statements);

// --- execution ------------------------------------------------------------

enum class DlEncoding { Mt, FullSet, Both };
enum class Reasoning { Brave, Skeptical };

struct SessionOptions {
  DlEncoding encoding = DlEncoding::Mt;
  std::size_t node_budget = 20'000'000;
  std::optional<std::chrono::milliseconds> timeout;
};

struct Flags {
  bool detail = false;
  Reasoning reasoning = Reasoning::Brave;
  bool minimal = false;
  bool inconsistent = false;  // admit inconsistent stable expansions
};

struct ExecResult {
  std::vector<std::string> lines;  // standard output
  std::vector<std::string> notes;  // standard error
  std::optional<bool> answer;      // set by queries
  bool detail = false;
};

// Definitions and mode flags accumulated while running an input file. Flags
// persist until changed.
class Session {
 public:
  explicit Session(SessionOptions options = {}) : options_(options) {}

  ExecResult execute(const Statement& s);

  const Flags& flags() const { return flags_; }

 private:
  Formula expand(const Formula& f) const;
  Theory theory(const TheorySlot& slot) const;
  std::vector<Default> defaults(const DefaultsSlot& slot) const;
  LogicProgram program(const ProgramSlot& slot) const;
  std::vector<std::string> atoms(const AtomsSlot& slot) const;
  Task query_task(const std::optional<Formula>& query) const;
  EngineConfig engine_config() const;

  ExecResult run(const DlCommand& c);
  ExecResult run(const LpCommand& c);
  ExecResult run(const AelCommand& c);
  ExecResult run(const AbdCommand& c);
  ExecResult run(const CircCommand& c);

  SessionOptions options_;
  Flags flags_;
  std::map<std::string, Formula> theories_;
  std::map<std::string, std::vector<Default>> defaults_;
  std::map<std::string, LogicProgram> programs_;
  std::map<std::string, std::vector<std::string>> atom_sets_;
};

}  // namespace quip
