#include "quip/frontend.hpp"

#include <algorithm>
#include <set>

#include "quip/errors.hpp"
#include "quip/interpreter.hpp"
#include "quip/syntax.hpp"

namespace quip {

namespace {

const std::set<std::string> kFlags = {"DETAIL", "BRAVE", "SKEPTICAL", "MINIMAL", "INCONSISTENT"};

std::string ident(TokenStream& in, const char* what) {
  const Token& t = in.expect(Tok::Ident, what);
  if (is_reserved_word(t.text)) in.fail("reserved word '" + t.text + "' cannot be used as " + what);
  return t.text;
}

// A lone identifier directly followed by ';' or ')' is a reference.
TheorySlot parse_theory_slot(TokenStream& in) {
  TheorySlot slot;
  const Token& t = in.peek();
  bool lone = t.kind == Tok::Ident && (in.peek(1).kind == Tok::Semi || in.peek(1).kind == Tok::RParen);
  if (lone && !is_reserved_word(t.text)) {
    slot.ref = in.next().text;
    return slot;
  }
  slot.formula = parse_formula(in);
  return slot;
}

std::vector<Default> parse_defaults(TokenStream& in) {
  std::vector<Default> out;
  in.expect(Tok::LBrace, "'{' opening a default set");
  if (in.accept(Tok::RBrace)) return out;
  do {
    Default d;
    if (!in.at(Tok::Colon)) d.prerequisite = parse_formula(in);
    in.expect(Tok::Colon, "':' after the prerequisite");
    d.justification = parse_formula(in);
    in.expect(Tok::Pipe, "'|' between justification and consequent");
    d.consequent = parse_formula(in);
    out.push_back(std::move(d));
  } while (in.accept(Tok::Comma));
  in.expect(Tok::RBrace, "'}' closing a default set");
  return out;
}

std::vector<std::string> parse_atom_list(TokenStream& in) {
  std::vector<std::string> out;
  in.expect(Tok::LBrace, "'{' opening an atom set");
  if (in.accept(Tok::RBrace)) return out;
  do {
    std::string a = ident(in, "an atom");
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  } while (in.accept(Tok::Comma));
  in.expect(Tok::RBrace, "'}' closing an atom set");
  return out;
}

LogicProgram parse_program(TokenStream& in) {
  LogicProgram lp;
  in.expect(Tok::LBrace, "'{' opening a program");
  while (!in.accept(Tok::RBrace)) {
    Rule r;
    if (!in.at(Tok::RuleArrow)) {
      r.head.push_back(ident(in, "a head atom"));
      while (in.at_ident("v")) {
        in.next();
        r.head.push_back(ident(in, "a head atom"));
      }
    }
    if (in.accept(Tok::RuleArrow) && !in.at(Tok::Dot)) {
      do {
        if (in.at_ident("not")) {
          in.next();
          r.neg.push_back(ident(in, "an atom"));
        } else {
          r.pos.push_back(ident(in, "an atom"));
        }
      } while (in.accept(Tok::Comma));
    }
    in.expect(Tok::Dot, "'.' ending a rule");
    lp.rules.push_back(std::move(r));
  }
  return lp;
}

DefaultsSlot parse_defaults_slot(TokenStream& in) {
  DefaultsSlot slot;
  if (in.at(Tok::Keyword) && in.peek().text == "@D") {
    in.next();
    slot.ref = ident(in, "a default set name");
  } else {
    slot.defaults = parse_defaults(in);
  }
  return slot;
}

ProgramSlot parse_program_slot(TokenStream& in) {
  ProgramSlot slot;
  if (in.at(Tok::Keyword) && in.peek().text == "@P") {
    in.next();
    slot.ref = ident(in, "a program name");
  } else {
    slot.program = parse_program(in);
  }
  return slot;
}

AtomsSlot parse_atoms_slot(TokenStream& in) {
  AtomsSlot slot;
  if (in.at(Tok::Keyword) && in.peek().text == "@A") {
    in.next();
    slot.ref = ident(in, "an atom set name");
  } else {
    slot.atoms = parse_atom_list(in);
  }
  return slot;
}

std::optional<Formula> parse_query(TokenStream& in) {
  if (!in.accept(Tok::Entails)) return std::nullopt;
  return parse_formula(in);
}

Item parse_item(TokenStream& in) {
  const Token& t = in.peek();
  if (t.kind == Tok::Ident) {
    TheoryDef def;
    def.name = ident(in, "a theory name");
    in.expect(Tok::Define, "':=' in a definition");
    def.body = parse_formula(in);
    return def;
  }
  if (t.kind != Tok::Keyword) in.fail("expected a definition or a command, found " + describe(t));
  std::string kw = in.next().text;

  if (kw == "@SET" || kw == "@UNSET") {
    FlagCommand f{kw == "@SET", in.expect(Tok::Ident, "a flag name").text};
    if (!kFlags.count(f.flag)) in.fail("unknown flag '" + f.flag + "'");
    return f;
  }
  if (kw == "@D" || kw == "@P" || kw == "@A") {
    std::string name = ident(in, "a name");
    in.expect(Tok::Define, "':=' in a definition");
    if (kw == "@D") return DefaultsDef{name, parse_defaults(in)};
    if (kw == "@P") return ProgramDef{name, parse_program(in)};
    return AtomSetDef{name, parse_atom_list(in)};
  }
  if (kw == "@DL") {
    DlCommand c;
    in.expect(Tok::LParen, "'('");
    c.theory = parse_theory_slot(in);
    in.expect(Tok::Semi, "';' before the defaults");
    c.defaults = parse_defaults_slot(in);
    in.expect(Tok::RParen, "')'");
    c.query = parse_query(in);
    return c;
  }
  if (kw == "@LP") {
    LpCommand c;
    in.expect(Tok::LParen, "'('");
    c.program = parse_program_slot(in);
    in.expect(Tok::RParen, "')'");
    c.query = parse_query(in);
    return c;
  }
  if (kw == "@AEL") {
    AelCommand c;
    in.expect(Tok::LParen, "'('");
    c.theory = parse_theory_slot(in);
    in.expect(Tok::RParen, "')'");
    c.query = parse_query(in);
    return c;
  }
  if (kw == "@ABD?" || kw == "@ABD+" || kw == "@ABD!") {
    AbdCommand c;
    c.mode = kw == "@ABD?" ? AbdMode::Exists : kw == "@ABD+" ? AbdMode::Relevance : AbdMode::Necessity;
    if (c.mode != AbdMode::Exists) c.hypothesis = ident(in, "a hypothesis");
    in.expect(Tok::LParen, "'('");
    c.theory = parse_theory_slot(in);
    in.expect(Tok::Semi, "';' before the hypotheses");
    c.hypotheses = parse_atoms_slot(in);
    in.expect(Tok::Semi, "';' before the observation");
    c.observation = ident(in, "an observation atom");
    in.expect(Tok::RParen, "')'");
    return c;
  }
  if (kw == "@CIRC") {
    CircCommand c;
    in.expect(Tok::LParen, "'('");
    c.theory = parse_theory_slot(in);
    in.expect(Tok::Semi, "';' before the minimized atoms");
    c.minimized = parse_atoms_slot(in);
    in.expect(Tok::Semi, "';' before the fixed atoms");
    c.fixed = parse_atoms_slot(in);
    if (in.accept(Tok::Semi)) c.varying = parse_atoms_slot(in);
    in.expect(Tok::RParen, "')'");
    c.query = parse_query(in);
    return c;
  }
  in.fail("unknown command '" + kw + "'");
}

// Name resolution in file order, without evaluating anything.
class ReferenceCheck {
 public:
  void operator()(const Statement& s) {
    line_ = s.line;
    std::visit(*this, s.item);
  }
  void operator()(const FlagCommand&) {}
  void operator()(const TheoryDef& d) { define(theories_, d.name, "theory"); }
  void operator()(const DefaultsDef& d) { define(defaults_, d.name, "default set"); }
  void operator()(const ProgramDef& d) { define(programs_, d.name, "program"); }
  void operator()(const AtomSetDef& d) { define(atoms_, d.name, "atom set"); }
  void operator()(const DlCommand& c) {
    use(theories_, c.theory.ref, "theory");
    use(defaults_, c.defaults.ref, "default set");
  }
  void operator()(const LpCommand& c) { use(programs_, c.program.ref, "program"); }
  void operator()(const AelCommand& c) { use(theories_, c.theory.ref, "theory"); }
  void operator()(const AbdCommand& c) {
    use(theories_, c.theory.ref, "theory");
    use(atoms_, c.hypotheses.ref, "atom set");
  }
  void operator()(const CircCommand& c) {
    use(theories_, c.theory.ref, "theory");
    use(atoms_, c.minimized.ref, "atom set");
    use(atoms_, c.fixed.ref, "atom set");
    if (c.varying) use(atoms_, c.varying->ref, "atom set");
  }

 private:
  void define(std::set<std::string>& ns, const std::string& name, const char* what) {
    if (!ns.insert(name).second)
      throw ReferenceError("line " + std::to_string(line_) + ": " + what + " '" + name + "' is already defined");
  }
  void use(const std::set<std::string>& ns, const std::optional<std::string>& ref, const char* what) {
    if (ref && !ns.count(*ref))
      throw ReferenceError("line " + std::to_string(line_) + ": undefined " + what + " '" + *ref + "'");
  }

  std::size_t line_ = 0;
  std::set<std::string> theories_, defaults_, programs_, atoms_;
};

std::string print_default(const Default& d) {
  return to_string(d.prerequisite) + " : " + to_string(d.justification) + " | " + to_string(d.consequent);
}

std::string print_defaults(const std::vector<Default>& ds) {
  std::string out = "{ ";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) out += ", ";
    out += print_default(ds[i]);
  }
  return out + " }";
}

std::string print_atoms(const std::vector<std::string>& as) {
  std::string out = "{";
  for (std::size_t i = 0; i < as.size(); ++i) out += (i ? ", " : "") + as[i];
  return out + "}";
}

std::string print_program(const LogicProgram& lp) {
  std::string out = "{";
  for (const auto& r : lp.rules) {
    out += " ";
    for (std::size_t i = 0; i < r.head.size(); ++i) out += (i ? " v " : "") + r.head[i];
    if (!r.pos.empty() || !r.neg.empty()) {
      out += r.head.empty() ? ":- " : " :- ";
      bool first = true;
      for (const auto& a : r.pos) {
        out += (first ? "" : ", ") + a;
        first = false;
      }
      for (const auto& a : r.neg) {
        out += (first ? "not " : ", not ") + a;
        first = false;
      }
    } else if (r.head.empty()) {
      out += ":-";
    }
    out += ".";
  }
  return out + " }";
}

std::string print_slot(const TheorySlot& s) { return s.ref ? *s.ref : to_string(s.formula); }
std::string print_slot(const DefaultsSlot& s) { return s.ref ? "@D " + *s.ref : print_defaults(s.defaults); }
std::string print_slot(const ProgramSlot& s) { return s.ref ? "@P " + *s.ref : print_program(s.program); }
std::string print_slot(const AtomsSlot& s) { return s.ref ? "@A " + *s.ref : print_atoms(s.atoms); }

std::string print_query(const std::optional<Formula>& q) { return q ? " |= " + to_string(*q) : ""; }

struct Printer {
  std::string operator()(const FlagCommand& f) const { return (f.set ? "@SET " : "@UNSET ") + f.flag; }
  std::string operator()(const TheoryDef& d) const { return d.name + " := " + to_string(d.body); }
  std::string operator()(const DefaultsDef& d) const { return "@D " + d.name + " := " + print_defaults(d.defaults); }
  std::string operator()(const ProgramDef& d) const { return "@P " + d.name + " := " + print_program(d.program); }
  std::string operator()(const AtomSetDef& d) const { return "@A " + d.name + " := " + print_atoms(d.atoms); }
  std::string operator()(const DlCommand& c) const {
    return "@DL ( " + print_slot(c.theory) + " ; " + print_slot(c.defaults) + " )" + print_query(c.query);
  }
  std::string operator()(const LpCommand& c) const {
    return "@LP ( " + print_slot(c.program) + " )" + print_query(c.query);
  }
  std::string operator()(const AelCommand& c) const {
    return "@AEL ( " + print_slot(c.theory) + " )" + print_query(c.query);
  }
  std::string operator()(const AbdCommand& c) const {
    std::string head = c.mode == AbdMode::Exists      ? "@ABD?"
                       : c.mode == AbdMode::Relevance ? "@ABD+ " + c.hypothesis
                                                      : "@ABD! " + c.hypothesis;
    return head + " ( " + print_slot(c.theory) + " ; " + print_slot(c.hypotheses) + " ; " + c.observation + " )";
  }
  std::string operator()(const CircCommand& c) const {
    std::string out = "@CIRC ( " + print_slot(c.theory) + " ; " + print_slot(c.minimized) + " ; " + print_slot(c.fixed);
    if (c.varying) out += " ; " + print_slot(*c.varying);
    return out + " )" + print_query(c.query);
  }
};

}  // namespace

std::vector<Statement> parse_input(std::string_view text) {
  TokenStream in(tokenize(text));
  std::vector<Statement> out;
  while (!in.at(Tok::End)) {
    std::size_t line = in.peek().line;
    out.push_back({parse_item(in), line});
  }
  ReferenceCheck check;
  for (const auto& s : out) check(s);
  return out;
}

std::string print_input(const std::vector<Statement>& statements) {
  std::string out;
  for (const auto& s : statements) out += std::visit(Printer{}, s.item) + "\n";
  return out;
}

// --- Session ---------------------------------------------------------------

Formula Session::expand(const Formula& f) const {
  if (theories_.empty()) return f;
  return substitute(f, theories_);
}

Theory Session::theory(const TheorySlot& slot) const {
  if (slot.ref) {
    auto it = theories_.find(*slot.ref);
    if (it == theories_.end()) throw ReferenceError("undefined theory '" + *slot.ref + "'");
    return Theory::from_formula(it->second);
  }
  return Theory::from_formula(expand(slot.formula));
}

std::vector<Default> Session::defaults(const DefaultsSlot& slot) const {
  std::vector<Default> ds;
  if (slot.ref) {
    auto it = defaults_.find(*slot.ref);
    if (it == defaults_.end()) throw ReferenceError("undefined default set '" + *slot.ref + "'");
    ds = it->second;
  } else {
    ds = slot.defaults;
  }
  for (auto& d : ds) {
    d.prerequisite = expand(d.prerequisite);
    d.justification = expand(d.justification);
    d.consequent = expand(d.consequent);
  }
  return ds;
}

LogicProgram Session::program(const ProgramSlot& slot) const {
  if (!slot.ref) return slot.program;
  auto it = programs_.find(*slot.ref);
  if (it == programs_.end()) throw ReferenceError("undefined program '" + *slot.ref + "'");
  return it->second;
}

std::vector<std::string> Session::atoms(const AtomsSlot& slot) const {
  if (!slot.ref) return slot.atoms;
  auto it = atom_sets_.find(*slot.ref);
  if (it == atom_sets_.end()) throw ReferenceError("undefined atom set '" + *slot.ref + "'");
  return it->second;
}

Task Session::query_task(const std::optional<Formula>& query) const {
  Task t;
  if (query) {
    t = flags_.reasoning == Reasoning::Brave ? Task::brave(expand(*query)) : Task::skeptical(expand(*query));
  }
  t.detail = flags_.detail;
  t.minimal = flags_.minimal;
  t.consistent_only = !flags_.inconsistent;
  return t;
}

EngineConfig Session::engine_config() const {
  EngineConfig c;
  c.node_budget = options_.node_budget;
  c.timeout = options_.timeout;
  return c;
}

namespace {

ExecResult report(const Outcome& o, bool detail) {
  ExecResult r;
  r.detail = detail;
  r.answer = o.answer;
  if (!detail) {
    r.lines.push_back(render_answer(o.answer));
    return r;
  }
  for (const auto& w : o.witnesses) r.lines.push_back(render(w));
  std::size_t n = o.witnesses.size();
  r.notes.push_back("-- " + std::to_string(n) + (n == 1 ? " witness" : " witnesses"));
  return r;
}

template <class Map, class Value>
void define(Map& m, const std::string& name, Value v, const char* what) {
  if (!m.emplace(name, std::move(v)).second) throw ReferenceError(std::string(what) + " '" + name + "' is already defined");
}

}  // namespace

ExecResult Session::execute(const Statement& s) {
  try {
    return std::visit(
        [&](const auto& item) -> ExecResult {
          using T = std::decay_t<decltype(item)>;
          if constexpr (std::is_same_v<T, FlagCommand>) {
            if (item.flag == "DETAIL") flags_.detail = item.set;
            else if (item.flag == "MINIMAL") flags_.minimal = item.set;
            else if (item.flag == "INCONSISTENT") flags_.inconsistent = item.set;
            else if (item.flag == "BRAVE") flags_.reasoning = item.set ? Reasoning::Brave : Reasoning::Skeptical;
            else if (item.flag == "SKEPTICAL") flags_.reasoning = item.set ? Reasoning::Skeptical : Reasoning::Brave;
            else throw ReferenceError("unknown flag '" + item.flag + "'");
            return {};
          } else if constexpr (std::is_same_v<T, TheoryDef>) {
            define(theories_, item.name, expand(item.body), "theory");
            return {};
          } else if constexpr (std::is_same_v<T, DefaultsDef>) {
            define(defaults_, item.name, item.defaults, "default set");
            return {};
          } else if constexpr (std::is_same_v<T, ProgramDef>) {
            define(programs_, item.name, item.program, "program");
            return {};
          } else if constexpr (std::is_same_v<T, AtomSetDef>) {
            define(atom_sets_, item.name, item.atoms, "atom set");
            return {};
          } else {
            return run(item);
          }
        },
        s.item);
  } catch (const SyntaxError&) {
    throw;
  } catch (const ReferenceError& e) {
    throw ReferenceError("line " + std::to_string(s.line) + ": " + e.what());
  }
}

ExecResult Session::run(const DlCommand& c) {
  DefaultTheory dt{theory(c.theory), defaults(c.defaults)};
  Task task = query_task(c.query);
  if (options_.encoding == DlEncoding::Mt) return report(solve(reduce_dl_mt(dt, task), engine_config()), task.detail);
  if (options_.encoding == DlEncoding::FullSet)
    return report(solve(reduce_dl_fullset(dt, task), engine_config()), task.detail);
  Outcome a = solve(reduce_dl_mt(dt, task), engine_config());
  Outcome b = solve(reduce_dl_fullset(dt, task), engine_config());
  if (a.answer != b.answer || a.witnesses != b.witnesses)
    throw ConsistencyError("the generating-set and full-set encodings disagree");
  return report(a, task.detail);
}

ExecResult Session::run(const LpCommand& c) {
  Task task = query_task(c.query);
  return report(solve(reduce_dlp(program(c.program), task), engine_config()), task.detail);
}

ExecResult Session::run(const AelCommand& c) {
  Task task = query_task(c.query);
  return report(solve(reduce_ael(AelTheory{theory(c.theory)}, task), engine_config()), task.detail);
}

ExecResult Session::run(const AbdCommand& c) {
  AbductionProblem ap{theory(c.theory), atoms(c.hypotheses), c.observation};
  Task task = query_task(std::nullopt);
  task.kind = c.mode == AbdMode::Exists      ? TaskKind::AbdExists
              : c.mode == AbdMode::Relevance ? TaskKind::AbdRelevance
                                             : TaskKind::AbdNecessity;
  task.hypothesis = c.hypothesis;
  ExecResult r = report(solve(reduce_abd(ap, task), engine_config()), task.detail);
  if (c.mode == AbdMode::Necessity && *r.answer) {
    Task exists = task;
    exists.kind = TaskKind::AbdExists;
    exists.detail = false;
    if (!solve(reduce_abd(ap, exists), engine_config()).answer)
      r.notes.push_back("-- vacuous: no explanation exists");
  }
  return r;
}

ExecResult Session::run(const CircCommand& c) {
  CircPolicy policy{theory(c.theory), atoms(c.minimized), atoms(c.fixed), {}};
  std::optional<Formula> query;
  if (c.query) query = expand(*c.query);
  if (c.varying) {
    policy.varying = atoms(*c.varying);
  } else {
    std::vector<std::string> rest = variables(policy.theory);
    if (query)
      for (const auto& v : variables(*query))
        if (std::find(rest.begin(), rest.end(), v) == rest.end()) rest.push_back(v);
    for (const auto& v : rest)
      if (std::find(policy.minimized.begin(), policy.minimized.end(), v) == policy.minimized.end() &&
          std::find(policy.fixed.begin(), policy.fixed.end(), v) == policy.fixed.end())
        policy.varying.push_back(v);
  }
  Task task;
  task.detail = flags_.detail;
  if (query) {
    task.kind = TaskKind::CircEntails;
    task.query = query;
  }
  return report(solve(reduce_circ(policy, task), engine_config()), task.detail);
}

}  // namespace quip
