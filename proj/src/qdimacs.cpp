#include <map>
#include <sstream>
#include <unordered_map>

#include "quip/errors.hpp"
#include "quip/qbf.hpp"
#include "quip/syntax.hpp"

namespace quip {

namespace {

struct Block {
  bool existential;
  std::vector<int> vars;
};

struct Prenex {
  std::vector<Block> prefix;
  Formula matrix;  // quantifier-free; variables are named by binder id
};

void append_block(std::vector<Block>& out, const Block& b) {
  if (b.vars.empty()) return;
  if (!out.empty() && out.back().existential == b.existential) {
    out.back().vars.insert(out.back().vars.end(), b.vars.begin(), b.vars.end());
  } else {
    out.push_back(b);
  }
}

// Any interleaving that keeps each side's block order is sound because the
// two sides bind disjoint variables; same-kind heads are merged to keep the
// number of alternations low.
std::vector<Block> merge_prefixes(const std::vector<Block>& a, const std::vector<Block>& b) {
  std::vector<Block> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].existential == b[j].existential) {
      append_block(out, a[i++]);
      append_block(out, b[j++]);
    } else if (!out.empty() && out.back().existential == b[j].existential) {
      append_block(out, b[j++]);
    } else {
      append_block(out, a[i++]);
    }
  }
  while (i < a.size()) append_block(out, a[i++]);
  while (j < b.size()) append_block(out, b[j++]);
  return out;
}

class Prenexer {
 public:
  int binder_count() const { return next_id_ - 1; }

  // Prenex form of `negated ? !f : f` with all bound variables renamed apart.
  Prenex lift(const Formula& f, bool negated) {
    switch (f.op()) {
      case Op::Var: {
        auto it = scope_.find(f.name());
        if (it == scope_.end() || it->second.empty())
          throw Error("QDIMACS export needs a closed QBF; '" + f.name() + "' is free");
        Formula v = Formula::var(std::to_string(it->second.back()));
        return {{}, negated ? Formula::negate(v) : v};
      }
      case Op::True:
        return {{}, negated ? Formula::bottom() : Formula::top()};
      case Op::False:
        return {{}, negated ? Formula::top() : Formula::bottom()};
      case Op::Not:
        return lift(f.lhs(), !negated);
      case Op::And:
        return combine(lift(f.lhs(), negated), lift(f.rhs(), negated), negated ? Op::Or : Op::And);
      case Op::Or:
        return combine(lift(f.lhs(), negated), lift(f.rhs(), negated), negated ? Op::And : Op::Or);
      case Op::Impl:
        return combine(lift(f.lhs(), !negated), lift(f.rhs(), negated), negated ? Op::And : Op::Or);
      case Op::Iff: {
        if (!has_quantifier(f.lhs()) && !has_quantifier(f.rhs())) {
          Prenex a = lift(f.lhs(), false), b = lift(f.rhs(), false);
          Formula m = Formula::iff(a.matrix, b.matrix);
          return {{}, negated ? Formula::negate(m) : m};
        }
        // Quantifiers below an equivalence occur with both polarities, so
        // the two directions are lifted separately with fresh binders each.
        Formula both = Formula::conj(Formula::impl(f.lhs(), f.rhs()), Formula::impl(f.rhs(), f.lhs()));
        return lift(both, negated);
      }
      case Op::Exists:
      case Op::Forall: {
        Block block{(f.op() == Op::Exists) != negated, {}};
        for (const auto& v : f.bound()) {
          int id = next_id_++;
          scope_[v].push_back(id);
          block.vars.push_back(id);
        }
        Prenex body = lift(f.lhs(), negated);
        for (const auto& v : f.bound()) scope_[v].pop_back();
        std::vector<Block> prefix;
        append_block(prefix, block);
        for (const auto& b : body.prefix) append_block(prefix, b);
        return {std::move(prefix), body.matrix};
      }
      case Op::Modal:
        throw Error("modal atoms cannot be exported to QDIMACS");
    }
    return {};
  }

 private:
  Prenex combine(Prenex a, Prenex b, Op op) {
    Formula m = op == Op::And ? Formula::conj(a.matrix, b.matrix) : Formula::disj(a.matrix, b.matrix);
    return {merge_prefixes(a.prefix, b.prefix), m};
  }

  std::unordered_map<std::string, std::vector<int>> scope_;
  int next_id_ = 1;
};

// Removes TRUE/FALSE unless the whole formula is constant.
Formula fold(const Formula& f) {
  switch (f.op()) {
    case Op::Not: {
      Formula a = fold(f.lhs());
      if (a.op() == Op::True) return Formula::bottom();
      if (a.op() == Op::False) return Formula::top();
      return Formula::negate(a);
    }
    case Op::And:
    case Op::Or:
    case Op::Impl:
    case Op::Iff: {
      Formula a = fold(f.lhs()), b = fold(f.rhs());
      bool ac = a.op() == Op::True || a.op() == Op::False;
      bool bc = b.op() == Op::True || b.op() == Op::False;
      if (f.op() == Op::Impl) {
        a = ac ? (a.op() == Op::True ? Formula::bottom() : Formula::top()) : Formula::negate(a);
        return fold(Formula::disj(a, b));
      }
      if (!ac && !bc) {
        switch (f.op()) {
          case Op::And: return Formula::conj(a, b);
          case Op::Or: return Formula::disj(a, b);
          default: return Formula::iff(a, b);
        }
      }
      if (bc) std::swap(a, b);  // a is now constant
      bool av = a.op() == Op::True;
      switch (f.op()) {
        case Op::And: return av ? b : Formula::bottom();
        case Op::Or: return av ? Formula::top() : b;
        default: return av ? b : fold(Formula::negate(b));
      }
    }
    default:
      return f;
  }
}

class Tseitin {
 public:
  Tseitin(const std::map<int, int>& numbering, int first_aux) : numbering_(numbering), next_(first_aux) {}

  int encode(const Formula& f) {
    if (f.op() == Op::Var) return numbering_.at(std::stoi(f.name()));
    if (f.op() == Op::Not) return -encode(f.lhs());
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    int a = encode(f.lhs());
    int b = encode(f.rhs());
    int g = next_++;
    aux_.push_back(g);
    switch (f.op()) {
      case Op::And:
        clauses_.push_back({-g, a});
        clauses_.push_back({-g, b});
        clauses_.push_back({g, -a, -b});
        break;
      case Op::Or:
        clauses_.push_back({-g, a, b});
        clauses_.push_back({g, -a});
        clauses_.push_back({g, -b});
        break;
      case Op::Iff:
        clauses_.push_back({-g, -a, b});
        clauses_.push_back({-g, a, -b});
        clauses_.push_back({g, a, b});
        clauses_.push_back({g, -a, -b});
        break;
      default:
        throw Error("unexpected connective in QDIMACS matrix");
    }
    memo_.emplace(f.id(), g);
    return g;
  }

  std::vector<std::vector<int>>& clauses() { return clauses_; }
  const std::vector<int>& aux() const { return aux_; }
  int max_var() const { return next_ - 1; }

 private:
  const std::map<int, int>& numbering_;
  int next_;
  std::unordered_map<const FormulaNode*, int> memo_;
  std::vector<int> aux_;
  std::vector<std::vector<int>> clauses_;
};

}  // namespace

std::string export_qdimacs(const Qbf& q) {
  Prenexer p;
  Prenex pre = p.lift(q, false);

  std::map<int, int> numbering;  // binder id -> QDIMACS variable
  int n = 0;
  for (auto& block : pre.prefix)
    for (int& v : block.vars) {
      numbering[v] = ++n;
      v = n;
    }

  Formula matrix = fold(pre.matrix);
  Tseitin ts(numbering, n + 1);
  if (matrix.op() == Op::False) {
    ts.clauses().push_back({});
  } else if (matrix.op() != Op::True) {
    int root = ts.encode(matrix);
    ts.clauses().push_back({root});
  }
  if (!ts.aux().empty()) append_block(pre.prefix, Block{true, ts.aux()});

  std::ostringstream out;
  out << "p cnf " << std::max(n, ts.max_var()) << ' ' << ts.clauses().size() << '\n';
  for (const auto& block : pre.prefix) {
    out << (block.existential ? 'e' : 'a');
    for (int v : block.vars) out << ' ' << v;
    out << " 0\n";
  }
  for (const auto& clause : ts.clauses()) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace quip
