#include "quip/syntax.hpp"

#include <cctype>

#include "quip/errors.hpp"

namespace quip {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), line, col});
    advance(len);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (c == '@') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 1) throw SyntaxError("expected a command word after '@'", line, col);
      if (j < text.size() && (text[j] == '?' || text[j] == '+' || text[j] == '!')) ++j;
      push(Tok::Keyword, j - i);
      continue;
    }
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    if (starts("<->")) {
      push(Tok::DArrow, 3);
    } else if (starts("->")) {
      push(Tok::Arrow, 2);
    } else if (starts(":=")) {
      push(Tok::Define, 2);
    } else if (starts(":-")) {
      push(Tok::RuleArrow, 2);
    } else if (starts("|=")) {
      push(Tok::Entails, 2);
    } else {
      switch (c) {
        case '(': push(Tok::LParen, 1); break;
        case ')': push(Tok::RParen, 1); break;
        case '{': push(Tok::LBrace, 1); break;
        case '}': push(Tok::RBrace, 1); break;
        case ',': push(Tok::Comma, 1); break;
        case ';': push(Tok::Semi, 1); break;
        case ':': push(Tok::Colon, 1); break;
        case '|': push(Tok::Pipe, 1); break;
        case '.': push(Tok::Dot, 1); break;
        case '!': push(Tok::Bang, 1); break;
        case '&': push(Tok::Amp, 1); break;
        default:
          throw SyntaxError(std::string("unknown token '") + c + "'", line, col);
      }
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* token_name(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Keyword: return "command";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Pipe: return "'|'";
    case Tok::Dot: return "'.'";
    case Tok::Define: return "':='";
    case Tok::Entails: return "'|='";
    case Tok::RuleArrow: return "':-'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t p = pos_ + ahead;
  return p < tokens_.size() ? tokens_[p] : tokens_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::accept(Tok kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(Tok kind, const char* what) {
  if (!at(kind)) fail(std::string("expected ") + what + ", found " + describe(peek()));
  return next();
}

void TokenStream::fail(const std::string& msg) const { throw SyntaxError(msg, peek().line, peek().column); }

std::string describe(const Token& t) {
  if (t.kind == Tok::Ident || t.kind == Tok::Keyword) return "'" + t.text + "'";
  return token_name(t.kind);
}

namespace {

Formula parse_iff(TokenStream& in);

Formula parse_primary(TokenStream& in) {
  const Token& t = in.peek();
  if (t.kind == Tok::LParen) {
    in.next();
    Formula f = parse_iff(in);
    in.expect(Tok::RParen, "')'");
    return f;
  }
  if (t.kind == Tok::Bang) {
    in.next();
    return Formula::negate(parse_primary(in));
  }
  if (t.kind != Tok::Ident) in.fail("expected a formula, found " + describe(t));
  if (t.text == "TRUE") {
    in.next();
    return Formula::top();
  }
  if (t.text == "FALSE") {
    in.next();
    return Formula::bottom();
  }
  if (t.text == "L" && in.peek(1).kind == Tok::LParen) {
    in.next();
    in.next();
    Formula inner = parse_iff(in);
    in.expect(Tok::RParen, "')' closing a modal atom");
    return Formula::modal(inner);
  }
  if (t.text == "exists" || t.text == "forall") {
    bool ex = t.text == "exists";
    in.next();
    std::vector<std::string> vars;
    while (in.at(Tok::Ident)) {
      if (is_reserved_word(in.peek().text)) in.fail("reserved word '" + in.peek().text + "' cannot be bound");
      vars.push_back(in.next().text);
    }
    if (vars.empty()) in.fail("expected quantified variables");
    in.expect(Tok::Colon, "':' after quantified variables");
    Formula body = parse_iff(in);
    return ex ? Formula::exists(std::move(vars), body) : Formula::forall(std::move(vars), body);
  }
  if (is_reserved_word(t.text)) in.fail("reserved word '" + t.text + "' used as a variable");
  return Formula::var(in.next().text);
}

Formula parse_and(TokenStream& in) {
  Formula f = parse_primary(in);
  while (in.accept(Tok::Amp)) f = Formula::conj(f, parse_primary(in));
  return f;
}

Formula parse_or(TokenStream& in) {
  Formula f = parse_and(in);
  while (in.at_ident("v")) {
    in.next();
    f = Formula::disj(f, parse_and(in));
  }
  return f;
}

Formula parse_impl(TokenStream& in) {
  Formula f = parse_or(in);
  if (in.accept(Tok::Arrow)) return Formula::impl(f, parse_impl(in));
  return f;
}

Formula parse_iff(TokenStream& in) {
  Formula f = parse_impl(in);
  while (in.accept(Tok::DArrow)) f = Formula::iff(f, parse_impl(in));
  return f;
}

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Exists:
    case Op::Forall: return 0;
    case Op::Iff: return 1;
    case Op::Impl: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not: return 5;
    default: return 6;
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  bool paren = precedence(f) < min_prec;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::Var: out += f.name(); break;
    case Op::True: out += "TRUE"; break;
    case Op::False: out += "FALSE"; break;
    case Op::Not:
      out += '!';
      print(f.lhs(), 5, out);
      break;
    case Op::Modal:
      out += "L(";
      print(f.lhs(), 0, out);
      out += ')';
      break;
    case Op::And:
      print(f.lhs(), 4, out);
      out += " & ";
      print(f.rhs(), 5, out);
      break;
    case Op::Or:
      print(f.lhs(), 3, out);
      out += " v ";
      print(f.rhs(), 4, out);
      break;
    case Op::Impl:
      print(f.lhs(), 3, out);
      out += " -> ";
      print(f.rhs(), 2, out);
      break;
    case Op::Iff:
      print(f.lhs(), 1, out);
      out += " <-> ";
      print(f.rhs(), 2, out);
      break;
    case Op::Exists:
    case Op::Forall:
      out += f.op() == Op::Exists ? "exists" : "forall";
      for (const auto& v : f.bound()) {
        out += ' ';
        out += v;
      }
      out += ": (";
      print(f.lhs(), 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

Formula parse_formula(TokenStream& in) { return parse_iff(in); }

Formula parse_formula(std::string_view text) {
  TokenStream in(tokenize(text));
  Formula f = parse_iff(in);
  if (!in.at(Tok::End)) in.fail("unexpected " + describe(in.peek()) + " after formula");
  return f;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

}  // namespace quip
