#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quip/formula.hpp"

namespace quip {

enum class Tok {
  Ident,
  Keyword,  // '@' followed by letters and an optional ?, + or !  (e.g. @SET, @D, @ABD?)
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Colon,
  Pipe,
  Dot,
  Define,     // :=
  Entails,    // |=
  RuleArrow,  // :-
  Bang,
  Amp,
  Arrow,   // ->
  DArrow,  // <->
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Splits `text` into tokens. '#' starts a comment running to the end of the
// line. Throws SyntaxError on a character that starts no token.
std::vector<Token> tokenize(std::string_view text);

const char* token_name(Tok kind);
std::string describe(const Token& t);

// Cursor over a token vector ending in Tok::End.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_ident(std::string_view text) const { return at(Tok::Ident) && peek().text == text; }
  bool accept(Tok kind);
  const Token& expect(Tok kind, const char* what);
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Recursive-descent formula parser. Stops at the first token that cannot
// continue a formula, leaving it in the stream.
//
// Precedence from tightest: ! , & , v , -> (right-assoc), <-> ; & v <-> are
// left-associative. `L(f)` is a modal atom; `exists x y: f` and
// `forall x y: f` extend as far right as possible.
Formula parse_formula(TokenStream& in);

// Parses a complete formula; trailing tokens are a syntax error.
Formula parse_formula(std::string_view text);

// Renders with the minimal parentheses that reparse to the same tree.
std::string to_string(const Formula& f);

}  // namespace quip
