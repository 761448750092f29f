// geodyn - arithmetic expression language for metric components.
//
// Grammar (documented in docs/expression-grammar.md):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | name '(' expr ')' | name | '(' expr ')'
//
// Precedence: ^  >  unary -  >  * /  >  + -.
// Functions: sin cos tan exp ln sqrt abs.  Variables are x1..x{dim} plus
// any per-metric coordinate aliases supplied at parse time.

#ifndef GEODYN_EXPR_HPP
#define GEODYN_EXPR_HPP

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodyn/jet.hpp"

namespace geodyn {

struct Token {
  enum class Kind { Number, Identifier, Operator, Paren, Comma };
  Kind kind;
  std::string lexeme;
  std::size_t position;  // byte offset into the source
};

std::vector<Token> tokenize(std::string_view src);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Constant, Variable, Negate, Binary, Call };
  enum class Fn { Sin, Cos, Tan, Exp, Ln, Sqrt, Abs };

  Kind kind;
  double value = 0.0;  // Constant
  int var = 0;         // Variable, 0-based coordinate index
  char op = 0;         // Binary: one of + - * / ^
  Fn fn = Fn::Sin;     // Call
  ExprPtr left, right; // Binary
  ExprPtr child;       // Negate, Call
};

// Parses src against a chart of the given dimension.  aliases maps extra
// coordinate names (e.g. "r", "theta") to 0-based indices; x1..x{dim} are
// always accepted.
ExprPtr parse(std::string_view src, int dim, const std::map<std::string, int>& aliases = {});

// Fully parenthesized rendering; parse(pretty_print(e), dim) rebuilds an
// expression structurally equal to e.
std::string pretty_print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

double eval_scalar(const Expr& e, std::span<const double> point);

Jet2 eval_jet2(const Expr& e, std::span<const double> point);

}  // namespace geodyn

#endif
