// geodyn - expression lexer, recursive-descent parser, and evaluators.

#include "geodyn/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace geodyn {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      while (i < src.size() && is_digit(src[i])) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (i < src.size() && is_digit(src[i])) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t e = i + 1;
        if (e < src.size() && (src[e] == '+' || src[e] == '-')) ++e;
        if (e < src.size() && is_digit(src[e])) {
          i = e;
          while (i < src.size() && is_digit(src[i])) ++i;
        }
      }
      std::string lex(src.substr(start, i - start));
      char* end = nullptr;
      double v = std::strtod(lex.c_str(), &end);
      if (end == lex.c_str() || !std::isfinite(v)) throw LexError(start, c);
      out.push_back({Token::Kind::Number, lex, start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < src.size() && is_ident_char(src[i])) ++i;
      out.push_back({Token::Kind::Identifier, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      out.push_back({Token::Kind::Operator, std::string(1, c), start});
      ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({Token::Kind::Paren, std::string(1, c), start});
      ++i;
      continue;
    }
    if (c == ',') {
      out.push_back({Token::Kind::Comma, std::string(1, c), start});
      ++i;
      continue;
    }
    throw LexError(i, c);
  }
  return out;
}

namespace {

ExprPtr make_constant(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Constant;
  e->value = v;
  return e;
}

ExprPtr make_variable(int idx) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Variable;
  e->var = idx;
  return e;
}

ExprPtr make_negate(ExprPtr c) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Negate;
  e->child = std::move(c);
  return e;
}

ExprPtr make_binary(char op, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binary;
  e->op = op;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

ExprPtr make_call(Expr::Fn fn, ExprPtr c) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Call;
  e->fn = fn;
  e->child = std::move(c);
  return e;
}

const std::map<std::string, Expr::Fn>& function_table() {
  static const std::map<std::string, Expr::Fn> table = {
      {"sin", Expr::Fn::Sin}, {"cos", Expr::Fn::Cos},   {"tan", Expr::Fn::Tan},
      {"exp", Expr::Fn::Exp}, {"ln", Expr::Fn::Ln},     {"sqrt", Expr::Fn::Sqrt},
      {"abs", Expr::Fn::Abs}};
  return table;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, int dim, const std::map<std::string, int>& aliases,
         std::size_t src_len)
      : tokens_(std::move(tokens)), dim_(dim), aliases_(aliases), src_len_(src_len) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    if (pos_ != tokens_.size()) throw ParseError(tokens_[pos_].position, "end of input");
    return e;
  }

 private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

  bool accept_op(char c) {
    const Token* t = peek();
    if (t && t->kind == Token::Kind::Operator && t->lexeme[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_paren(char c) {
    const Token* t = peek();
    if (t && t->kind == Token::Kind::Paren && t->lexeme[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t here() const { return pos_ < tokens_.size() ? tokens_[pos_].position : src_len_; }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      if (accept_op('+'))
        e = make_binary('+', e, parse_term());
      else if (accept_op('-'))
        e = make_binary('-', e, parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept_op('*'))
        e = make_binary('*', e, parse_unary());
      else if (accept_op('/'))
        e = make_binary('/', e, parse_unary());
      else
        return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept_op('-')) return make_negate(parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (accept_op('^')) return make_binary('^', base, parse_unary());
    return base;
  }

  ExprPtr parse_primary() {
    const Token* t = peek();
    if (!t) throw ParseError(here(), "an operand");
    if (t->kind == Token::Kind::Number) {
      ++pos_;
      return make_constant(std::strtod(t->lexeme.c_str(), nullptr));
    }
    if (t->kind == Token::Kind::Paren && t->lexeme[0] == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (!accept_paren(')')) throw ParseError(here(), "')'");
      return e;
    }
    if (t->kind == Token::Kind::Identifier) {
      ++pos_;
      auto fn = function_table().find(t->lexeme);
      if (fn != function_table().end()) {
        if (!accept_paren('(')) throw ParseError(here(), "'(' after function name");
        ExprPtr arg = parse_expr();
        if (!accept_paren(')')) throw ParseError(here(), "')'");
        return make_call(fn->second, arg);
      }
      return resolve_variable(*t);
    }
    throw ParseError(t->position, "an operand");
  }

  ExprPtr resolve_variable(const Token& t) {
    const std::string& name = t.lexeme;
    if (name.size() >= 2 && name[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i) digits = digits && is_digit(name[i]);
      if (digits) {
        long idx = std::strtol(name.c_str() + 1, nullptr, 10);
        if (idx < 1 || idx > dim_) throw UnknownVariable(t.position, name);
        return make_variable(static_cast<int>(idx - 1));
      }
    }
    auto a = aliases_.find(name);
    if (a != aliases_.end()) {
      if (a->second < 0 || a->second >= dim_) throw UnknownVariable(t.position, name);
      return make_variable(a->second);
    }
    throw UnknownVariable(t.position, name);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int dim_;
  const std::map<std::string, int>& aliases_;
  std::size_t src_len_;
};

const char* fn_name(Expr::Fn f) {
  switch (f) {
    case Expr::Fn::Sin: return "sin";
    case Expr::Fn::Cos: return "cos";
    case Expr::Fn::Tan: return "tan";
    case Expr::Fn::Exp: return "exp";
    case Expr::Fn::Ln: return "ln";
    case Expr::Fn::Sqrt: return "sqrt";
    case Expr::Fn::Abs: return "abs";
  }
  return "?";
}

}  // namespace

ExprPtr parse(std::string_view src, int dim, const std::map<std::string, int>& aliases) {
  if (dim < 1) throw ParseError(0, "positive chart dimension");
  return Parser(tokenize(src), dim, aliases, src.size()).run();
}

std::string pretty_print(const Expr& e) {
  char buf[40];
  switch (e.kind) {
    case Expr::Kind::Constant:
      std::snprintf(buf, sizeof buf, "%.17g", e.value);
      return buf;
    case Expr::Kind::Variable:
      return "x" + std::to_string(e.var + 1);
    case Expr::Kind::Negate:
      return "(-" + pretty_print(*e.child) + ")";
    case Expr::Kind::Binary:
      return "(" + pretty_print(*e.left) + std::string(1, e.op) + pretty_print(*e.right) + ")";
    case Expr::Kind::Call:
      return std::string(fn_name(e.fn)) + "(" + pretty_print(*e.child) + ")";
  }
  return "";
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Constant: return a.value == b.value;
    case Expr::Kind::Variable: return a.var == b.var;
    case Expr::Kind::Negate: return structurally_equal(*a.child, *b.child);
    case Expr::Kind::Binary:
      return a.op == b.op && structurally_equal(*a.left, *b.left) &&
             structurally_equal(*a.right, *b.right);
    case Expr::Kind::Call:
      return a.fn == b.fn && structurally_equal(*a.child, *b.child);
  }
  return false;
}

namespace {

double scalar_pow(double a, double b) {
  if (a < 0.0 && std::nearbyint(b) != b)
    throw DomainError("non-integer power of negative base");
  double v = std::pow(a, b);
  if (!std::isfinite(v)) throw DomainError("pow outside real domain");
  return v;
}

}  // namespace

double eval_scalar(const Expr& e, std::span<const double> point) {
  switch (e.kind) {
    case Expr::Kind::Constant:
      return e.value;
    case Expr::Kind::Variable:
      return point[static_cast<std::size_t>(e.var)];
    case Expr::Kind::Negate:
      return -eval_scalar(*e.child, point);
    case Expr::Kind::Binary: {
      double l = eval_scalar(*e.left, point);
      double r = eval_scalar(*e.right, point);
      switch (e.op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        case '/':
          if (r == 0.0) throw DomainError("division by zero");
          return l / r;
        case '^': return scalar_pow(l, r);
      }
      throw DomainError("bad operator");
    }
    case Expr::Kind::Call: {
      double x = eval_scalar(*e.child, point);
      switch (e.fn) {
        case Expr::Fn::Sin: return std::sin(x);
        case Expr::Fn::Cos: return std::cos(x);
        case Expr::Fn::Tan: return std::tan(x);
        case Expr::Fn::Exp: {
          double v = std::exp(x);
          if (!std::isfinite(v)) throw DomainError("exp overflow");
          return v;
        }
        case Expr::Fn::Ln:
          if (x <= 0.0) throw DomainError("ln of non-positive value");
          return std::log(x);
        case Expr::Fn::Sqrt:
          if (x < 0.0) throw DomainError("sqrt of negative value");
          return std::sqrt(x);
        case Expr::Fn::Abs: return std::fabs(x);
      }
      throw DomainError("bad function");
    }
  }
  throw DomainError("bad expression node");
}

Jet2 eval_jet2(const Expr& e, std::span<const double> point) {
  const int n = static_cast<int>(point.size());
  switch (e.kind) {
    case Expr::Kind::Constant:
      return Jet2::constant(e.value, n);
    case Expr::Kind::Variable:
      return Jet2::variable(point[static_cast<std::size_t>(e.var)], e.var, n);
    case Expr::Kind::Negate:
      return -eval_jet2(*e.child, point);
    case Expr::Kind::Binary: {
      Jet2 l = eval_jet2(*e.left, point);
      Jet2 r = eval_jet2(*e.right, point);
      switch (e.op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        case '/': return l / r;
        case '^': return jet_pow(l, r);
      }
      throw DomainError("bad operator");
    }
    case Expr::Kind::Call: {
      Jet2 x = eval_jet2(*e.child, point);
      switch (e.fn) {
        case Expr::Fn::Sin: return jet_sin(x);
        case Expr::Fn::Cos: return jet_cos(x);
        case Expr::Fn::Tan: return jet_tan(x);
        case Expr::Fn::Exp: return jet_exp(x);
        case Expr::Fn::Ln: return jet_ln(x);
        case Expr::Fn::Sqrt: return jet_sqrt(x);
        case Expr::Fn::Abs: return jet_abs(x);
      }
      throw DomainError("bad function");
    }
  }
  throw DomainError("bad expression node");
}

}  // namespace geodyn
