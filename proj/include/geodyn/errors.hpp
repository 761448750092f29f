// geodyn - error types shared across the library.

#ifndef GEODYN_ERRORS_HPP
#define GEODYN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geodyn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Character outside the expression grammar.
struct LexError : Error {
  std::size_t position;
  char character;
  LexError(std::size_t pos, char c)
      : Error("lex error at byte " + std::to_string(pos) + ": unexpected character '" + std::string(1, c) + "'"),
        position(pos), character(c) {}
};

struct ParseError : Error {
  std::size_t position;
  std::string expected;
  ParseError(std::size_t pos, std::string what_expected)
      : Error("parse error at byte " + std::to_string(pos) + ": expected " + what_expected),
        position(pos), expected(std::move(what_expected)) {}
};

// Variable index exceeds the chart dimension declared at parse time.
struct UnknownVariable : Error {
  std::size_t position;
  std::string name;
  UnknownVariable(std::size_t pos, std::string var)
      : Error("unknown variable '" + var + "' at byte " + std::to_string(pos)),
        position(pos), name(std::move(var)) {}
};

// Evaluation left the real domain (ln(x<=0), sqrt(x<0), division by zero, ...).
struct DomainError : Error {
  using Error::Error;
};

// Point violates a metric domain guard.
struct OutOfDomain : Error {
  std::string guard;
  explicit OutOfDomain(std::string violated)
      : Error("point out of domain: guard '" + violated + "' not satisfied"), guard(std::move(violated)) {}
};

struct DegenerateMetric : Error {
  double det;
  explicit DegenerateMetric(double d)
      : Error("metric degenerate: |det g| = " + std::to_string(d)), det(d) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct UnknownMetric : Error {
  explicit UnknownMetric(const std::string& name) : Error("unknown metric '" + name + "'") {}
};

struct BadParam : Error {
  using Error::Error;
};

// Malformed metric / connection file.
struct SchemaError : Error {
  using Error::Error;
};

// A finite-difference stencil point left the chart domain.
struct StencilOutOfDomain : Error {
  using Error::Error;
};

struct MaxStepsExceeded : Error {
  using Error::Error;
};

struct SeriesNotConverged : Error {
  using Error::Error;
};

struct OverflowError : Error {
  using Error::Error;
};

}  // namespace geodyn

#endif
