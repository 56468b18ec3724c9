#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qaxiom/error.hpp"
#include "qaxiom/symalg/algebra.hpp"

namespace qaxiom::frontend {

/// Malformed expression text. position is 1-based and counts characters;
/// the end of input is position size() + 1.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { literal, imaginary, constant, generator, sum, product, power, bracket, negation };

  Kind kind;
  symalg::Rational value;   // literal
  std::string name;         // constant
  symalg::Generator gen{};  // generator
  int exponent = 0;         // power
  std::vector<ExprPtr> children;

  static ExprPtr literal(symalg::Rational v);
  static ExprPtr imaginary();
  static ExprPtr constant(std::string name);
  static ExprPtr generator(symalg::Generator g);
  static ExprPtr sum(std::vector<ExprPtr> terms);
  static ExprPtr product(std::vector<ExprPtr> factors);
  static ExprPtr power(ExprPtr base, int exponent);
  static ExprPtr bracket(ExprPtr left, ExprPtr right);
  static ExprPtr negation(ExprPtr operand);
};

/// Grammar (whitespace insignificant):
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' ['-'] int | '^' '(' ['-'] int ')')*
///   primary := int ['/' int] | 'i' | identifier | '(' expr ')' | '[' expr ',' expr ']'
/// Identifiers P<n> and Q<n> are generators; any other identifier is a
/// constant reference, resolved when lowering. Throws SyntaxError.
ExprPtr parse_expression(const std::string& text);

/// Text that parses back to an expression with the same lowering.
std::string print_expression(const ExprPtr& e);

/// Canonical (normal-ordered) polynomial for the expression under `a`.
/// Constants must be built in (hbar, e, B, M, alphadot) or listed in
/// `extra_constants`; eps12 becomes the algebra's sign and [x, y] its
/// commutator. Throws UnknownSymbol, UnknownGenerator, NotInvertible.
symalg::NCPolynomial lower(const ExprPtr& e, const symalg::Algebra& a,
                           const std::set<std::string>& extra_constants = {});

/// Lowers an expression that must be free of generators.
/// Throws NotCentral when it is not.
symalg::Coefficient lower_scalar(const ExprPtr& e, int epsilon12,
                                 const std::set<std::string>& extra_constants = {});

}  // namespace qaxiom::frontend
