#pragma once

#include "dichot/functions.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dichot {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Function expressions in one variable x over rational literals.
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | 'x' | '-' factor | fn '(' args ')' | '(' expr ')'
/// with abs(e), min(e, e), max(e, e), spike(z; eps), step(c; lo, hi),
/// stair(c1, j1; c2, j2; ...), scale(k; e). A minus sign directly in front of
/// a literal belongs to the literal.
struct Expr {
  enum class Kind { Lit, Var, Add, Sub, Mul, Neg, Abs, Min, Max, Spike, Step, Stair, Scale };
  Kind kind = Kind::Lit;
  Rational value;                 ///< Lit
  std::vector<ExprPtr> args;      ///< operands
  std::vector<Rational> params;   ///< spike: z, eps; step: c, lo, hi; stair: c1, j1, ...; scale: k

  static ExprPtr lit(Rational v);
  static ExprPtr var();
  static ExprPtr unary(Kind k, ExprPtr a);
  static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b);
  static ExprPtr with_params(Kind k, std::vector<Rational> params, std::vector<ExprPtr> args = {});
};

bool operator==(const Expr& a, const Expr& b);

class InvalidExpression : public std::runtime_error {
 public:
  InvalidExpression(std::size_t position, std::set<std::string> expected, const std::string& msg);
  std::size_t position() const { return position_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::set<std::string> expected_;
};

ExprPtr parse(std::string_view text);
/// Fully parenthesised; parse(print(e)) == e.
std::string print(const Expr& e);

/// Exact value at a rational point.
Rational interpret(const Expr& e, const Rational& x);
/// Interval extension: contains interpret(e, q) for every rational q in I.
RatInterval image(const Expr& e, const RatInterval& I);
/// True when no step or stair occurs.
bool is_continuous(const Expr& e);

struct Compiled {
  RealFn real;
  RationalFn rational;
  bool continuous = true;
};

/// Continuous expressions evaluate through exact-real arithmetic; expressions
/// with jumps are lifted from their rational form through the interval image.
Compiled compile(const ExprPtr& e);

}  // namespace dichot
