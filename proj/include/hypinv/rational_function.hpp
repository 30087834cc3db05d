#pragma once

#include <gmpxx.h>

#include <memory>

#include "hypinv/expr.hpp"
#include "hypinv/polynomial.hpp"

namespace hypinv {

/// Quotient of two integer polynomials in lowest terms, with the leading
/// coefficient of the denominator positive. This is a canonical form: two
/// rational functions in the same atoms are equal iff their representations
/// are identical.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  explicit RationalFunction(Polynomial num) : num_(std::move(num)), den_(1) {}
  static RationalFunction constant(const mpq_class& c);
  /// Reduces to lowest terms. Throws SingularEvaluation when den is zero.
  static RationalFunction make(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  mpq_class constant_value() const;
  /// True when some ln/exp atom occurs, so that identities among atoms
  /// are possible.
  bool has_transcendental() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction pow(long e) const;

  /// Total derivative D_t or D_x; function symbols of the other variable
  /// and parameters are constants.
  RationalFunction derivative(Var v) const;

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

 private:
  RationalFunction(Polynomial num, Polynomial den, bool) : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

/// Canonical rational form of an expression, cached on the node.
/// ln/exp subexpressions become atoms over canonical arguments, with
/// ln(1) = 0, exp(0) = 1, ln(exp(g)) = g and exp(ln(g)) = g.
const RationalFunction& canonical_form(const Expr& e);

/// Expression tree of a canonical form; the result carries r as its cache.
Expr to_expr(const RationalFunction& r);

Expr attach_canonical(Expr e, std::shared_ptr<const RationalFunction> rf);

}  // namespace hypinv
