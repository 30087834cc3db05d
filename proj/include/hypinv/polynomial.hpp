#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypinv/expr.hpp"
#include "hypinv/symbol.hpp"

namespace hypinv {

enum class AtomKind : std::uint8_t { variable, parameter, function, log, exp };

/// An indeterminate of the polynomial layer. Atoms are interned for the
/// lifetime of the process; compare them by pointer.
///
/// log/exp atoms wrap a canonical inner expression and are treated as
/// algebraically independent of every other atom.
struct Atom {
  AtomKind kind;
  std::string name;
  int order = 0;
  Var arg = Var::t;
  Expr inner;
  /// Total order key; t < x < parameters < functions < ln < exp.
  std::string key;

  Expr to_expr() const;
};

const Atom* variable_atom(Var v);
const Atom* parameter_atom(const std::string& name);
const Atom* function_atom(const std::string& name, int order, Var arg);
/// `inner` must already be canonical.
const Atom* log_atom(const Expr& inner);
const Atom* exp_atom(const Expr& inner);

inline bool atom_less(const Atom* a, const Atom* b) { return a != b && a->key < b->key; }

using Exponent = std::uint32_t;

/// Power product, factors sorted by atom order with positive exponents.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Atom* a, Exponent e = 1) {
    if (e > 0) factors_.emplace_back(a, e);
  }
  /// Factors must already be sorted by atom order with positive exponents.
  explicit Monomial(std::vector<std::pair<const Atom*, Exponent>> factors) : factors_(std::move(factors)) {}

  const std::vector<std::pair<const Atom*, Exponent>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  Exponent degree(const Atom* a) const;
  Exponent total_degree() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / *this, assuming divides(o).
  Monomial cofactor(const Monomial& o) const;
  Monomial without(const Atom* a) const;
  Monomial gcd(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

 private:
  std::vector<std::pair<const Atom*, Exponent>> factors_;
};

/// Lexicographic comparison by atom order: -1, 0, 1.
int compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  mpz_class coeff;
};

/// Sparse multivariate polynomial with integer coefficients. Terms are kept
/// in strictly decreasing lex order with no zero coefficients, so equal
/// polynomials have identical representations.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const mpz_class& c);
  explicit Polynomial(long c) : Polynomial(mpz_class(c)) {}
  static Polynomial atom(const Atom* a, Exponent e = 1);
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].coeff == 1; }
  mpz_class constant_value() const { return terms_.empty() ? mpz_class(0) : terms_[0].coeff; }
  const Term& leading() const { return terms_.front(); }
  int sign() const { return terms_.empty() ? 0 : sgn(terms_.front().coeff); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const mpz_class& c) const;
  Polynomial mul_term(const Monomial& m, const mpz_class& c) const;
  Polynomial pow(unsigned e) const;

  /// q with q * d == *this, or nothing when d does not divide exactly.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;
  /// Coefficient-wise exact division; c must divide every coefficient.
  Polynomial divide_exact(const mpz_class& c) const;

  /// Positive gcd of all coefficients (0 for the zero polynomial).
  mpz_class content() const;

  Exponent degree(const Atom* a) const;
  /// Distinct atoms, sorted by atom order.
  std::vector<const Atom*> atoms() const;
  bool has_atom(const Atom* a) const;
  /// c[k] is the coefficient of a^k.
  std::vector<Polynomial> coefficients(const Atom* a) const;
  static Polynomial from_coefficients(const Atom* a, const std::vector<Polynomial>& c);

  /// Partial derivative with respect to one atom.
  Polynomial partial(const Atom* a) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor with positive leading coefficient.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace hypinv
