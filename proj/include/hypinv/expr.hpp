#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "hypinv/symbol.hpp"

namespace hypinv {

class RationalFunction;

enum class ExprKind : std::uint8_t {
  constant,
  parameter,
  variable,
  function,
  sum,
  product,
  quotient,
  power,
  log,
  exp,
  negate,
};

class Expr;

namespace detail {
struct ExprNode;
}

/// Immutable symbolic expression over t, x, named parameters and function
/// symbols f^(k)(v) with v in {t, x}.
///
/// Construction through the static factories and operators performs only
/// two local rewrites: operations whose operands are all constants are
/// folded, and nested sums/products are flattened. Everything else is left
/// to simplify().
class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr constant(const mpq_class& value);
  static Expr integer(long value) { return constant(mpq_class(value)); }
  static Expr parameter(const std::string& name);
  static Expr variable(Var v);
  static Expr function(const std::string& name, int order, Var arg);

  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr quotient(const Expr& num, const Expr& den);
  static Expr power(const Expr& base, long exponent);
  static Expr log(const Expr& arg);
  static Expr exp(const Expr& arg);
  static Expr negate(const Expr& arg);

  ExprKind kind() const;
  const std::vector<Expr>& children() const;
  /// Constant value; only meaningful for ExprKind::constant.
  const mpq_class& value() const;
  /// Parameter or function base name, "t"/"x" for variables.
  const std::string& name() const;
  /// Derivative order of a function symbol.
  int order() const;
  /// Argument of a function symbol, or the variable itself.
  Var arg() const;
  long exponent() const;

  bool is_constant() const { return kind() == ExprKind::constant; }
  bool is_zero() const;
  bool is_one() const;

  std::size_t hash() const;
  /// Structural equality.
  bool operator==(const Expr& other) const;
  bool operator!=(const Expr& other) const { return !(*this == other); }

  /// Canonical text, accepted back by parse().
  std::string str() const;

  /// Number of nodes in the tree (shared subtrees counted each time).
  std::size_t size() const;

  /// Identity of the underlying node, for hash-consing.
  const void* id() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}
  const detail::ExprNode& node() const { return *node_; }

  std::shared_ptr<const detail::ExprNode> node_;

  friend const RationalFunction& canonical_form(const Expr& e);
  friend Expr attach_canonical(Expr e, std::shared_ptr<const RationalFunction> rf);
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, long exponent);
Expr log(const Expr& arg);
Expr exp(const Expr& arg);

inline Expr operator+(const Expr& a, long b) { return a + Expr::integer(b); }
inline Expr operator*(long a, const Expr& b) { return Expr::integer(a) * b; }

/// Every symbol the expression depends on, including those inside ln/exp.
std::set<SymbolKey> free_symbols(const Expr& e);

/// True if e mentions no symbol other than parameters (and contains no t, x
/// or function symbol).
bool depends_only_on_parameters(const Expr& e);

bool depends_on(const Expr& e, Var v);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

namespace detail {

struct ExprNode {
  ExprKind kind = ExprKind::constant;
  mpq_class value;
  std::string name;
  int order = 0;
  Var arg = Var::t;
  long exponent = 0;
  std::vector<Expr> children;
  std::size_t hash = 0;

  // Canonical rational form, computed at most once. Prefilled when the
  // node was itself produced from a canonical form.
  mutable std::once_flag canonical_once;
  mutable std::shared_ptr<const RationalFunction> canonical;
};

}  // namespace detail

}  // namespace hypinv
