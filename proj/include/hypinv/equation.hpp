#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "hypinv/expr.hpp"

namespace hypinv {

/// u_tx = T u_t + X u_x + U u.
struct HyperbolicEquation {
  Expr T;
  Expr X;
  Expr U;
  /// Symbolic parameters still present.
  std::set<std::string> parameters;
  /// Opaque function symbols; each is applied to a single variable.
  std::set<std::string> functions;

  std::string str() const;
};

struct Declarations {
  std::set<std::string> parameters;
  std::set<std::string> functions;
};

/// A symbol of T, X, U is not among the declarations.
class UndeclaredSymbolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Validates against `decl`. Also rejects a function name applied to both
/// t and x, since evaluation keys function values by name and order only.
HyperbolicEquation make_equation(Expr T, Expr X, Expr U, const Declarations& decl);

/// Declares whatever symbols T, X, U use.
HyperbolicEquation make_equation(Expr T, Expr X, Expr U);

HyperbolicEquation wave_equation();

/// Coefficients for v where u = c v. Throws DomainError when c is
/// identically zero.
HyperbolicEquation gauge_transform(const HyperbolicEquation& eq, const Expr& c);

/// Coefficients in tb = f(t), xb = g(x), written back in (t, x) through the
/// supplied inverses. Throws DomainError when f, g depend on the wrong
/// variable, have vanishing derivative, or the inverses do not check out.
HyperbolicEquation reparametrize(const HyperbolicEquation& eq, const Expr& f, const Expr& g, const Expr& f_inv,
                                 const Expr& g_inv);

/// Renames t <-> x; exchanges the roles of H and K.
HyperbolicEquation swap_variables(const HyperbolicEquation& eq);

/// Replaces parameters by values and function symbols by univariate
/// definitions, dropping them from the declarations.
HyperbolicEquation specialize(const HyperbolicEquation& eq, const std::map<std::string, Expr>& parameters,
                              const std::map<std::string, Expr>& functions = {});

}  // namespace hypinv
