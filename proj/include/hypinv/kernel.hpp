#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hypinv/expr.hpp"

namespace hypinv {

/// Rational canonical form printed back as a tree. Idempotent; the result
/// is evaluation-equivalent to e wherever both are defined.
Expr simplify(const Expr& e);

/// Structural total derivative D_v, with zero branches pruned but no
/// further simplification.
Expr differentiate(const Expr& e, Var v);

/// simplify(differentiate(e, v)), computed on the canonical form.
Expr derivative(const Expr& e, Var v);

enum class ZeroMethod : std::uint8_t { symbolic, probabilistic };

inline const char* method_name(ZeroMethod m) { return m == ZeroMethod::symbolic ? "symbolic" : "probabilistic"; }

struct ZeroTestOptions {
  std::uint64_t seed = 42;
  int samples = 24;
  int min_samples = 8;
  int max_draws = 96;
  double tol = 1e-9;
  double low = 0.1;
  double high = 2.0;
};

struct ZeroTestResult {
  bool zero = false;
  ZeroMethod method = ZeroMethod::symbolic;
  int samples = 0;
  /// Regular samples below the tolerance.
  int vanishing = 0;
};

/// Decides e == 0 as a function. Rational expressions are settled exactly
/// by their canonical form; expressions with surviving ln/exp atoms are
/// sampled at random points of [-high,-low] u [low,high] with independent
/// values per symbol. Throws IndeterminateError when fewer than min_samples
/// regular points are found.
ZeroTestResult zero_test(const Expr& e, const ZeroTestOptions& opts = {});

inline bool is_identically_zero(const Expr& e, const ZeroTestOptions& opts = {}) {
  return zero_test(e, opts).zero;
}

/// The simplified value of e when both total derivatives vanish
/// identically, otherwise nothing.
std::optional<Expr> is_constant(const Expr& e, const ZeroTestOptions& opts = {});

/// Replacement rules applied simultaneously.
struct Substitution {
  std::map<std::string, Expr> parameters;
  std::optional<Expr> t;
  std::optional<Expr> x;
  /// Univariate definitions; the body is written in t or x and is re-based
  /// onto the argument of each application, differentiated for f', f''...
  std::map<std::string, Expr> functions;

  bool empty() const { return parameters.empty() && !t && !x && functions.empty(); }
};

/// Throws DomainError when a variable carrying function applications is
/// replaced by anything other than a bare variable, or when a function
/// definition mentions both t and x.
Expr substitute(const Expr& e, const Substitution& s);

}  // namespace hypinv
