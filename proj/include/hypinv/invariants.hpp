#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypinv/equation.hpp"
#include "hypinv/expr.hpp"

namespace hypinv {

enum class Subclass : std::uint8_t { S1 = 1, S2, S3, S4, S5, S6 };

const char* subclass_name(Subclass s);
bool has_operators(Subclass s);

struct LaplaceInvariants {
  Expr H;
  Expr K;
};

/// H = -T_t + T X + U, K = -X_x + T X + U.
LaplaceInvariants laplace_invariants(const HyperbolicEquation& eq);

struct OvsiannikovInvariants {
  Expr P;
  Expr Q;
};

/// P = K/H, Q = (H H_tx - H_t H_x)/H^3. Throws DomainError when H is
/// identically zero.
OvsiannikovInvariants ovsiannikov_invariants(const Expr& H, const Expr& K);

/// {J1, J2} for S2, {L} for S3, {M1, M2} for S4, {N} for S5, {} otherwise.
/// Throws DomainError when a required denominator vanishes identically.
std::map<std::string, Expr> subclass_invariants(Subclass s, const Expr& H, const Expr& P, const Expr& Q);

/// Multipliers (a1, a2) with D1 = a1 D_t and D2 = a2 D_x.
std::pair<Expr, Expr> operator_coefficients(Subclass s, const Expr& H, const Expr& P, const Expr& Q);

struct InvariantFrame {
  Subclass tag = Subclass::S1;
  Expr H;
  Expr K;
  /// Undefined for S1.
  std::optional<Expr> P;
  std::optional<Expr> Q;
  std::map<std::string, Expr> extras;
  /// Set for S2..S5 only.
  std::optional<Expr> d1_coeff;
  std::optional<Expr> d2_coeff;
};

/// Frame of an equation whose subclass is already known (H nonzero unless S1).
InvariantFrame build_frame(const HyperbolicEquation& eq, Subclass s);

/// D1(F) for which == 1, D2(F) for which == 2. Throws DomainError for S1, S6.
Expr invariant_derivative(const InvariantFrame& f, const Expr& F, int which);

/// D1^j D2^k (base).
Expr derived_invariant(const InvariantFrame& f, const Expr& base, int j, int k);

/// [D1, D2]F minus the subclass commutator formula; identically zero.
Expr commutator_residual(const InvariantFrame& f, const Expr& F);

/// J1 + D1 D2 P + J2 D2 P for S2, the M1/Q analogue for S4. Throws
/// DomainError for other subclasses.
Expr syzygy_residual(const InvariantFrame& f);

struct RelationCheck {
  std::string name;
  /// Value from the H, K definition, when that is meaningful.
  std::optional<Expr> value;
  /// Difference of the two sides; absent when the check is skipped.
  std::optional<Expr> residual;
  std::string note;

  bool skipped() const { return !residual.has_value(); }
};

/// J^1_3, J^2_3, J^3_3 from H, K against their D-expressions, and the two
/// operator identities for X~1, X~2 (skipped when D2(P) vanishes). S2 only.
std::vector<RelationCheck> jmws_relations(const InvariantFrame& f);

/// I against D2(P), Q~ = (ln|K|)_tx / K against its D-expression, and the
/// operator identities for the P_t, P_x normalized derivations. S2 only.
std::vector<RelationCheck> ibragimov_relations(const InvariantFrame& f);

}  // namespace hypinv
