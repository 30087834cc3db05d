#pragma once

#include <string>
#include <vector>

#include "hypinv/equation.hpp"
#include "hypinv/invariants.hpp"
#include "hypinv/manifold.hpp"

namespace hypinv {

struct Witness {
  std::string name;
  HyperbolicEquation equation;
  Subclass subclass;
  /// A rectangle on which the manifold (if any) is regular.
  Domain domain;
};

HyperbolicEquation s2_witness();  // u_tx = t^2 x^2 u_t + u
HyperbolicEquation s3_witness();  // u_tx = x^2 u_x + u
HyperbolicEquation s4_witness();  // u_tx = (t-x)^3 u_x + (t-x)^2 u
/// With q(x) opaque and lambda symbolic unless given.
HyperbolicEquation s5_witness();
HyperbolicEquation s5_witness(const Expr& lambda, const Expr& q_of_x);
HyperbolicEquation s6_1_witness();
HyperbolicEquation s6_2_witness();
/// P = p(t), Q = q(t) with p, q opaque.
HyperbolicEquation counterexample();
/// The same with p, q defined as expressions in t.
HyperbolicEquation counterexample(const Expr& p_of_t, const Expr& q_of_t);

/// The seven classification witnesses, S1 through S6 (two for S6).
std::vector<Witness> classification_witnesses();

/// Fully numeric S2..S5 equations with regular domains.
std::vector<Witness> manifold_witnesses();

}  // namespace hypinv
