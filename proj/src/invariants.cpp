#include "hypinv/invariants.hpp"

#include "hypinv/errors.hpp"
#include "hypinv/kernel.hpp"
#include "hypinv/parser.hpp"
#include "hypinv/rational_function.hpp"

namespace hypinv {

using R = RationalFunction;

const char* subclass_name(Subclass s) {
  static const char* names[] = {"S1", "S2", "S3", "S4", "S5", "S6"};
  return names[static_cast<int>(s) - 1];
}

bool has_operators(Subclass s) { return s != Subclass::S1 && s != Subclass::S6; }

namespace {

R rf(const Expr& e) { return canonical_form(e); }
Expr ex(const R& r) { return to_expr(r); }
R Dt(const R& r) { return r.derivative(Var::t); }
R Dx(const R& r) { return r.derivative(Var::x); }

R divide(const R& a, const R& b, const char* what) {
  if (b.is_zero()) throw DomainError(std::string(what) + " vanishes identically");
  return a / b;
}

void require_operators(const InvariantFrame& f) {
  if (!has_operators(f.tag)) throw DomainError(std::string("no invariant differentiation on ") + subclass_name(f.tag));
}

struct Ops {
  R a1;
  R a2;

  R d1(const R& F) const { return a1 * Dt(F); }
  R d2(const R& F) const { return a2 * Dx(F); }
};

Ops ops_of(const InvariantFrame& f) {
  require_operators(f);
  return {rf(*f.d1_coeff), rf(*f.d2_coeff)};
}

void require_s2(const InvariantFrame& f, const char* what) {
  if (f.tag != Subclass::S2) throw DomainError(std::string(what) + " is defined on S2 only");
}

// (H_t F_t - H F_tt)/(H F_t^2), shared by J2 and M2.
R second_t(const R& H, const R& F, const char* what) {
  R Ft = Dt(F);
  return divide(Dt(H) * Ft - H * Dt(Ft), H * Ft * Ft, what);
}

// (H F_xx - H_x F_x)/(H F_x^2), shared by L and N.
R second_x(const R& H, const R& F, const char* what) {
  R Fx = Dx(F);
  return divide(H * Dx(Fx) - Dx(H) * Fx, H * Fx * Fx, what);
}

}  // namespace

LaplaceInvariants laplace_invariants(const HyperbolicEquation& eq) {
  R T = rf(eq.T), X = rf(eq.X), U = rf(eq.U);
  R common = T * X + U;
  return {ex(common - Dt(T)), ex(common - Dx(X))};
}

OvsiannikovInvariants ovsiannikov_invariants(const Expr& He, const Expr& Ke) {
  if (is_identically_zero(He)) throw DomainError("H vanishes identically; P and Q are undefined");
  R H = rf(He), K = rf(Ke);
  R Ht = Dt(H), Hx = Dx(H);
  R Q = divide(H * Dx(Ht) - Ht * Hx, H.pow(3), "H");
  return {ex(divide(K, H, "H")), ex(Q)};
}

std::map<std::string, Expr> subclass_invariants(Subclass s, const Expr& He, const Expr& Pe, const Expr& Qe) {
  R H = rf(He), P = rf(Pe), Q = rf(Qe);
  switch (s) {
    case Subclass::S2:
      return {{"J1", ex(-divide(Dx(Dt(P)), H, "H"))}, {"J2", ex(second_t(H, P, "P_t"))}};
    case Subclass::S3:
      return {{"L", ex(second_x(H, P, "P_x"))}};
    case Subclass::S4:
      return {{"M1", ex(-divide(Dx(Dt(Q)), H, "H"))}, {"M2", ex(second_t(H, Q, "Q_t"))}};
    case Subclass::S5:
      return {{"N", ex(second_x(H, Q, "Q_x"))}};
    default:
      return {};
  }
}

std::pair<Expr, Expr> operator_coefficients(Subclass s, const Expr& He, const Expr& Pe, const Expr& Qe) {
  R H = rf(He), P = rf(Pe), Q = rf(Qe);
  R one = R::constant(1);
  switch (s) {
    case Subclass::S2: {
      R Pt = Dt(P);
      return {ex(divide(one, Pt, "P_t")), ex(divide(Pt, H, "H"))};
    }
    case Subclass::S3: {
      R Px = Dx(P);
      return {ex(divide(Px, H, "H")), ex(divide(one, Px, "P_x"))};
    }
    case Subclass::S4: {
      R Qt = Dt(Q);
      return {ex(divide(one, Qt, "Q_t")), ex(divide(Qt, H, "H"))};
    }
    case Subclass::S5: {
      R Qx = Dx(Q);
      return {ex(divide(Qx, H, "H")), ex(divide(one, Qx, "Q_x"))};
    }
    default:
      throw DomainError(std::string("no invariant differentiation on ") + subclass_name(s));
  }
}

InvariantFrame build_frame(const HyperbolicEquation& eq, Subclass s) {
  InvariantFrame f;
  f.tag = s;
  auto [H, K] = laplace_invariants(eq);
  f.H = H;
  f.K = K;
  if (s == Subclass::S1) return f;
  auto [P, Q] = ovsiannikov_invariants(H, K);
  f.P = P;
  f.Q = Q;
  f.extras = subclass_invariants(s, H, P, Q);
  if (has_operators(s)) {
    auto [a1, a2] = operator_coefficients(s, H, P, Q);
    f.d1_coeff = a1;
    f.d2_coeff = a2;
  }
  return f;
}

Expr invariant_derivative(const InvariantFrame& f, const Expr& F, int which) {
  Ops o = ops_of(f);
  if (which == 1) return ex(o.d1(rf(F)));
  if (which == 2) return ex(o.d2(rf(F)));
  throw DomainError("invariant derivative index must be 1 or 2");
}

Expr derived_invariant(const InvariantFrame& f, const Expr& base, int j, int k) {
  if (j < 0 || k < 0) throw DomainError("derivative orders must be non-negative");
  if (j == 0 && k == 0) return simplify(base);
  Ops o = ops_of(f);
  R r = rf(base);
  for (int i = 0; i < k; ++i) r = o.d2(r);
  for (int i = 0; i < j; ++i) r = o.d1(r);
  return ex(r);
}

Expr commutator_residual(const InvariantFrame& f, const Expr& Fe) {
  Ops o = ops_of(f);
  R F = rf(Fe);
  R d1F = o.d1(F), d2F = o.d2(F);
  R comm = o.d1(d2F) - o.d2(d1F);
  auto x = [&](const char* name) { return rf(f.extras.at(name)); };
  switch (f.tag) {
    case Subclass::S2:
      return ex(comm + x("J1") * d1F + x("J2") * d2F);
    case Subclass::S3:
      return ex(comm + x("L") * d1F);
    case Subclass::S4:
      return ex(comm + x("M1") * d1F + x("M2") * d2F);
    default:
      return ex(comm + x("N") * d1F);
  }
}

Expr syzygy_residual(const InvariantFrame& f) {
  if (f.tag != Subclass::S2 && f.tag != Subclass::S4) throw DomainError("the syzygy is defined on S2 and S4 only");
  Ops o = ops_of(f);
  bool s2 = f.tag == Subclass::S2;
  R base = rf(s2 ? *f.P : *f.Q);
  R first = rf(f.extras.at(s2 ? "J1" : "M1"));
  R second = rf(f.extras.at(s2 ? "J2" : "M2"));
  R d2 = o.d2(base);
  return ex(first + o.d1(d2) + second * d2);
}

namespace {

const Expr& probe() {
  static const Expr p = parse("t^3*x + t*x^2 + 1");
  return p;
}

RelationCheck check(std::string name, const R& value, const R& other, std::string note = {}) {
  return {std::move(name), ex(value), ex(value - other), std::move(note)};
}

}  // namespace

std::vector<RelationCheck> jmws_relations(const InvariantFrame& f) {
  require_s2(f, "the JMWS relations");
  Ops o = ops_of(f);
  R H = rf(f.H), K = rf(f.K), P = rf(*f.P), Q = rf(*f.Q), J2 = rf(f.extras.at("J2"));
  R Ht = Dt(H), Hx = Dx(H), Kt = Dt(K), Kx = Dx(K);
  R Htt = Dt(Ht), Hxx = Dx(Hx), Ktt = Dt(Kt), Kxx = Dx(Kx), Htx = Dx(Ht), Ktx = Dx(Kt);
  R H3 = H.pow(-3), H9 = H.pow(-9);
  R three = R::constant(3);

  R j1 = H3 * (K * Htx + H * Ktx - Ht * Kx - Hx * Kt);
  R wx = H * Kx - K * Hx;
  R wt = H * Kt - K * Ht;
  R j2 = H9 * wx * wx * (H * K * Htt - H * H * Ktt - three * K * Ht * Ht + three * H * Ht * Kt);
  R j3 = H9 * wt * wt * (H * K * Hxx - H * H * Kxx - three * K * Hx * Hx + three * H * Hx * Kx);

  R d2P = o.d2(P);
  R d1d2P = o.d1(d2P);
  std::vector<RelationCheck> out;
  out.push_back(check("J1_3", j1, R::constant(2) * P * Q + d1d2P + J2 * d2P));
  out.push_back(check("J2_3", j2, J2 * d2P * d2P));
  out.push_back(check("J3_3", j3, d2P * (d1d2P + J2 * d2P) - o.d2(d2P)));

  R F = rf(probe());
  R x1 = H3 * wx * Dt(F);
  if (is_identically_zero(ex(d2P))) {
    out.push_back({"X1", std::nullopt, std::nullopt, "D2(P) vanishes identically; X~1 is trivial"});
    out.push_back({"X2", std::nullopt, std::nullopt, "D2(P) vanishes identically; X~2 is undefined"});
  } else {
    out.push_back(check("X1", x1, d2P * o.d1(F), "probe " + probe().str()));
    R x2 = H * H / wx * Dx(F);
    out.push_back(check("X2", x2, o.d2(F) / d2P, "probe " + probe().str()));
  }
  return out;
}

std::vector<RelationCheck> ibragimov_relations(const InvariantFrame& f) {
  require_s2(f, "the Ibragimov relations");
  Ops o = ops_of(f);
  R H = rf(f.H), K = rf(f.K), P = rf(*f.P), Q = rf(*f.Q), J2 = rf(f.extras.at("J2"));
  R Pt = Dt(P), Px = Dx(P);
  R d2P = o.d2(P);
  std::vector<RelationCheck> out;
  out.push_back(check("I", Pt * Px / H, d2P));

  if (is_identically_zero(ex(K))) {
    out.push_back({"Q~", std::nullopt, std::nullopt, "K vanishes identically; Q~ is undefined"});
  } else {
    R Kt = Dt(K), Kx = Dx(K);
    R qt = (K * Dx(Kt) - Kt * Kx) / K.pow(3);
    R rhs = Q / P + J2 * d2P / P.pow(2) + o.d1(d2P) / P.pow(2) - d2P / P.pow(3);
    out.push_back(check("Q~", qt, rhs));
  }

  R F = rf(probe());
  if (is_identically_zero(ex(Pt))) {
    out.push_back({"calD1", std::nullopt, std::nullopt, "P_t vanishes identically"});
  } else {
    out.push_back(check("calD1", Dt(F) / Pt, o.d1(F), "probe " + probe().str()));
  }
  if (is_identically_zero(ex(Px))) {
    out.push_back({"calD2", std::nullopt, std::nullopt, "P_x vanishes identically; D2(P) is zero"});
  } else {
    out.push_back(check("calD2", Dx(F) / Px, o.d2(F) / d2P, "probe " + probe().str()));
  }
  return out;
}

}  // namespace hypinv
