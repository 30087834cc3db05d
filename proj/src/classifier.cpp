#include "hypinv/classifier.hpp"

#include "hypinv/errors.hpp"
#include "hypinv/parser.hpp"

namespace hypinv {

const char* target_name(CanonicalTarget t) {
  switch (t) {
    case CanonicalTarget::wave: return "wave";
    case CanonicalTarget::s6_1: return "S6_1";
    case CanonicalTarget::s6_2: return "S6_2";
  }
  return "";
}

namespace {

class Tree {
 public:
  explicit Tree(const ZeroTestOptions& opts) : opts_(opts) {}

  bool zero(const std::string& predicate, const Expr& e) {
    ZeroTestResult r;
    try {
      r = zero_test(e, opts_);
    } catch (const IndeterminateError& err) {
      throw ClassificationError(predicate, err.what());
    }
    if (r.method == ZeroMethod::probabilistic && !r.zero && r.vanishing > 0) {
      throw ClassificationError(predicate, "samples disagree, " + std::to_string(r.vanishing) + " of " +
                                               std::to_string(r.samples) + " vanish");
    }
    decisions.push_back({predicate, r.zero, r.method});
    return r.zero;
  }

  std::vector<Decision> decisions;

 private:
  const ZeroTestOptions& opts_;
};

}  // namespace

ClassificationReport classify(const HyperbolicEquation& eq, const ZeroTestOptions& opts) {
  Tree tree(opts);
  ClassificationReport rep;
  rep.equation = eq;
  auto [H, K] = laplace_invariants(eq);
  bool h0 = tree.zero("H == 0", H);
  bool k0 = tree.zero("K == 0", K);
  if (h0 && k0) {
    rep.subclass = Subclass::S1;
    rep.frame = build_frame(eq, Subclass::S1);
    rep.decisions = std::move(tree.decisions);
    rep.canonical_target = CanonicalTarget::wave;
    return rep;
  }
  if (h0) {
    rep.swapped = true;
    rep.equation = swap_variables(eq);
    std::swap(H, K);
  }
  auto [P, Q] = ovsiannikov_invariants(H, K);
  Subclass s;
  if (!tree.zero("P_t == 0", derivative(P, Var::t))) {
    s = Subclass::S2;
  } else if (!tree.zero("P_x == 0", derivative(P, Var::x))) {
    s = Subclass::S3;
  } else if (!tree.zero("Q_t == 0", derivative(Q, Var::t))) {
    s = Subclass::S4;
  } else if (!tree.zero("Q_x == 0", derivative(Q, Var::x))) {
    s = Subclass::S5;
  } else {
    s = Subclass::S6;
  }
  rep.subclass = s;
  rep.frame = build_frame(rep.equation, s);
  if (s == Subclass::S6) {
    rep.canonical_target = tree.zero("Q == 0", *rep.frame.Q) ? CanonicalTarget::s6_1 : CanonicalTarget::s6_2;
  }
  rep.decisions = std::move(tree.decisions);
  return rep;
}

HyperbolicEquation s6_constant_form(const Expr& lambda) {
  Expr t = Expr::variable(Var::t), x = Expr::variable(Var::x);
  return make_equation(simplify(-t), simplify(-(lambda * x)), simplify(-(lambda * t * x)));
}

HyperbolicEquation s6_euler_poisson_form(const Expr& lambda, const Expr& mu) {
  Expr s = Expr::variable(Var::t) + Expr::variable(Var::x);
  Expr two = Expr::integer(2);
  return make_equation(simplify(two / (mu * s)), simplify(two * lambda / (mu * s)),
                       simplify(-(Expr::integer(4) * lambda) / (pow(mu, 2) * pow(s, 2))));
}

HyperbolicEquation canonical_form(const ClassificationReport& report) {
  switch (report.subclass) {
    case Subclass::S1:
      return wave_equation();
    case Subclass::S6:
      if (report.canonical_target == CanonicalTarget::s6_1) return s6_constant_form(*report.frame.P);
      return s6_euler_poisson_form(*report.frame.P, *report.frame.Q);
    default:
      throw DomainError(std::string("no canonical form for ") + subclass_name(report.subclass));
  }
}

}  // namespace hypinv
