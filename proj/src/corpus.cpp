#include "hypinv/corpus.hpp"

#include "hypinv/kernel.hpp"
#include "hypinv/parser.hpp"

namespace hypinv {

namespace {

HyperbolicEquation eq3(const char* T, const char* X, const char* U) { return make_equation(parse(T), parse(X), parse(U)); }

}  // namespace

HyperbolicEquation s2_witness() { return eq3("t^2*x^2", "0", "1"); }
HyperbolicEquation s3_witness() { return eq3("0", "x^2", "1"); }
HyperbolicEquation s4_witness() { return eq3("0", "(t-x)^3", "(t-x)^2"); }

HyperbolicEquation s5_witness() { return s5_witness(Expr::parameter("lambda"), parse("q(x)")); }

HyperbolicEquation s5_witness(const Expr& lambda, const Expr& q) {
  Expr s = parse("t+x");
  Expr two = Expr::integer(2);
  Expr T = -(two * (lambda - Expr::integer(1))) / (q * s);
  Expr U = two * (lambda + (lambda - Expr::integer(1)) * s) / (q * pow(s, 2));
  return make_equation(T, Expr::integer(1), U);
}

HyperbolicEquation s6_1_witness() { return eq3("-t", "-lambda*x", "-lambda*t*x"); }

HyperbolicEquation s6_2_witness() {
  return eq3("2*mu^-1*(t+x)^-1", "2*lambda*mu^-1*(t+x)^-1", "-4*lambda*mu^-2*(t+x)^-2");
}

HyperbolicEquation counterexample() { return counterexample(parse("p(t)"), parse("q(t)")); }

HyperbolicEquation counterexample(const Expr& p, const Expr& q) {
  Expr s = parse("t+x");
  Expr one = Expr::integer(1), two = Expr::integer(2);
  Expr X = two * (p - one) / (q * s);
  Expr U = two / (q * pow(s, 2)) * (one - (p - one) * s);
  return make_equation(one, X, U);
}

std::vector<Witness> classification_witnesses() {
  Domain d;
  return {
      {"wave", wave_equation(), Subclass::S1, d},
      {"S2", s2_witness(), Subclass::S2, {0.1, 1.1, 0.2, 0.6}},
      {"S3", s3_witness(), Subclass::S3, d},
      {"S4", s4_witness(), Subclass::S4, {1.5, 2.5, 0.2, 1.2}},
      {"S5", s5_witness(), Subclass::S5, d},
      {"S6_1", s6_1_witness(), Subclass::S6, d},
      {"S6_2", s6_2_witness(), Subclass::S6, d},
  };
}

std::vector<Witness> manifold_witnesses() {
  Domain d;
  return {
      {"S2", s2_witness(), Subclass::S2, {0.1, 1.1, 0.2, 0.6}},
      {"S2 counterexample", counterexample(parse("t"), parse("t+2")), Subclass::S2, d},
      {"S3", s3_witness(), Subclass::S3, d},
      {"S4", s4_witness(), Subclass::S4, {1.5, 2.5, 0.2, 1.2}},
      {"S5", s5_witness(Expr::integer(3), parse("x+2")), Subclass::S5, d},
  };
}

}  // namespace hypinv
