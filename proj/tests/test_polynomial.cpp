#include <gtest/gtest.h>

#include <random>

#include "hypinv/parser.hpp"
#include "hypinv/polynomial.hpp"
#include "hypinv/rational_function.hpp"

using namespace hypinv;

namespace {

Polynomial P(const char* s) {
  RationalFunction r = canonical_form(parse(s));
  EXPECT_TRUE(r.is_polynomial()) << s;
  return r.numerator();
}

}  // namespace

TEST(Polynomial, ArithmeticIsCanonical) {
  EXPECT_EQ(P("(t+x)^2"), P("t^2+2*t*x+x^2"));
  EXPECT_EQ(P("(t-x)*(t+x)"), P("t^2-x^2"));
  EXPECT_TRUE(P("(t+x)-(x+t)").is_zero());
  EXPECT_EQ(P("(t+1)^3").degree(variable_atom(Var::t)), 3u);
}

TEST(Polynomial, GcdOfUnivariate) {
  Polynomial g = gcd(P("t^2-1"), P("t^2+2*t+1"));
  EXPECT_EQ(g, P("t+1"));
}

TEST(Polynomial, GcdMultivariate) {
  Polynomial a = P("(t+x)^2*(t-2*x)*(p(t)+x)");
  Polynomial b = P("(t+x)*(p(t)+x)^2*(t*x+3)");
  EXPECT_EQ(gcd(a, b), P("(t+x)*(p(t)+x)"));
}

TEST(Polynomial, GcdWithContent) {
  EXPECT_EQ(gcd(P("6*t^2*x"), P("4*t*x^3")), P("2*t*x"));
  EXPECT_EQ(gcd(P("6*t+6"), P("9*t+9")), P("3*t+3"));
  EXPECT_EQ(gcd(P("t^3"), P("x^2+1")), P("1"));
}

TEST(Polynomial, GcdIsCommonDivisor) {
  const char* cases[][2] = {
      {"(t^2*x - 3*x + lambda)*(t+x)^3", "(t^2*x - 3*x + lambda)^2*(t-x)"},
      {"(q(t)*x + p'(t))^2 * (x + 1)", "(q(t)*x + p'(t)) * (x - 1)"},
      {"(t*x+1)^4 - 1", "(t*x+1)^2 - 1"},
  };
  for (auto& c : cases) {
    Polynomial a = P(c[0]);
    Polynomial b = P(c[1]);
    Polynomial g = gcd(a, b);
    ASSERT_TRUE(a.divide_exact(g).has_value()) << c[0];
    ASSERT_TRUE(b.divide_exact(g).has_value()) << c[1];
    Polynomial ca = *a.divide_exact(g);
    Polynomial cb = *b.divide_exact(g);
    EXPECT_TRUE(gcd(ca, cb).is_one()) << c[0];
  }
}

TEST(RationalFunction, LowestTerms) {
  RationalFunction r = canonical_form(parse("(t^2-x^2)/(t+x)"));
  EXPECT_TRUE(r.is_polynomial());
  EXPECT_EQ(r.numerator(), P("t-x"));
  RationalFunction s = canonical_form(parse("(2/(t+x)^2)*(t+x)^2/2"));
  EXPECT_TRUE(s.is_constant());
  EXPECT_EQ(s.constant_value(), 1);
}

TEST(RationalFunction, DenominatorSignNormalized) {
  RationalFunction a = canonical_form(parse("1/(x-t)"));
  RationalFunction b = canonical_form(parse("-1/(t-x)"));
  EXPECT_EQ(a, b);
  EXPECT_GT(a.denominator().sign(), 0);
}

TEST(RationalFunction, LogExpRewrites) {
  EXPECT_TRUE(canonical_form(parse("ln(1)")).is_zero());
  EXPECT_EQ(canonical_form(parse("exp(0)")).constant_value(), 1);
  EXPECT_EQ(canonical_form(parse("ln(exp(t*x))")), canonical_form(parse("x*t")));
  EXPECT_EQ(canonical_form(parse("exp(ln(t+x))")), canonical_form(parse("x+t")));
  EXPECT_EQ(canonical_form(parse("ln((t+x)^2/(t+x))")), canonical_form(parse("ln(x+t)")));
}

TEST(RationalFunction, Derivative) {
  EXPECT_EQ(canonical_form(parse("t^2*x^2")).derivative(Var::t), canonical_form(parse("2*t*x^2")));
  EXPECT_EQ(canonical_form(parse("p(t)*x")).derivative(Var::t), canonical_form(parse("p'(t)*x")));
  EXPECT_TRUE(canonical_form(parse("p(t)*x")).derivative(Var::t).derivative(Var::t) ==
              canonical_form(parse("p''(t)*x")));
  EXPECT_TRUE(canonical_form(parse("q(t)")).derivative(Var::x).is_zero());
  auto d = canonical_form(parse("ln(t+x)")).derivative(Var::t).derivative(Var::x);
  EXPECT_EQ(d, canonical_form(parse("-(t+x)^-2")));
  EXPECT_EQ(canonical_form(parse("exp(t*x)")).derivative(Var::t), canonical_form(parse("x*exp(t*x)")));
}

TEST(Polynomial, GcdIntegerContentInsideFactor) {
  Polynomial a = P("-3*t^3*x^3 - 6*t^3*x^2 - 2*t^2*x^3 + 2*t^2*x^2 + 4*t*x^2");
  Polynomial b = P("3*t^2*x + 6*t*x^3 + 2*t*x + 4*x^3");
  EXPECT_EQ(gcd(a, b), P("3*t*x + 2*x"));
}

TEST(Polynomial, RandomProducts) {
  std::mt19937_64 rng(3);
  const Atom* t = variable_atom(Var::t);
  const Atom* x = variable_atom(Var::x);
  const Atom* a = parameter_atom("a");
  auto random_poly = [&](int terms, unsigned deg) {
    Polynomial p;
    for (int i = 0; i < terms; ++i) {
      p = p + Polynomial(static_cast<long>(rng() % 7) - 3) * Polynomial::atom(t, rng() % (deg + 1)) *
                  Polynomial::atom(x, rng() % (deg + 1)) * Polynomial::atom(a, rng() % 2);
    }
    return p;
  };
  for (int i = 0; i < 300; ++i) {
    Polynomial g = random_poly(2 + static_cast<int>(rng() % 2), 2);
    Polynomial u = random_poly(3, 3), w = random_poly(3, 3);
    if (g.is_zero() || u.is_zero() || w.is_zero()) continue;
    Polynomial pa = u * g * g, pb = w * g;
    auto q = pa.divide_exact(g);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, u * g);
    EXPECT_FALSE((pb + Polynomial(1)).divide_exact(g).has_value() && !g.is_constant());
    Polynomial h = gcd(pa, pb);
    ASSERT_TRUE(h.divide_exact(g).has_value() || h.divide_exact(-g).has_value()) << g.str();
    Polynomial ca = *pa.divide_exact(h), cb = *pb.divide_exact(h);
    EXPECT_TRUE(gcd(ca, cb).is_one()) << pa.str() << " ; " << pb.str();
  }
}
