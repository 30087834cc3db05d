#include <gtest/gtest.h>

#include "hypinv/corpus.hpp"
#include "hypinv/document.hpp"
#include "hypinv/equation.hpp"
#include "hypinv/errors.hpp"
#include "hypinv/invariants.hpp"
#include "hypinv/kernel.hpp"
#include "hypinv/parser.hpp"
#include "random_expr.hpp"

using namespace hypinv;
using hypinv::testing::ExprGen;

namespace {

bool same(const Expr& a, const Expr& b) { return is_identically_zero(a - b); }

bool usable(const Expr& e) {
  try {
    return !simplify(e).is_zero();
  } catch (const SingularEvaluation&) {
    return false;
  }
}

Expr random_usable(ExprGen& g, int depth) {
  for (;;) {
    Expr e = g.gen(depth);
    if (usable(e)) return e;
  }
}

HyperbolicEquation random_equation(ExprGen& g) {
  return make_equation(random_usable(g, 2), random_usable(g, 2), random_usable(g, 2));
}

}  // namespace

TEST(MakeEquation, Witnesses) {
  HyperbolicEquation w = wave_equation();
  EXPECT_TRUE(w.T.is_zero() && w.X.is_zero() && w.U.is_zero());
  HyperbolicEquation s2 = s2_witness();
  EXPECT_EQ(s2.T, parse("t^2*x^2"));
  EXPECT_TRUE(s2.X.is_zero());
  EXPECT_EQ(s2.U, Expr::integer(1));
  HyperbolicEquation c = counterexample();
  EXPECT_EQ(c.functions, (std::set<std::string>{"p", "q"}));
  EXPECT_TRUE(s6_1_witness().parameters.count("lambda"));
}

TEST(MakeEquation, UndeclaredSymbols) {
  Declarations d;
  d.parameters = {"a"};
  EXPECT_NO_THROW(make_equation(parse("a*t"), parse("0"), parse("1"), d));
  EXPECT_THROW(make_equation(parse("b*t"), parse("0"), parse("1"), d), UndeclaredSymbolError);
  EXPECT_THROW(make_equation(parse("p(t)"), parse("0"), parse("1"), d), UndeclaredSymbolError);
  d.functions = {"p"};
  EXPECT_NO_THROW(make_equation(parse("p(t)"), parse("p'(t)"), parse("1"), d));
  EXPECT_THROW(make_equation(parse("p(t)"), parse("p(x)"), parse("1"), d), DomainError);
}

TEST(Gauge, WaveByExpTx) {
  HyperbolicEquation g = gauge_transform(wave_equation(), parse("exp(t*x)"));
  EXPECT_TRUE(same(g.T, parse("-t")));
  EXPECT_TRUE(same(g.X, parse("-x")));
  EXPECT_TRUE(same(g.U, parse("-(1 + t*x)")));
  auto [H, K] = laplace_invariants(g);
  EXPECT_TRUE(is_identically_zero(H));
  EXPECT_TRUE(is_identically_zero(K));
}

TEST(Gauge, IdentityAndZero) {
  HyperbolicEquation eq = s4_witness();
  HyperbolicEquation g = gauge_transform(eq, Expr::integer(1));
  EXPECT_TRUE(same(g.T, eq.T) && same(g.X, eq.X) && same(g.U, eq.U));
  EXPECT_THROW(gauge_transform(eq, parse("t - t")), DomainError);
}

TEST(Gauge, LaplaceInvariantsPreserved) {
  ExprGen g(2024, false);
  for (int i = 0; i < 50; ++i) {
    HyperbolicEquation eq = random_equation(g);
    Expr c = random_usable(g, 2);
    HyperbolicEquation h = gauge_transform(eq, c);
    auto a = laplace_invariants(eq);
    auto b = laplace_invariants(h);
    EXPECT_TRUE(same(a.H, b.H)) << "case " << i << " c = " << c.str();
    EXPECT_TRUE(same(a.K, b.K)) << "case " << i << " c = " << c.str();
  }
}

TEST(Gauge, TranscendentalFactor) {
  HyperbolicEquation eq = counterexample();
  HyperbolicEquation h = gauge_transform(eq, parse("exp(t + x)*(1 + t^2)"));
  auto a = laplace_invariants(eq);
  auto b = laplace_invariants(h);
  EXPECT_TRUE(same(a.H, b.H));
  EXPECT_TRUE(same(a.K, b.K));
}

TEST(Gauge, Composition) {
  ExprGen g(77, false);
  for (int i = 0; i < 10; ++i) {
    HyperbolicEquation eq = random_equation(g);
    Expr c1 = random_usable(g, 1), c2 = random_usable(g, 1);
    if (!usable(c1 * c2)) continue;
    HyperbolicEquation twice = gauge_transform(gauge_transform(eq, c1), c2);
    HyperbolicEquation once = gauge_transform(eq, c1 * c2);
    EXPECT_TRUE(same(twice.T, once.T) && same(twice.X, once.X) && same(twice.U, once.U)) << "case " << i;
  }
}

TEST(Gauge, OvsiannikovPreserved) {
  ExprGen g(5150, false);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    HyperbolicEquation eq = random_equation(g);
    auto a = laplace_invariants(eq);
    if (is_identically_zero(a.H)) continue;
    HyperbolicEquation h = gauge_transform(eq, random_usable(g, 2));
    auto b = laplace_invariants(h);
    auto pa = ovsiannikov_invariants(a.H, a.K);
    auto pb = ovsiannikov_invariants(b.H, b.K);
    EXPECT_TRUE(same(pa.P, pb.P));
    EXPECT_TRUE(same(pa.Q, pb.Q));
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Reparametrize, Identity) {
  HyperbolicEquation eq = s2_witness();
  HyperbolicEquation r = reparametrize(eq, parse("t"), parse("x"), parse("t"), parse("x"));
  EXPECT_TRUE(same(r.T, eq.T) && same(r.X, eq.X) && same(r.U, eq.U));
}

TEST(Reparametrize, WaveStaysWave) {
  HyperbolicEquation r = reparametrize(wave_equation(), parse("2*t"), parse("x"), parse("t/2"), parse("x"));
  EXPECT_TRUE(r.T.is_zero() && r.X.is_zero() && r.U.is_zero());
}

TEST(Reparametrize, ScalingFormula) {
  // tb = 2t, xb = 3x: T/g' = t^2 x^2 / 3 and U/(f'g') = 1/6, composed with t/2, x/3.
  HyperbolicEquation r = reparametrize(s2_witness(), parse("2*t"), parse("3*x"), parse("t/2"), parse("x/3"));
  EXPECT_TRUE(same(r.T, parse("(t/2)^2*(x/3)^2/3")));
  EXPECT_TRUE(r.X.is_zero());
  EXPECT_TRUE(same(r.U, parse("1/6")));
}

TEST(Reparametrize, PreservesOvsiannikovInvariants) {
  HyperbolicEquation eq = s4_witness();
  Expr f = parse("t/(1 + t)"), g = parse("2*x - 1");
  Expr f_inv = parse("t/(1 - t)"), g_inv = parse("(x + 1)/2");
  HyperbolicEquation r = reparametrize(eq, f, g, f_inv, g_inv);
  auto a = laplace_invariants(eq);
  auto b = laplace_invariants(r);
  auto pa = ovsiannikov_invariants(a.H, a.K);
  auto pb = ovsiannikov_invariants(b.H, b.K);
  Substitution fwd;
  fwd.t = f;
  fwd.x = g;
  EXPECT_TRUE(same(substitute(pb.P, fwd), pa.P));
  EXPECT_TRUE(same(substitute(pb.Q, fwd), pa.Q));
}

TEST(Reparametrize, Errors) {
  HyperbolicEquation eq = s3_witness();
  EXPECT_THROW(reparametrize(eq, parse("2*t"), parse("x"), parse("t/3"), parse("x")), DomainError);
  EXPECT_THROW(reparametrize(eq, parse("t + x"), parse("x"), parse("t"), parse("x")), DomainError);
  EXPECT_THROW(reparametrize(eq, parse("1"), parse("x"), parse("t"), parse("x")), DomainError);
}

TEST(Swap, ExchangesCoefficientsAndInvariants) {
  HyperbolicEquation eq = s2_witness();
  HyperbolicEquation s = swap_variables(eq);
  EXPECT_TRUE(s.T.is_zero());
  EXPECT_TRUE(same(s.X, parse("t^2*x^2")));
  auto a = laplace_invariants(eq);
  auto b = laplace_invariants(s);
  Substitution sw;
  sw.t = Expr::variable(Var::x);
  sw.x = Expr::variable(Var::t);
  EXPECT_TRUE(same(b.H, substitute(a.K, sw)));
  EXPECT_TRUE(same(b.K, substitute(a.H, sw)));
  HyperbolicEquation back = swap_variables(s);
  EXPECT_TRUE(same(back.T, eq.T) && same(back.X, eq.X) && same(back.U, eq.U));
}

TEST(Specialize, ParametersAndFunctions) {
  HyperbolicEquation eq = specialize(s5_witness(), {{"lambda", Expr::integer(3)}}, {{"q", parse("x + 2")}});
  EXPECT_TRUE(eq.parameters.empty());
  EXPECT_TRUE(eq.functions.empty());
  EXPECT_TRUE(same(eq.T, s5_witness(Expr::integer(3), parse("x + 2")).T));
}

TEST(Document, Basic) {
  HyperbolicEquation eq = load_equation(R"({"T": "t^2*x^2", "X": "0", "U": "1"})");
  EXPECT_EQ(eq.T, parse("t^2*x^2"));
  HyperbolicEquation d = load_equation(R"({"U": 1})");
  EXPECT_TRUE(d.T.is_zero());
  EXPECT_EQ(d.U, Expr::integer(1));
}

TEST(Document, ParamsAndAssume) {
  std::string doc = R"({"T": "-t", "X": "-lambda*x", "U": "-lambda*t*x", "params": {"lambda": 2.5}})";
  HyperbolicEquation eq = load_equation(doc);
  EXPECT_TRUE(eq.parameters.empty());
  EXPECT_TRUE(same(eq.X, parse("-5/2*x")));
  HyperbolicEquation a = load_equation(doc, {{"lambda", "4"}});
  EXPECT_TRUE(same(a.X, parse("-4*x")));
  HyperbolicEquation open = load_equation(R"({"T": "mu*t", "params": {"mu": null}})");
  EXPECT_TRUE(open.parameters.count("mu"));
  HyperbolicEquation expr = load_equation(R"({"T": "mu*t", "params": {"mu": "2*nu", "nu": null}})");
  EXPECT_TRUE(same(expr.T, parse("2*nu*t")));
  EXPECT_THROW(load_equation(doc, {{"kappa", "1"}}), InputError);
}

TEST(Document, Functions) {
  std::string base = R"j("T": "1", "X": "2*(p(t)-1)/(q(t)*(t+x))", "U": "2/(q(t)*(t+x)^2)*(1-(p(t)-1)*(t+x))")j";
  HyperbolicEquation sym = load_equation("{" + base + R"(, "functions": ["p", "q"]})");
  EXPECT_EQ(sym.functions, (std::set<std::string>{"p", "q"}));
  HyperbolicEquation num = load_equation("{" + base + R"(, "functions": {"p": "t", "q": "t+2"}})");
  EXPECT_TRUE(num.functions.empty());
  HyperbolicEquation ref = counterexample(parse("t"), parse("t+2"));
  EXPECT_TRUE(same(num.X, ref.X) && same(num.U, ref.U));
}

TEST(Document, InputErrors) {
  auto field_of = [](const std::string& doc) -> std::string {
    try {
      load_equation(doc);
    } catch (const InputError& e) {
      return e.field();
    }
    return "<no error>";
  };
  EXPECT_EQ(field_of("{"), "");
  EXPECT_EQ(field_of("[1]"), "");
  EXPECT_EQ(field_of(R"({"T": "t +"})"), "T");
  EXPECT_EQ(field_of(R"({"T": true})"), "T");
  EXPECT_EQ(field_of(R"({"X": "a*t"})"), "X");
  EXPECT_EQ(field_of(R"j({"U": "p(t)"})j"), "U");
  EXPECT_EQ(field_of(R"({"T": "1", "V": "2"})"), "V");
  EXPECT_EQ(field_of(R"({"T": "a", "params": {"a": "t"}})"), "params.a");
  EXPECT_EQ(field_of(R"({"T": "a", "params": {"a": [1]}})"), "params.a");
  EXPECT_EQ(field_of(R"j({"T": "p(t)", "functions": {"p": "t*x"}})j"), "functions");
  EXPECT_EQ(field_of(R"j({"T": "p(t)", "functions": 3})j"), "functions");
}

TEST(Document, ParseDecimal) {
  EXPECT_EQ(parse_decimal("2.5"), mpq_class(5, 2));
  EXPECT_EQ(parse_decimal("-3"), mpq_class(-3));
  EXPECT_EQ(parse_decimal("1e-3"), mpq_class(1, 1000));
  EXPECT_EQ(parse_decimal("0.125E2"), mpq_class(25, 2));
  EXPECT_THROW(parse_decimal("abc"), std::invalid_argument);
  EXPECT_THROW(parse_decimal("1.2.3"), std::invalid_argument);
}
