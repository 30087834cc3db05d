#include "hypinv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "hypinv/errors.hpp"
#include "hypinv/evaluate.hpp"
#include "hypinv/rational_function.hpp"

namespace hypinv {

Expr simplify(const Expr& e) { return to_expr(canonical_form(e)); }

Expr differentiate(const Expr& e, Var v) {
  switch (e.kind()) {
    case ExprKind::constant:
    case ExprKind::parameter:
      return Expr::integer(0);
    case ExprKind::variable:
      return Expr::integer(e.arg() == v ? 1 : 0);
    case ExprKind::function:
      if (e.arg() != v) return Expr::integer(0);
      return Expr::function(e.name(), e.order() + 1, e.arg());
    case ExprKind::sum: {
      std::vector<Expr> terms;
      for (const auto& c : e.children()) {
        Expr d = differentiate(c, v);
        if (!d.is_zero()) terms.push_back(d);
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::product: {
      const auto& ch = e.children();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        Expr d = differentiate(ch[i], v);
        if (d.is_zero()) continue;
        std::vector<Expr> f = ch;
        f[i] = d;
        terms.push_back(Expr::product(std::move(f)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::quotient: {
      const Expr& n = e.children()[0];
      const Expr& d = e.children()[1];
      Expr dn = differentiate(n, v);
      Expr dd = differentiate(d, v);
      if (dd.is_zero()) return dn.is_zero() ? dn : dn / d;
      Expr top = dn.is_zero() ? -(n * dd) : dn * d - n * dd;
      return top / pow(d, 2);
    }
    case ExprKind::power: {
      const Expr& b = e.children()[0];
      Expr db = differentiate(b, v);
      if (db.is_zero()) return db;
      long k = e.exponent();
      Expr lead = Expr::integer(k);
      Expr rest = k - 1 == 1 ? b : pow(b, k - 1);
      if (k - 1 == 0) return lead * db;
      return Expr::product({lead, rest, db});
    }
    case ExprKind::log: {
      const Expr& g = e.children()[0];
      Expr dg = differentiate(g, v);
      return dg.is_zero() ? dg : dg / g;
    }
    case ExprKind::exp: {
      Expr dg = differentiate(e.children()[0], v);
      return dg.is_zero() ? dg : dg * e;
    }
    case ExprKind::negate: {
      Expr d = differentiate(e.children()[0], v);
      return d.is_zero() ? d : -d;
    }
  }
  return Expr::integer(0);
}

Expr derivative(const Expr& e, Var v) { return to_expr(canonical_form(e).derivative(v)); }

namespace {

class SampleSource {
 public:
  SampleSource(std::uint64_t seed, double low, double high) : rng_(seed), low_(low), high_(high) {}

  double draw() {
    double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    double mag = low_ + (high_ - low_) * u;
    return (rng_() & 1U) ? -mag : mag;
  }

 private:
  std::mt19937_64 rng_;
  double low_;
  double high_;
};

}  // namespace

ZeroTestResult zero_test(const Expr& e, const ZeroTestOptions& opts) {
  const RationalFunction& r = canonical_form(e);
  if (r.is_zero()) return {true, ZeroMethod::symbolic, 0};
  if (!r.has_transcendental()) return {false, ZeroMethod::symbolic, 0};

  Expr num = to_expr(RationalFunction(r.numerator()));
  std::set<SymbolKey> syms = free_symbols(num);
  std::vector<SymbolKey> keys(syms.begin(), syms.end());
  SampleSource src(opts.seed, opts.low, opts.high);

  int regular = 0, vanishing = 0;
  for (int draw = 0; draw < opts.max_draws && regular < opts.samples; ++draw) {
    Binding b;
    std::vector<double> vals;
    for (const auto& k : keys) {
      double v = src.draw();
      while (std::find(vals.begin(), vals.end(), v) != vals.end()) v = src.draw();
      vals.push_back(v);
      b.set(k, v);
    }
    ScaledValue sv;
    try {
      sv = evaluate_scaled(num, b);
    } catch (const SingularEvaluation&) {
      continue;
    }
    ++regular;
    if (std::fabs(sv.value) <= opts.tol * sv.scale) ++vanishing;
  }
  if (vanishing < regular) return {false, ZeroMethod::probabilistic, regular, vanishing};
  if (regular < opts.min_samples) {
    throw IndeterminateError("zero test found only " + std::to_string(regular) + " regular samples of " +
                             std::to_string(opts.max_draws) + " draws");
  }
  return {true, ZeroMethod::probabilistic, regular, vanishing};
}

std::optional<Expr> is_constant(const Expr& e, const ZeroTestOptions& opts) {
  const RationalFunction& r = canonical_form(e);
  for (Var v : {Var::t, Var::x}) {
    if (!is_identically_zero(to_expr(r.derivative(v)), opts)) return std::nullopt;
  }
  return to_expr(r);
}

namespace {

struct Substituter {
  const Substitution& s;
  std::unordered_map<const void*, Expr> memo;
  std::map<std::pair<std::string, int>, std::pair<Expr, std::optional<Var>>> bodies;

  const std::optional<Expr>& target(Var v) const { return v == Var::t ? s.t : s.x; }

  Expr image_of(Var v) const {
    const auto& tv = target(v);
    return tv ? *tv : Expr::variable(v);
  }

  // k-th derivative of a definition, with its variable (if any).
  const std::pair<Expr, std::optional<Var>>& body(const std::string& name, int k) {
    auto key = std::make_pair(name, k);
    if (auto it = bodies.find(key); it != bodies.end()) return it->second;
    const Expr& def = s.functions.at(name);
    bool has_t = depends_on(def, Var::t);
    bool has_x = depends_on(def, Var::x);
    if (has_t && has_x) throw DomainError("definition of function '" + name + "' depends on both t and x");
    std::optional<Var> w;
    if (has_t) w = Var::t;
    if (has_x) w = Var::x;
    Expr d = k == 0 ? def : differentiate(body(name, k - 1).first, w.value_or(Var::t));
    return bodies.emplace(key, std::make_pair(d, w)).first->second;
  }

  Expr run(const Expr& e) {
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    Expr r = node(e);
    memo.emplace(e.id(), r);
    return r;
  }

  Expr node(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::constant:
        return e;
      case ExprKind::parameter: {
        auto it = s.parameters.find(e.name());
        return it == s.parameters.end() ? e : it->second;
      }
      case ExprKind::variable:
        return image_of(e.arg());
      case ExprKind::function: {
        if (s.functions.count(e.name())) {
          const auto& [d, w] = body(e.name(), e.order());
          Substitution inner;
          inner.parameters = s.parameters;
          if (w) (*w == Var::t ? inner.t : inner.x) = image_of(e.arg());
          return substitute(d, inner);
        }
        const auto& tv = target(e.arg());
        if (!tv) return e;
        if (tv->kind() == ExprKind::variable) return Expr::function(e.name(), e.order(), tv->arg());
        throw DomainError("function symbol '" + e.name() + "' would take a compound argument " + tv->str());
      }
      case ExprKind::sum:
      case ExprKind::product: {
        std::vector<Expr> c;
        c.reserve(e.children().size());
        for (const auto& ch : e.children()) c.push_back(run(ch));
        return e.kind() == ExprKind::sum ? Expr::sum(std::move(c)) : Expr::product(std::move(c));
      }
      case ExprKind::quotient:
        return Expr::quotient(run(e.children()[0]), run(e.children()[1]));
      case ExprKind::power:
        return Expr::power(run(e.children()[0]), e.exponent());
      case ExprKind::log:
        return Expr::log(run(e.children()[0]));
      case ExprKind::exp:
        return Expr::exp(run(e.children()[0]));
      case ExprKind::negate:
        return Expr::negate(run(e.children()[0]));
    }
    return e;
  }
};

}  // namespace

Expr substitute(const Expr& e, const Substitution& s) {
  if (s.empty()) return e;
  Substituter sub{s, {}, {}};
  return sub.run(e);
}

}  // namespace hypinv
