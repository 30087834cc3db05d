#include "hypinv/rational_function.hpp"

#include "hypinv/errors.hpp"

namespace hypinv {

RationalFunction RationalFunction::constant(const mpq_class& c) {
  return RationalFunction(Polynomial(c.get_num()), Polynomial(c.get_den()), true);
}

RationalFunction RationalFunction::make(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw SingularEvaluation("division by an identically zero expression");
  if (num.is_zero()) return RationalFunction();
  if (!den.is_one()) {
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = *num.divide_exact(g);
      den = *den.divide_exact(g);
    }
  }
  if (den.sign() < 0) {
    num = -num;
    den = -den;
  }
  return RationalFunction(std::move(num), std::move(den), true);
}

mpq_class RationalFunction::constant_value() const {
  mpq_class q(num_.constant_value(), den_.constant_value());
  q.canonicalize();
  return q;
}

bool RationalFunction::has_transcendental() const {
  for (const Polynomial* p : {&num_, &den_}) {
    for (const Atom* a : p->atoms()) {
      if (a->kind == AtomKind::log || a->kind == AtomKind::exp) return true;
    }
  }
  return false;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return RationalFunction(num_ + o.num_);
  if (den_ == o.den_) return make(num_ + o.num_, den_);
  Polynomial g = gcd(den_, o.den_);
  if (g.is_one()) {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_, true);
  }
  Polynomial d1 = *den_.divide_exact(g);
  Polynomial d2 = *o.den_.divide_exact(g);
  Polynomial num = num_ * d2 + o.num_ * d1;
  if (num.is_zero()) return RationalFunction();
  Polynomial den = d1 * o.den_;
  Polynomial g2 = gcd(num, g);
  if (!g2.is_one()) {
    num = *num.divide_exact(g2);
    den = *den.divide_exact(g2);
  }
  return RationalFunction(std::move(num), std::move(den), true);
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, true); }

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction();
  if (den_.is_one() && o.den_.is_one()) return RationalFunction(num_ * o.num_);
  Polynomial g1 = gcd(num_, o.den_);
  Polynomial g2 = gcd(o.num_, den_);
  Polynomial n1 = g1.is_one() ? num_ : *num_.divide_exact(g1);
  Polynomial d2 = g1.is_one() ? o.den_ : *o.den_.divide_exact(g1);
  Polynomial n2 = g2.is_one() ? o.num_ : *o.num_.divide_exact(g2);
  Polynomial d1 = g2.is_one() ? den_ : *den_.divide_exact(g2);
  Polynomial num = n1 * n2;
  Polynomial den = d1 * d2;
  if (den.sign() < 0) {
    num = -num;
    den = -den;
  }
  return RationalFunction(std::move(num), std::move(den), true);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw SingularEvaluation("division by an identically zero expression");
  RationalFunction inv(o.den_, o.num_, true);
  if (inv.den_.sign() < 0) {
    inv.num_ = -inv.num_;
    inv.den_ = -inv.den_;
  }
  return *this * inv;
}

RationalFunction RationalFunction::pow(long e) const {
  if (e == 0) return constant(1);
  if (e < 0) {
    if (is_zero()) throw SingularEvaluation("negative power of an identically zero expression");
    RationalFunction inv(den_, num_, true);
    if (inv.den_.sign() < 0) {
      inv.num_ = -inv.num_;
      inv.den_ = -inv.den_;
    }
    return inv.pow(-e);
  }
  auto n = static_cast<unsigned>(e);
  return RationalFunction(num_.pow(n), den_.pow(n), true);
}

namespace {

// D_v of one atom.
RationalFunction atom_derivative(const Atom* a, Var v) {
  switch (a->kind) {
    case AtomKind::variable:
      return RationalFunction::constant(a->arg == v ? 1 : 0);
    case AtomKind::parameter:
      return RationalFunction();
    case AtomKind::function:
      if (a->arg != v) return RationalFunction();
      return RationalFunction(Polynomial::atom(function_atom(a->name, a->order + 1, a->arg)));
    case AtomKind::log: {
      const RationalFunction& g = canonical_form(a->inner);
      return g.derivative(v) / g;
    }
    case AtomKind::exp: {
      const RationalFunction& g = canonical_form(a->inner);
      return g.derivative(v) * RationalFunction(Polynomial::atom(a));
    }
  }
  return RationalFunction();
}

RationalFunction poly_derivative(const Polynomial& p, Var v) {
  Polynomial poly_part;
  RationalFunction rest;
  for (const Atom* a : p.atoms()) {
    RationalFunction da = atom_derivative(a, v);
    if (da.is_zero()) continue;
    Polynomial pa = p.partial(a);
    if (da.is_polynomial()) {
      poly_part = poly_part + pa * da.numerator();
    } else {
      rest = rest + RationalFunction(pa) * da;
    }
  }
  return rest + RationalFunction(std::move(poly_part));
}

}  // namespace

RationalFunction RationalFunction::derivative(Var v) const {
  RationalFunction dn = poly_derivative(num_, v);
  if (den_.is_one()) return dn;
  RationalFunction dd = poly_derivative(den_, v);
  if (dd.is_zero()) return dn * RationalFunction(Polynomial(1), den_, true);
  if (dn.is_polynomial() && dd.is_polynomial()) {
    // (n' d - n d') / d^2 with the common part of d and d' removed first.
    const Polynomial& ddp = dd.numerator();
    Polynomial g = gcd(den_, ddp);
    Polynomial d1 = g.is_one() ? den_ : *den_.divide_exact(g);
    Polynomial dd1 = g.is_one() ? ddp : *ddp.divide_exact(g);
    Polynomial num = dn.numerator() * d1 - num_ * dd1;
    return make(std::move(num), den_ * d1);
  }
  RationalFunction inv_den(Polynomial(1), den_, true);
  return dn * inv_den - (*this) * dd * inv_den;
}

// ---------------------------------------------------------------- Expr bridge

namespace {

Expr poly_to_expr(const Polynomial& p) {
  if (p.is_zero()) return Expr::integer(0);
  std::vector<Expr> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    std::vector<Expr> factors;
    mpz_class c = abs(t.coeff);
    if (c != 1 || t.mono.is_one()) factors.push_back(Expr::constant(mpq_class(c)));
    for (const auto& [a, e] : t.mono.factors()) {
      Expr ae = a->to_expr();
      factors.push_back(e == 1 ? ae : Expr::power(ae, static_cast<long>(e)));
    }
    Expr term = Expr::product(std::move(factors));
    terms.push_back(sgn(t.coeff) < 0 ? Expr::negate(term) : term);
  }
  return Expr::sum(std::move(terms));
}

// Single atom with coefficient one, if r is exactly that.
const Atom* lone_atom(const RationalFunction& r) {
  if (!r.is_polynomial()) return nullptr;
  const auto& terms = r.numerator().terms();
  if (terms.size() != 1 || terms[0].coeff != 1) return nullptr;
  const auto& f = terms[0].mono.factors();
  if (f.size() != 1 || f[0].second != 1) return nullptr;
  return f[0].first;
}

RationalFunction compute_canonical(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::constant:
      return RationalFunction::constant(e.value());
    case ExprKind::parameter:
      return RationalFunction(Polynomial::atom(parameter_atom(e.name())));
    case ExprKind::variable:
      return RationalFunction(Polynomial::atom(variable_atom(e.arg())));
    case ExprKind::function:
      return RationalFunction(Polynomial::atom(function_atom(e.name(), e.order(), e.arg())));
    case ExprKind::sum: {
      // Polynomial terms are summed directly; rational ones pairwise.
      Polynomial poly;
      RationalFunction acc;
      for (const auto& c : e.children()) {
        const RationalFunction& r = canonical_form(c);
        if (r.is_polynomial()) {
          poly = poly + r.numerator();
        } else {
          acc = acc + r;
        }
      }
      return acc + RationalFunction(std::move(poly));
    }
    case ExprKind::product: {
      RationalFunction acc = RationalFunction::constant(1);
      for (const auto& c : e.children()) acc = acc * canonical_form(c);
      return acc;
    }
    case ExprKind::quotient:
      return canonical_form(e.children()[0]) / canonical_form(e.children()[1]);
    case ExprKind::power:
      return canonical_form(e.children()[0]).pow(e.exponent());
    case ExprKind::negate:
      return -canonical_form(e.children()[0]);
    case ExprKind::log: {
      const RationalFunction& g = canonical_form(e.children()[0]);
      if (g.is_constant() && g.constant_value() == 1) return RationalFunction();
      if (const Atom* a = lone_atom(g); a && a->kind == AtomKind::exp) return canonical_form(a->inner);
      return RationalFunction(Polynomial::atom(log_atom(to_expr(g))));
    }
    case ExprKind::exp: {
      const RationalFunction& g = canonical_form(e.children()[0]);
      if (g.is_zero()) return RationalFunction::constant(1);
      if (const Atom* a = lone_atom(g); a && a->kind == AtomKind::log) return canonical_form(a->inner);
      return RationalFunction(Polynomial::atom(exp_atom(to_expr(g))));
    }
  }
  return RationalFunction();
}

}  // namespace

const RationalFunction& canonical_form(const Expr& e) {
  const detail::ExprNode& n = e.node();
  std::call_once(n.canonical_once, [&] {
    if (!n.canonical) n.canonical = std::make_shared<const RationalFunction>(compute_canonical(e));
  });
  return *n.canonical;
}

Expr attach_canonical(Expr e, std::shared_ptr<const RationalFunction> rf) {
  const detail::ExprNode& n = e.node();
  std::call_once(n.canonical_once, [&] { n.canonical = std::move(rf); });
  return e;
}

Expr to_expr(const RationalFunction& r) {
  Expr num = poly_to_expr(r.numerator());
  Expr e = r.is_polynomial() ? num : Expr::quotient(num, poly_to_expr(r.denominator()));
  return attach_canonical(std::move(e), std::make_shared<const RationalFunction>(r));
}

}  // namespace hypinv
