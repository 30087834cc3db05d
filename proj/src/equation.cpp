#include "hypinv/equation.hpp"

#include "hypinv/errors.hpp"
#include "hypinv/kernel.hpp"
#include "hypinv/rational_function.hpp"

namespace hypinv {

std::string HyperbolicEquation::str() const {
  return "u_tx = (" + T.str() + ")*u_t + (" + X.str() + ")*u_x + (" + U.str() + ")*u";
}

namespace {

void collect_functions(const Expr& e, std::map<std::string, std::set<Var>>& out) {
  if (e.kind() == ExprKind::function) {
    out[e.name()].insert(e.arg());
    return;
  }
  for (const auto& c : e.children()) collect_functions(c, out);
}

Declarations used_symbols(const HyperbolicEquation& eq) {
  Declarations d;
  for (const Expr* e : {&eq.T, &eq.X, &eq.U}) {
    for (const auto& k : free_symbols(*e)) {
      if (k.kind == SymbolKey::Kind::parameter) d.parameters.insert(k.name);
      if (k.kind == SymbolKey::Kind::function) d.functions.insert(k.name);
    }
  }
  return d;
}

void check_arguments(const HyperbolicEquation& eq) {
  std::map<std::string, std::set<Var>> uses;
  for (const Expr* e : {&eq.T, &eq.X, &eq.U}) collect_functions(*e, uses);
  for (const auto& [name, vars] : uses) {
    if (vars.size() > 1) throw DomainError("function symbol '" + name + "' is applied to both t and x");
  }
}

HyperbolicEquation rebuild(const HyperbolicEquation& like, Expr T, Expr X, Expr U) {
  HyperbolicEquation r{std::move(T), std::move(X), std::move(U), like.parameters, like.functions};
  Declarations used = used_symbols(r);
  r.parameters.insert(used.parameters.begin(), used.parameters.end());
  r.functions.insert(used.functions.begin(), used.functions.end());
  check_arguments(r);
  return r;
}

RationalFunction rf(const Expr& e) { return canonical_form(e); }

}  // namespace

HyperbolicEquation make_equation(Expr T, Expr X, Expr U, const Declarations& decl) {
  HyperbolicEquation eq{std::move(T), std::move(X), std::move(U), decl.parameters, decl.functions};
  for (const Expr* e : {&eq.T, &eq.X, &eq.U}) {
    for (const auto& k : free_symbols(*e)) {
      if (k.kind == SymbolKey::Kind::parameter && !decl.parameters.count(k.name)) {
        throw UndeclaredSymbolError("undeclared parameter '" + k.name + "' in " + e->str());
      }
      if (k.kind == SymbolKey::Kind::function && !decl.functions.count(k.name)) {
        throw UndeclaredSymbolError("undeclared function symbol '" + k.name + "' in " + e->str());
      }
    }
  }
  check_arguments(eq);
  return eq;
}

HyperbolicEquation make_equation(Expr T, Expr X, Expr U) {
  HyperbolicEquation eq{std::move(T), std::move(X), std::move(U), {}, {}};
  return make_equation(eq.T, eq.X, eq.U, used_symbols(eq));
}

HyperbolicEquation wave_equation() { return make_equation(Expr::integer(0), Expr::integer(0), Expr::integer(0)); }

HyperbolicEquation gauge_transform(const HyperbolicEquation& eq, const Expr& c) {
  if (is_identically_zero(c)) throw DomainError("gauge factor is identically zero");
  RationalFunction C = rf(c);
  RationalFunction ct = C.derivative(Var::t);
  RationalFunction cx = C.derivative(Var::x);
  RationalFunction ctx = ct.derivative(Var::x);
  RationalFunction T = rf(eq.T), X = rf(eq.X), U = rf(eq.U);
  RationalFunction lt = ct / C, lx = cx / C;
  return rebuild(eq, to_expr(T - lx), to_expr(X - lt), to_expr(U + T * lt + X * lx - ctx / C));
}

HyperbolicEquation reparametrize(const HyperbolicEquation& eq, const Expr& f, const Expr& g, const Expr& f_inv,
                                 const Expr& g_inv) {
  if (depends_on(f, Var::x)) throw DomainError("f must depend on t only: " + f.str());
  if (depends_on(g, Var::t)) throw DomainError("g must depend on x only: " + g.str());
  if (depends_on(f_inv, Var::x) || depends_on(g_inv, Var::t)) {
    throw DomainError("inverses must be univariate in their own variable");
  }
  RationalFunction fp = rf(f).derivative(Var::t);
  RationalFunction gp = rf(g).derivative(Var::x);
  if (is_identically_zero(to_expr(fp)) || is_identically_zero(to_expr(gp))) {
    throw DomainError("reparametrization has vanishing derivative");
  }
  Substitution in_t;
  in_t.t = f_inv;
  Substitution in_x;
  in_x.x = g_inv;
  if (!is_identically_zero(substitute(f, in_t) - Expr::variable(Var::t))) {
    throw DomainError("f(f_inv(t)) - t is not identically zero");
  }
  if (!is_identically_zero(substitute(g, in_x) - Expr::variable(Var::x))) {
    throw DomainError("g(g_inv(x)) - x is not identically zero");
  }
  Substitution back;
  back.t = f_inv;
  back.x = g_inv;
  auto compose = [&](const RationalFunction& r) { return simplify(substitute(to_expr(r), back)); };
  RationalFunction T = rf(eq.T), X = rf(eq.X), U = rf(eq.U);
  return rebuild(eq, compose(T / gp), compose(X / fp), compose(U / (fp * gp)));
}

HyperbolicEquation swap_variables(const HyperbolicEquation& eq) {
  Substitution s;
  s.t = Expr::variable(Var::x);
  s.x = Expr::variable(Var::t);
  return rebuild(eq, simplify(substitute(eq.X, s)), simplify(substitute(eq.T, s)), simplify(substitute(eq.U, s)));
}

HyperbolicEquation specialize(const HyperbolicEquation& eq, const std::map<std::string, Expr>& parameters,
                              const std::map<std::string, Expr>& functions) {
  Substitution s;
  s.parameters = parameters;
  s.functions = functions;
  HyperbolicEquation r{simplify(substitute(eq.T, s)), simplify(substitute(eq.X, s)), simplify(substitute(eq.U, s)),
                       eq.parameters, eq.functions};
  for (const auto& [name, v] : parameters) r.parameters.erase(name);
  for (const auto& [name, v] : functions) r.functions.erase(name);
  Declarations used = used_symbols(r);
  r.parameters.insert(used.parameters.begin(), used.parameters.end());
  check_arguments(r);
  return r;
}

}  // namespace hypinv
