#include "hypinv/expr.hpp"

#include <functional>
#include <sstream>

namespace hypinv {

using detail::ExprNode;

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<ExprNode> new_node(ExprKind kind) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  return n;
}

void finish_hash(ExprNode& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case ExprKind::constant:
      h = mix(h, std::hash<std::string>{}(n.value.get_str()));
      break;
    case ExprKind::parameter:
    case ExprKind::variable:
      h = mix(h, std::hash<std::string>{}(n.name));
      break;
    case ExprKind::function:
      h = mix(h, std::hash<std::string>{}(n.name));
      h = mix(h, static_cast<std::size_t>(n.order));
      h = mix(h, static_cast<std::size_t>(n.arg));
      break;
    case ExprKind::power:
      h = mix(h, static_cast<std::size_t>(n.exponent));
      break;
    default:
      break;
  }
  for (const auto& c : n.children) h = mix(h, c.hash());
  n.hash = h;
}

const Expr& zero_expr() {
  static const Expr z = Expr::integer(0);
  return z;
}

}  // namespace

Expr::Expr() : Expr(zero_expr()) {}

Expr Expr::constant(const mpq_class& value) {
  auto n = new_node(ExprKind::constant);
  n->value = value;
  n->value.canonicalize();
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::parameter(const std::string& name) {
  auto n = new_node(ExprKind::parameter);
  n->name = name;
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
  auto n = new_node(ExprKind::variable);
  n->name = std::string(1, var_name(v));
  n->arg = v;
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::function(const std::string& name, int order, Var arg) {
  auto n = new_node(ExprKind::function);
  n->name = name;
  n->order = order;
  n->arg = arg;
  finish_hash(*n);
  return Expr(std::move(n));
}

namespace {

// Merges the constant children into one at the first constant's position,
// dropping it when it is the identity.
std::vector<Expr> fold_constants(std::vector<Expr> items, bool product) {
  mpq_class acc = product ? 1 : 0;
  std::ptrdiff_t first = -1;
  std::size_t count = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].is_constant()) continue;
    if (first < 0) first = static_cast<std::ptrdiff_t>(i);
    if (product) {
      acc *= items[i].value();
    } else {
      acc += items[i].value();
    }
    ++count;
  }
  bool identity = acc == (product ? 1 : 0);
  if (count == 0 || (count == 1 && !identity)) return items;
  std::vector<Expr> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (static_cast<std::ptrdiff_t>(i) == first && !identity) {
      out.push_back(Expr::constant(acc));
    } else if (!items[i].is_constant()) {
      out.push_back(std::move(items[i]));
    }
  }
  if (out.empty()) out.push_back(Expr::constant(acc));
  return out;
}

}  // namespace

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (auto& e : terms) {
    if (e.kind() == ExprKind::sum) {
      flat.insert(flat.end(), e.children().begin(), e.children().end());
    } else {
      flat.push_back(std::move(e));
    }
  }
  flat = fold_constants(std::move(flat), false);
  if (flat.empty()) return Expr::integer(0);
  if (flat.size() == 1) return flat.front();
  auto n = new_node(ExprKind::sum);
  n->children = std::move(flat);
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (auto& e : factors) {
    if (e.kind() == ExprKind::product) {
      flat.insert(flat.end(), e.children().begin(), e.children().end());
    } else {
      flat.push_back(std::move(e));
    }
  }
  flat = fold_constants(std::move(flat), true);
  if (flat.empty()) return Expr::integer(1);
  if (flat.size() == 1) return flat.front();
  for (const auto& e : flat) {
    if (e.is_constant() && e.value() == 0) return Expr::integer(0);
  }
  auto n = new_node(ExprKind::product);
  n->children = std::move(flat);
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::quotient(const Expr& num, const Expr& den) {
  if (num.is_constant() && den.is_constant() && sgn(den.value()) != 0) {
    return constant(num.value() / den.value());
  }
  auto n = new_node(ExprKind::quotient);
  n->children = {num, den};
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::power(const Expr& base, long exponent) {
  if (base.is_constant() && (exponent >= 0 || sgn(base.value()) != 0)) {
    mpq_class b = base.value();
    mpq_class acc = 1;
    unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_pow_ui(acc.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(acc.get_den_mpz_t(), b.get_den_mpz_t(), e);
    acc.canonicalize();
    if (exponent < 0) acc = 1 / acc;
    return constant(acc);
  }
  if (exponent == 0) return Expr::integer(1);
  if (exponent == 1) return base;
  auto n = new_node(ExprKind::power);
  n->children = {base};
  n->exponent = exponent;
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::log(const Expr& arg) {
  auto n = new_node(ExprKind::log);
  n->children = {arg};
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::exp(const Expr& arg) {
  auto n = new_node(ExprKind::exp);
  n->children = {arg};
  finish_hash(*n);
  return Expr(std::move(n));
}

Expr Expr::negate(const Expr& arg) {
  if (arg.is_constant()) return constant(-arg.value());
  auto n = new_node(ExprKind::negate);
  n->children = {arg};
  finish_hash(*n);
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
const mpq_class& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
int Expr::order() const { return node_->order; }
Var Expr::arg() const { return node_->arg; }
long Expr::exponent() const { return node_->exponent; }
std::size_t Expr::hash() const { return node_->hash; }

bool Expr::is_zero() const { return is_constant() && sgn(value()) == 0; }
bool Expr::is_one() const { return is_constant() && value() == 1; }

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  const ExprNode& a = *node_;
  const ExprNode& b = *other.node_;
  if (a.hash != b.hash || a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::constant:
      return a.value == b.value;
    case ExprKind::parameter:
    case ExprKind::variable:
      return a.name == b.name;
    case ExprKind::function:
      return a.name == b.name && a.order == b.order && a.arg == b.arg;
    case ExprKind::power:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i] != b.children[i]) return false;
  }
  return true;
}

std::size_t Expr::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

// ---------------------------------------------------------------- printing

namespace {

// Binding strength of the printed form.
enum Prec { kSum = 1, kNeg = 2, kMul = 3, kPow = 5, kAtom = 6 };

int prec(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::constant:
      if (sgn(e.value()) < 0) return kNeg;
      return e.value().get_den() == 1 ? kAtom : kMul;
    case ExprKind::sum:
      return kSum;
    case ExprKind::negate:
      return kNeg;
    case ExprKind::product:
    case ExprKind::quotient:
      return kMul;
    case ExprKind::power:
      return kPow;
    default:
      return kAtom;
  }
}

// Quotients and non-integer constants print with a '/' and must be wrapped
// when they appear as a later factor or as a divisor.
bool quotient_like(const Expr& e) {
  return e.kind() == ExprKind::quotient ||
         (e.kind() == ExprKind::constant && e.value().get_den() != 1);
}

void print(std::ostream& os, const Expr& e);

void print_wrapped(std::ostream& os, const Expr& e, bool wrap) {
  if (wrap) os << '(';
  print(os, e);
  if (wrap) os << ')';
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::constant:
      os << e.value().get_str();
      return;
    case ExprKind::parameter:
    case ExprKind::variable:
      os << e.name();
      return;
    case ExprKind::function:
      os << e.name() << std::string(static_cast<std::size_t>(e.order()), '\'') << '('
         << var_name(e.arg()) << ')';
      return;
    case ExprKind::sum: {
      const auto& ch = e.children();
      print_wrapped(os, ch[0], prec(ch[0]) == kSum);
      for (std::size_t i = 1; i < ch.size(); ++i) {
        if (ch[i].kind() == ExprKind::negate) {
          os << " - ";
          const Expr& inner = ch[i].children()[0];
          print_wrapped(os, inner, prec(inner) == kSum);
        } else if (ch[i].is_constant() && sgn(ch[i].value()) < 0) {
          os << " - " << mpq_class(-ch[i].value()).get_str();
        } else {
          os << " + ";
          print_wrapped(os, ch[i], prec(ch[i]) == kSum);
        }
      }
      return;
    }
    case ExprKind::product: {
      const auto& ch = e.children();
      print_wrapped(os, ch[0], prec(ch[0]) == kSum);
      for (std::size_t i = 1; i < ch.size(); ++i) {
        os << '*';
        print_wrapped(os, ch[i], prec(ch[i]) == kSum || quotient_like(ch[i]));
      }
      return;
    }
    case ExprKind::quotient: {
      const Expr& n = e.children()[0];
      const Expr& d = e.children()[1];
      print_wrapped(os, n, prec(n) == kSum);
      os << '/';
      print_wrapped(os, d, prec(d) == kSum || prec(d) == kMul);
      return;
    }
    case ExprKind::power: {
      const Expr& b = e.children()[0];
      print_wrapped(os, b, prec(b) != kAtom);
      os << '^' << e.exponent();
      return;
    }
    case ExprKind::log:
      os << "ln(";
      print(os, e.children()[0]);
      os << ')';
      return;
    case ExprKind::exp:
      os << "exp(";
      print(os, e.children()[0]);
      os << ')';
      return;
    case ExprKind::negate: {
      const Expr& inner = e.children()[0];
      os << '-';
      print_wrapped(os, inner, prec(inner) < kPow);
      return;
    }
  }
}

}  // namespace

std::string Expr::str() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

// ---------------------------------------------------------------- operators

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::negate(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::quotient(a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }
Expr pow(const Expr& base, long exponent) { return Expr::power(base, exponent); }
Expr log(const Expr& arg) { return Expr::log(arg); }
Expr exp(const Expr& arg) { return Expr::exp(arg); }

namespace {

void collect(const Expr& e, std::set<SymbolKey>& out) {
  switch (e.kind()) {
    case ExprKind::parameter:
      out.insert(SymbolKey::parameter(e.name()));
      return;
    case ExprKind::variable:
      out.insert(SymbolKey::variable(e.arg()));
      return;
    case ExprKind::function:
      out.insert(SymbolKey::function(e.name(), e.order()));
      return;
    default:
      for (const auto& c : e.children()) collect(c, out);
  }
}

bool mentions_var(const Expr& e, Var v) {
  switch (e.kind()) {
    case ExprKind::variable:
    case ExprKind::function:
      return e.arg() == v;
    default:
      for (const auto& c : e.children()) {
        if (mentions_var(c, v)) return true;
      }
      return false;
  }
}

}  // namespace

std::set<SymbolKey> free_symbols(const Expr& e) {
  std::set<SymbolKey> out;
  collect(e, out);
  return out;
}

bool depends_only_on_parameters(const Expr& e) {
  for (const auto& k : free_symbols(e)) {
    if (k.kind != SymbolKey::Kind::parameter) return false;
  }
  return true;
}

bool depends_on(const Expr& e, Var v) { return mentions_var(e, v); }

}  // namespace hypinv
