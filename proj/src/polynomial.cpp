#include "hypinv/polynomial.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "hypinv/errors.hpp"

namespace hypinv {

// ---------------------------------------------------------------- atoms

namespace {

struct AtomTable {
  std::mutex mutex;
  std::unordered_map<std::string, std::unique_ptr<Atom>> atoms;

  const Atom* intern(Atom proto) {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = atoms.find(proto.key);
    if (it != atoms.end()) return it->second.get();
    auto owned = std::make_unique<Atom>(std::move(proto));
    const Atom* raw = owned.get();
    atoms.emplace(raw->key, std::move(owned));
    return raw;
  }
};

AtomTable& table() {
  static AtomTable* t = new AtomTable();  // never destroyed; atoms outlive static Exprs
  return *t;
}

std::string padded(int k) {
  std::string s = std::to_string(k);
  return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

}  // namespace

Expr Atom::to_expr() const {
  switch (kind) {
    case AtomKind::variable:
      return Expr::variable(arg);
    case AtomKind::parameter:
      return Expr::parameter(name);
    case AtomKind::function:
      return Expr::function(name, order, arg);
    case AtomKind::log:
      return Expr::log(inner);
    case AtomKind::exp:
      return Expr::exp(inner);
  }
  return Expr();
}

const Atom* variable_atom(Var v) {
  static const Atom* const t = table().intern({AtomKind::variable, "t", 0, Var::t, Expr(), "0t"});
  static const Atom* const x = table().intern({AtomKind::variable, "x", 0, Var::x, Expr(), "0x"});
  return v == Var::t ? t : x;
}

const Atom* parameter_atom(const std::string& name) {
  return table().intern({AtomKind::parameter, name, 0, Var::t, Expr(), "1" + name});
}

const Atom* function_atom(const std::string& name, int order, Var arg) {
  std::string key = "2" + name + '\x01' + padded(order) + var_name(arg);
  return table().intern({AtomKind::function, name, order, arg, Expr(), std::move(key)});
}

const Atom* log_atom(const Expr& inner) {
  return table().intern({AtomKind::log, "ln", 0, Var::t, inner, "3" + inner.str()});
}

const Atom* exp_atom(const Expr& inner) {
  return table().intern({AtomKind::exp, "exp", 0, Var::t, inner, "4" + inner.str()});
}

// ---------------------------------------------------------------- monomials

Exponent Monomial::degree(const Atom* a) const {
  for (const auto& [atom, e] : factors_) {
    if (atom == a) return e;
  }
  return 0;
}

Exponent Monomial::total_degree() const {
  Exponent d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.factors_.empty()) return *this;
  if (factors_.empty()) return o;
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < factors_.size() && j < o.factors_.size()) {
    const auto& a = factors_[i];
    const auto& b = o.factors_[j];
    if (a.first == b.first) {
      r.factors_.emplace_back(a.first, a.second + b.second);
      ++i;
      ++j;
    } else if (atom_less(a.first, b.first)) {
      r.factors_.push_back(a);
      ++i;
    } else {
      r.factors_.push_back(b);
      ++j;
    }
  }
  for (; i < factors_.size(); ++i) r.factors_.push_back(factors_[i]);
  for (; j < o.factors_.size(); ++j) r.factors_.push_back(o.factors_[j]);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  std::size_t j = 0;
  for (const auto& [a, e] : factors_) {
    while (j < o.factors_.size() && o.factors_[j].first != a) {
      if (atom_less(a, o.factors_[j].first)) return false;
      ++j;
    }
    if (j == o.factors_.size() || o.factors_[j].second < e) return false;
    ++j;
  }
  return true;
}

Monomial Monomial::cofactor(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0;
  for (const auto& [a, e] : o.factors_) {
    if (i < factors_.size() && factors_[i].first == a) {
      Exponent d = e - factors_[i].second;
      if (d > 0) r.factors_.emplace_back(a, d);
      ++i;
    } else {
      r.factors_.emplace_back(a, e);
    }
  }
  return r;
}

Monomial Monomial::without(const Atom* a) const {
  Monomial r;
  r.factors_.reserve(factors_.size());
  for (const auto& f : factors_) {
    if (f.first != a) r.factors_.push_back(f);
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  std::size_t j = 0;
  for (const auto& [a, e] : factors_) {
    while (j < o.factors_.size() && atom_less(o.factors_[j].first, a)) ++j;
    if (j < o.factors_.size() && o.factors_[j].first == a) {
      r.factors_.emplace_back(a, std::min(e, o.factors_[j].second));
      ++j;
    }
  }
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second ? 1 : -1;
      ++i;
      ++j;
    } else {
      return atom_less(fa[i].first, fb[j].first) ? 1 : -1;
    }
  }
  if (i < fa.size()) return 1;
  if (j < fb.size()) return -1;
  return 0;
}

// ---------------------------------------------------------------- packed keys

namespace {

// Monomials over a fixed atom list packed into one 64-bit key whose
// numeric order is the lex order used by compare().
class Packer {
 public:
  static std::optional<Packer> make(std::vector<const Atom*> atoms, const std::vector<Exponent>& max_degree) {
    Packer p;
    p.atoms_ = std::move(atoms);
    unsigned total = 0;
    p.shift_.resize(p.atoms_.size());
    p.width_.resize(p.atoms_.size());
    for (std::size_t i = 0; i < p.atoms_.size(); ++i) {
      unsigned w = 1;
      while ((Exponent{1} << w) <= max_degree[i] && w < 32) ++w;
      p.width_[i] = w;
      total += w;
    }
    if (total > 64) return std::nullopt;
    unsigned pos = total;
    for (std::size_t i = 0; i < p.atoms_.size(); ++i) {
      pos -= p.width_[i];
      p.shift_[i] = pos;
    }
    return p;
  }

  std::uint64_t pack(const Monomial& m) const {
    std::uint64_t k = 0;
    std::size_t i = 0;
    for (const auto& [a, e] : m.factors()) {
      while (atoms_[i] != a) ++i;
      k |= static_cast<std::uint64_t>(e) << shift_[i];
    }
    return k;
  }

  Exponent field(std::uint64_t k, std::size_t i) const {
    return static_cast<Exponent>((k >> shift_[i]) & ((std::uint64_t{1} << width_[i]) - 1));
  }

  Monomial unpack(std::uint64_t k) const {
    std::vector<std::pair<const Atom*, Exponent>> f;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      Exponent e = field(k, i);
      if (e > 0) f.emplace_back(atoms_[i], e);
    }
    return Monomial(std::move(f));
  }

  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<const Atom*> atoms_;
  std::vector<unsigned> shift_;
  std::vector<unsigned> width_;
};

std::vector<const Atom*> atom_union(const std::vector<const Atom*>& a, const std::vector<const Atom*>& b) {
  std::vector<const Atom*> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r), atom_less);
  return r;
}

}  // namespace

// ---------------------------------------------------------------- polynomials

Polynomial::Polynomial(const mpz_class& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::atom(const Atom* a, Exponent e) {
  Polynomial p;
  p.terms_.push_back({Monomial(a, e), mpz_class(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

namespace {

// Merge b*sign into a.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].mono, b[j].mono);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
      if (subtract) r.back().coeff = -r.back().coeff;
    } else {
      mpz_class s = subtract ? mpz_class(a[i].coeff - b[j].coeff) : mpz_class(a[i].coeff + b[j].coeff);
      if (sgn(s) != 0) r.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) {
    r.push_back(b[j]);
    if (subtract) r.back().coeff = -r.back().coeff;
  }
  return r;
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial p;
  p.terms_ = merge(terms_, o.terms_, false);
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial p;
  p.terms_ = merge(terms_, o.terms_, true);
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::operator*(const mpz_class& c) const {
  if (sgn(c) == 0) return Polynomial();
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::mul_term(const Monomial& m, const mpz_class& c) const {
  if (sgn(c) == 0) return Polynomial();
  Polynomial p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  if (o.is_constant()) return *this * o.constant_value();
  if (is_constant()) return o * constant_value();
  if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  auto atoms = atom_union(this->atoms(), o.atoms());
  std::vector<Exponent> deg(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) deg[i] = degree(atoms[i]) + o.degree(atoms[i]);
  auto packer = Packer::make(atoms, deg);
  if (!packer) {
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) acc.push_back({a.mono * b.mono, a.coeff * b.coeff});
    }
    return from_terms(std::move(acc));
  }
  std::vector<std::uint64_t> ka, kb;
  ka.reserve(terms_.size());
  kb.reserve(o.terms_.size());
  for (const auto& t : terms_) ka.push_back(packer->pack(t.mono));
  for (const auto& t : o.terms_) kb.push_back(packer->pack(t.mono));
  struct Pair {
    std::uint64_t key;
    std::uint32_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(ka.size() * kb.size());
  for (std::uint32_t i = 0; i < ka.size(); ++i) {
    for (std::uint32_t j = 0; j < kb.size(); ++j) pairs.push_back({ka[i] + kb[j], i, j});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.key > b.key; });
  Polynomial p;
  mpz_class acc;
  for (std::size_t n = 0; n < pairs.size();) {
    std::uint64_t key = pairs[n].key;
    acc = 0;
    for (; n < pairs.size() && pairs[n].key == key; ++n) {
      mpz_addmul(acc.get_mpz_t(), terms_[pairs[n].i].coeff.get_mpz_t(), o.terms_[pairs[n].j].coeff.get_mpz_t());
    }
    if (sgn(acc) != 0) p.terms_.push_back({packer->unpack(key), acc});
  }
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (is_zero()) return Polynomial();
  if (d.is_constant()) {
    const mpz_class& c = d.constant_value();
    for (const auto& t : terms_) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
    }
    return divide_exact(c);
  }
  const auto atoms = this->atoms();
  for (const Atom* a : d.atoms()) {
    if (d.degree(a) > degree(a)) return std::nullopt;
  }
  if (d.terms_.size() == 1) {
    const Term& t = d.terms_[0];
    std::vector<Term> q;
    q.reserve(terms_.size());
    for (const auto& r : terms_) {
      if (!t.mono.divides(r.mono) || !mpz_divisible_p(r.coeff.get_mpz_t(), t.coeff.get_mpz_t())) return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), r.coeff.get_mpz_t(), t.coeff.get_mpz_t());
      q.push_back({t.mono.cofactor(r.mono), std::move(c)});
    }
    Polynomial p;
    p.terms_ = std::move(q);
    return p;
  }
  std::vector<Exponent> deg(atoms.size());
  std::vector<Exponent> qdeg(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    deg[i] = degree(atoms[i]);
    qdeg[i] = deg[i] - d.degree(atoms[i]);
  }
  auto packer = Packer::make(atoms, deg);
  if (!packer) {
    const Term& ld = d.leading();
    std::vector<Term> q;
    Polynomial r = *this;
    while (!r.is_zero()) {
      const Term& lr = r.leading();
      if (!ld.mono.divides(lr.mono)) return std::nullopt;
      if (!mpz_divisible_p(lr.coeff.get_mpz_t(), ld.coeff.get_mpz_t())) return std::nullopt;
      Monomial m = ld.mono.cofactor(lr.mono);
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), lr.coeff.get_mpz_t(), ld.coeff.get_mpz_t());
      r = r - d.mul_term(m, c);
      q.push_back({std::move(m), std::move(c)});
    }
    Polynomial p;
    p.terms_ = std::move(q);
    return p;
  }
  std::map<std::uint64_t, mpz_class, std::greater<>> r;
  for (const auto& t : terms_) r.emplace(packer->pack(t.mono), t.coeff);
  std::vector<std::uint64_t> kd;
  kd.reserve(d.terms_.size());
  for (const auto& t : d.terms_) kd.push_back(packer->pack(t.mono));
  const std::uint64_t lead = kd[0];
  const mpz_class& lc = d.terms_[0].coeff;
  std::vector<Term> q;
  mpz_class c, prod;
  while (!r.empty()) {
    auto it = r.begin();
    std::uint64_t lk = it->first;
    for (std::size_t i = 0; i < packer->size(); ++i) {
      Exponent e = packer->field(lk, i), f = packer->field(lead, i);
      if (e < f || e - f > qdeg[i]) return std::nullopt;
    }
    if (!mpz_divisible_p(it->second.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_divexact(c.get_mpz_t(), it->second.get_mpz_t(), lc.get_mpz_t());
    std::uint64_t qk = lk - lead;
    r.erase(it);
    for (std::size_t j = 1; j < kd.size(); ++j) {
      auto [pos, inserted] = r.try_emplace(qk + kd[j]);
      mpz_submul(pos->second.get_mpz_t(), c.get_mpz_t(), d.terms_[j].coeff.get_mpz_t());
      if (sgn(pos->second) == 0) r.erase(pos);
    }
    q.push_back({packer->unpack(qk), c});
  }
  Polynomial p;
  p.terms_ = std::move(q);
  return p;
}

Polynomial Polynomial::divide_exact(const mpz_class& c) const {
  Polynomial p = *this;
  for (auto& t : p.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return p;
}

mpz_class Polynomial::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Exponent Polynomial::degree(const Atom* a) const {
  Exponent d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(a));
  return d;
}

std::vector<const Atom*> Polynomial::atoms() const {
  std::vector<const Atom*> r;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) r.push_back(f.first);
  }
  std::sort(r.begin(), r.end(), [](const Atom* a, const Atom* b) { return atom_less(a, b); });
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

bool Polynomial::has_atom(const Atom* a) const {
  for (const auto& t : terms_) {
    if (t.mono.degree(a) > 0) return true;
  }
  return false;
}

std::vector<Polynomial> Polynomial::coefficients(const Atom* a) const {
  std::vector<Polynomial> c(degree(a) + 1);
  for (const auto& t : terms_) {
    Exponent k = t.mono.degree(a);
    c[k].terms_.push_back({t.mono.without(a), t.coeff});
  }
  return c;
}

Polynomial Polynomial::from_coefficients(const Atom* a, const std::vector<Polynomial>& c) {
  Polynomial p;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    p = p + (k == 0 ? c[k] : c[k].mul_term(Monomial(a, static_cast<Exponent>(k)), mpz_class(1)));
  }
  return p;
}

Polynomial Polynomial::partial(const Atom* a) const {
  Polynomial p;
  for (const auto& t : terms_) {
    Exponent k = t.mono.degree(a);
    if (k == 0) continue;
    std::vector<std::pair<const Atom*, Exponent>> f;
    Monomial m = t.mono.without(a);
    Monomial reduced = k > 1 ? m * Monomial(a, k - 1) : m;
    p.terms_.push_back({std::move(reduced), t.coeff * k});
  }
  return p;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].mono == o.terms_[i].mono)) return false;
  }
  return true;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << (sgn(t.coeff) < 0 ? " - " : " + ");
    else if (sgn(t.coeff) < 0) os << '-';
    first = false;
    mpz_class c = abs(t.coeff);
    bool wrote = false;
    if (c != 1 || t.mono.is_one()) {
      os << c.get_str();
      wrote = true;
    }
    for (const auto& [a, e] : t.mono.factors()) {
      if (wrote) os << '*';
      wrote = true;
      os << a->to_expr().str();
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- gcd

namespace {

using UPoly = std::vector<Polynomial>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

Polynomial positive(Polynomial p) { return p.sign() < 0 ? -p : p; }

UPoly prem(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  const int db = udeg(b);
  const Polynomial& lcb = b.back();
  int e = udeg(a) - db + 1;
  while (!r.empty() && udeg(r) >= db) {
    Polynomial lcr = r.back();
    int s = udeg(r) - db;
    for (auto& c : r) c = c * lcb;
    for (int i = 0; i <= db; ++i) r[i + s] = r[i + s] - lcr * b[i];
    trim(r);
    --e;
  }
  if (e > 0) {
    Polynomial f = lcb.pow(static_cast<unsigned>(e));
    for (auto& c : r) c = c * f;
  }
  return r;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.
using u64 = std::uint64_t;
constexpr u64 kPrime = (u64{1} << 61) - 1;

u64 mul_mod(u64 a, u64 b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  u64 lo = static_cast<u64>(r & kPrime);
  u64 hi = static_cast<u64>(r >> 61);
  u64 s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

u64 add_mod(u64 a, u64 b) {
  u64 s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

u64 sub_mod(u64 a, u64 b) { return a >= b ? a - b : a + kPrime - b; }

u64 pow_mod(u64 a, u64 e) {
  u64 r = 1;
  while (e > 0) {
    if (e & 1U) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1U;
  }
  return r;
}

u64 inv_mod(u64 a) { return pow_mod(a, kPrime - 2); }

u64 reduce(const mpz_class& c) {
  return static_cast<u64>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(kPrime)));
}

struct ModPoint {
  std::vector<std::pair<const Atom*, u64>> values;

  u64 at(const Atom* a) {
    for (const auto& [k, v] : values) {
      if (k == a) return v;
    }
    // Deterministic value per atom key.
    u64 h = 1469598103934665603ULL;
    for (char ch : a->key) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    h ^= h >> 29;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 32;
    u64 v = h % kPrime;
    values.emplace_back(a, v);
    return v;
  }

  u64 eval(const Polynomial& p) {
    u64 s = 0;
    for (const auto& t : p.terms()) {
      u64 m = reduce(t.coeff);
      for (const auto& [a, e] : t.mono.factors()) m = mul_mod(m, pow_mod(at(a), e));
      s = add_mod(s, m);
    }
    return s;
  }
};

using ModPoly = std::vector<u64>;

void trim_mod(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// In place: a <- a mod b, b monic-free.
void rem_mod(ModPoly& a, const ModPoly& b) {
  u64 inv = inv_mod(b.back());
  while (a.size() >= b.size()) {
    u64 q = mul_mod(a.back(), inv);
    std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + s] = sub_mod(a[i + s], mul_mod(q, b[i]));
    a.pop_back();
    trim_mod(a);
  }
}

// True only when the images at a point where neither leading coefficient
// vanishes are coprime; then the primitive parts are coprime too.
bool coprime_image(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  ModPoint pt;
  ModPoly x(a.size()), y(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) x[i] = pt.eval(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) y[i] = pt.eval(b[i]);
  if (x.empty() || y.empty() || x.back() == 0 || y.back() == 0) return false;
  while (!y.empty()) {
    if (y.size() == 1) return true;
    rem_mod(x, y);
    std::swap(x, y);
  }
  return x.size() == 1;
}

// ---- heuristic gcd by integer evaluation, verified by trial division.

mpz_class height(const Polynomial& p) {
  mpz_class h = 0;
  for (const auto& t : p.terms()) {
    if (mpz_cmpabs(t.coeff.get_mpz_t(), h.get_mpz_t()) > 0) h = abs(t.coeff);
  }
  return h;
}

Polynomial integer_primitive(const Polynomial& p) {
  mpz_class c = p.content();
  if (sgn(c) == 0 || c == 1) return p;
  return p.divide_exact(c);
}

// p with the atom v replaced by the integer xi.
Polynomial evaluate_at(const Polynomial& p, const Atom* v, const mpz_class& xi) {
  auto c = p.coefficients(v);
  Polynomial r;
  for (std::size_t k = c.size(); k-- > 0;) r = r * xi + c[k];
  return r;
}

// Symmetric xi-adic expansion of G as a polynomial in v.
Polynomial xi_adic(Polynomial G, const Atom* v, const mpz_class& xi) {
  std::vector<Polynomial> digits;
  mpz_class half = xi / 2;
  while (!G.is_zero()) {
    std::vector<Term> d;
    std::vector<Term> next;
    for (const auto& t : G.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (sgn(r) != 0) d.push_back({t.mono, r});
      mpz_class q = t.coeff - r;
      mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), xi.get_mpz_t());
      if (sgn(q) != 0) next.push_back({t.mono, q});
    }
    digits.push_back(Polynomial::from_terms(std::move(d)));
    G = Polynomial::from_terms(std::move(next));
  }
  return Polynomial::from_coefficients(v, digits);
}

constexpr std::size_t kHeuristicBits = std::size_t{1} << 22;

// Full gcd including the integer content, which the caller's xi-adic
// reconstruction depends on.
std::optional<Polynomial> heuristic_gcd(const Polynomial& a_in, const Polynomial& b_in) {
  mpz_class g0;
  mpz_class ca = a_in.content(), cb = b_in.content();
  mpz_gcd(g0.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a_in.is_constant() || b_in.is_constant()) return Polynomial(g0);
  Polynomial a = a_in.divide_exact(ca);
  Polynomial b = b_in.divide_exact(cb);
  auto va = a.atoms();
  auto vb = b.atoms();
  if (va != vb) return std::nullopt;
  const Atom* v = va.front();
  Exponent deg = std::max(a.degree(v), b.degree(v));
  mpz_class xi = 2 * std::min(height(a), height(b)) + 29;
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (deg + 1) > kHeuristicBits) return std::nullopt;
    Polynomial A = evaluate_at(a, v, xi);
    Polynomial B = evaluate_at(b, v, xi);
    if (!A.is_zero() && !B.is_zero()) {
      auto G = heuristic_gcd(A, B);
      if (!G) return std::nullopt;
      Polynomial g = integer_primitive(xi_adic(*G, v, xi));
      if (!g.is_zero()) {
        if (g.sign() < 0) g = -g;
        if (a.divide_exact(g) && b.divide_exact(g)) return g * g0;
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Polynomial divide_or_throw(const Polynomial& p, const Polynomial& d) {
  auto q = p.divide_exact(d);
  if (!q) throw std::logic_error("gcd: inexact division");
  return *q;
}

Polynomial content_of(const UPoly& p);

// Primitive gcd of two primitive polynomials in the main variable, by the
// subresultant remainder sequence.
UPoly subresultant_gcd(UPoly a, UPoly b) {
  if (udeg(a) < udeg(b)) std::swap(a, b);
  Polynomial g(1);
  Polynomial h(1);
  while (true) {
    int delta = udeg(a) - udeg(b);
    UPoly r = prem(a, b);
    if (r.empty()) break;
    if (udeg(r) == 0) {
      b = UPoly{Polynomial(1)};
      break;
    }
    a = std::move(b);
    Polynomial divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = divide_or_throw(c, divisor);
    b = std::move(r);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divide_or_throw(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Polynomial c = content_of(b);
  if (!c.is_one()) {
    for (auto& x : b) x = divide_or_throw(x, c);
  }
  return b;
}

Polynomial content_of(const UPoly& p) {
  Polynomial g;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial integer_gcd(const Polynomial& a, const Polynomial& b) {
  mpz_class g;
  mpz_class ca = a.content();
  mpz_class cb = b.content();
  mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  return Polynomial(g);
}

// Common monomial factor of all terms.
Monomial monomial_content(const Polynomial& p) {
  Monomial m = p.terms().front().mono;
  for (const auto& t : p.terms()) {
    m = m.gcd(t.mono);
    if (m.is_one()) break;
  }
  return m;
}

Polynomial divide_monomial(const Polynomial& p, const Monomial& m) {
  std::vector<Term> r;
  r.reserve(p.terms().size());
  for (const auto& t : p.terms()) r.push_back({m.cofactor(t.mono), t.coeff});
  return Polynomial::from_terms(std::move(r));
}

}  // namespace

Polynomial gcd(const Polynomial& a_in, const Polynomial& b_in) {
  if (a_in.is_zero()) return positive(b_in);
  if (b_in.is_zero()) return positive(a_in);
  if (a_in.is_constant() || b_in.is_constant()) return integer_gcd(a_in, b_in);
  if (a_in == b_in) return positive(a_in);

  Polynomial a = a_in;
  Polynomial b = b_in;

  // Pull out monomial content first; it is cheap and common.
  Monomial ma = monomial_content(a);
  Monomial mb = monomial_content(b);
  Monomial mg = ma.gcd(mb);
  if (!ma.is_one()) a = divide_monomial(a, ma);
  if (!mb.is_one()) b = divide_monomial(b, mb);
  Polynomial mono_part = Polynomial::from_terms({Term{mg, mpz_class(1)}});

  auto finish = [&](const Polynomial& g) { return positive(mono_part * g); };

  if (a.is_constant() || b.is_constant()) return finish(integer_gcd(a, b));

  if (b.terms().size() <= a.terms().size()) {
    if (auto q = a.divide_exact(b)) return finish(b);
  } else if (auto q = b.divide_exact(a)) {
    return finish(a);
  }

  // Atoms present in only one operand can only contribute through content.
  while (true) {
    auto va = a.atoms();
    auto vb = b.atoms();
    const Atom* only = nullptr;
    bool in_a = false;
    for (const Atom* u : va) {
      if (!std::binary_search(vb.begin(), vb.end(), u, atom_less)) {
        only = u;
        in_a = true;
        break;
      }
    }
    if (!only) {
      for (const Atom* u : vb) {
        if (!std::binary_search(va.begin(), va.end(), u, atom_less)) {
          only = u;
          break;
        }
      }
    }
    if (!only) break;
    if (in_a) {
      a = content_of(a.coefficients(only));
    } else {
      b = content_of(b.coefficients(only));
    }
    if (a.is_constant() || b.is_constant()) return finish(integer_gcd(a, b));
  }

  auto vars = a.atoms();
  const Atom* main = vars.front();
  Exponent best = std::max(a.degree(main), b.degree(main));
  for (const Atom* v : vars) {
    Exponent d = std::max(a.degree(v), b.degree(v));
    if (d < best) {
      best = d;
      main = v;
    }
  }

  UPoly ua = a.coefficients(main);
  UPoly ub = b.coefficients(main);
  Polynomial ca = content_of(ua);
  Polynomial cb = content_of(ub);
  Polynomial c = gcd(ca, cb);
  if (!ca.is_one()) {
    for (auto& x : ua) x = divide_or_throw(x, ca);
  }
  if (!cb.is_one()) {
    for (auto& x : ub) x = divide_or_throw(x, cb);
  }
  if (coprime_image(ua, ub)) return finish(c);
  {
    Polynomial pa = Polynomial::from_coefficients(main, ua);
    Polynomial pb = Polynomial::from_coefficients(main, ub);
    if (auto h = heuristic_gcd(pa, pb)) return finish(c * integer_primitive(*h));
  }
  UPoly g = subresultant_gcd(std::move(ua), std::move(ub));
  return finish(c * Polynomial::from_coefficients(main, g));
}

}  // namespace hypinv
