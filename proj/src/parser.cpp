#include "hypinv/parser.hpp"

#include <cctype>
#include <string>

#include "hypinv/errors.hpp"

namespace hypinv {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) {
      if (s_[pos_] == ')') fail("unbalanced ')'");
      fail(std::string("unknown operator '") + s_[pos_] + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= s_.size()) fail(std::string("expected '") + c + "', found end of input");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  Expr expr() {
    std::vector<Expr> terms;
    terms.push_back(term());
    while (true) {
      if (peek('+')) {
        ++pos_;
        terms.push_back(term());
      } else if (peek('-')) {
        ++pos_;
        terms.push_back(Expr::negate(term()));
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        ++pos_;
        acc = acc / factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Expr factor() {
    Expr b = base();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      bool neg = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
        skip_ws();
      }
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) {
        fail("non-integer exponent");
      }
      if (pos_ < s_.size() && (s_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(s_[pos_])))) {
        pos_ = start;
        fail("non-integer exponent");
      }
      std::string digits(s_.substr(start, pos_ - start));
      if (digits.size() > 9) {
        pos_ = start;
        fail("exponent too large");
      }
      long n = std::stol(digits);
      b = Expr::power(b, neg ? -n : n);
    }
    return b;
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string whole(s_.substr(start, pos_ - start));
    std::string frac;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      frac = std::string(s_.substr(fs, pos_ - fs));
    }
    if (whole.empty() && frac.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    mpz_class num(whole.empty() ? "0" : whole + frac, 10);
    if (whole.empty()) num = mpz_class(frac, 10);
    mpz_class den = 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    return Expr::constant(mpq_class(num, den));
  }

  Expr base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      return Expr::negate(factor());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return named();
    fail(std::string("unknown operator '") + c + "'");
  }

  Expr named() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(s_.substr(start, pos_ - start));
    int primes = 0;
    while (pos_ < s_.size() && s_[pos_] == '\'') {
      ++primes;
      ++pos_;
    }
    bool call = peek('(');
    if (name == "ln" || name == "exp") {
      if (primes > 0) fail("primes on '" + name + "'");
      if (!call) fail("'" + name + "' requires an argument");
      ++pos_;
      Expr arg = expr();
      expect(')');
      return name == "ln" ? Expr::log(arg) : Expr::exp(arg);
    }
    if (!call) {
      if (primes > 0) {
        pos_ = start;
        fail("primes on parameter '" + name + "'");
      }
      if (name == "t") return Expr::variable(Var::t);
      if (name == "x") return Expr::variable(Var::x);
      return Expr::parameter(name);
    }
    if (name == "t" || name == "x") {
      pos_ = start;
      fail("variable '" + name + "' used as a function");
    }
    ++pos_;
    skip_ws();
    Var v;
    if (pos_ < s_.size() && s_[pos_] == 't') {
      v = Var::t;
    } else if (pos_ < s_.size() && s_[pos_] == 'x') {
      v = Var::x;
    } else {
      fail("function symbols take a single bare variable t or x");
    }
    ++pos_;
    if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      fail("function symbols take a single bare variable t or x");
    }
    expect(')');
    return Expr::function(name, primes, v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace hypinv
