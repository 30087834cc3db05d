#include "hypinv/evaluate.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <unordered_map>

#include "hypinv/errors.hpp"

namespace hypinv {

double Binding::at(const SymbolKey& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UnboundSymbolError("no value bound for '" + key.str() + "'");
  return it->second;
}

namespace {

double int_power(double b, long e) {
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  double r = 1.0;
  double sq = b;
  while (n) {
    if (n & 1UL) r *= sq;
    sq *= sq;
    n >>= 1;
  }
  return r;
}

double checked(double v) {
  if (!std::isfinite(v)) throw SingularEvaluation("non-finite intermediate value");
  return v;
}

double safe_div(double n, double d, double floor) {
  if (d == 0.0 || std::fabs(d) <= floor) throw SingularEvaluation("division by zero");
  return checked(n / d);
}

double safe_pow(double b, long e, double floor) {
  if (e < 0) {
    if (b == 0.0 || std::fabs(b) <= floor) throw SingularEvaluation("negative power of zero");
    return checked(1.0 / int_power(b, -e));
  }
  return checked(int_power(b, e));
}

double safe_log(double a) {
  if (!(a > 0.0)) throw SingularEvaluation("log of a non-positive value");
  return std::log(a);
}

struct Evaluator {
  const Binding& b;
  const EvalOptions& opts;
  double scale = 0.0;

  double run(const Expr& e) {
    double v = node(e);
    double m = std::fabs(v);
    if (m > scale) scale = m;
    return v;
  }

  double node(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::constant:
        return e.value().get_d();
      case ExprKind::parameter:
        return b.at(SymbolKey::parameter(e.name()));
      case ExprKind::variable:
        return b.at(SymbolKey::variable(e.arg()));
      case ExprKind::function:
        return b.at(SymbolKey::function(e.name(), e.order()));
      case ExprKind::sum: {
        double s = 0.0;
        for (const auto& c : e.children()) s += run(c);
        return checked(s);
      }
      case ExprKind::product: {
        double p = 1.0;
        for (const auto& c : e.children()) p *= run(c);
        return checked(p);
      }
      case ExprKind::quotient: {
        double n = run(e.children()[0]);
        double d = run(e.children()[1]);
        return safe_div(n, d, opts.singular_floor);
      }
      case ExprKind::power:
        return safe_pow(run(e.children()[0]), e.exponent(), opts.singular_floor);
      case ExprKind::log:
        return safe_log(run(e.children()[0]));
      case ExprKind::exp:
        return checked(std::exp(run(e.children()[0])));
      case ExprKind::negate:
        return -run(e.children()[0]);
    }
    return 0.0;
  }
};

}  // namespace

double evaluate(const Expr& e, const Binding& b, const EvalOptions& opts) {
  Evaluator ev{b, opts};
  return ev.run(e);
}

ScaledValue evaluate_scaled(const Expr& e, const Binding& b, const EvalOptions& opts) {
  Evaluator ev{b, opts};
  double v = ev.run(e);
  return {v, ev.scale};
}

class TapeBuilder {
 public:
  explicit TapeBuilder(CompiledExpr& c) : c_(c) {
    for (std::size_t i = 0; i < c.inputs_.size(); ++i) {
      CompiledExpr::Instr in{};
      in.op = CompiledExpr::Op::input;
      in.a = static_cast<std::uint32_t>(i);
      inputs_.emplace(c.inputs_[i], emit(std::move(in)));
    }
  }

  std::uint32_t build(const Expr& e) {
    if (auto it = by_node_.find(e.id()); it != by_node_.end()) return it->second;
    using Op = CompiledExpr::Op;
    CompiledExpr::Instr in{};
    in.op = Op::constant;
    switch (e.kind()) {
      case ExprKind::constant:
        in.constant = e.value().get_d();
        break;
      case ExprKind::parameter:
        return remember(e, input(SymbolKey::parameter(e.name())));
      case ExprKind::variable:
        return remember(e, input(SymbolKey::variable(e.arg())));
      case ExprKind::function:
        return remember(e, input(SymbolKey::function(e.name(), e.order())));
      case ExprKind::sum:
      case ExprKind::product:
        in.op = e.kind() == ExprKind::sum ? Op::sum : Op::product;
        for (const auto& ch : e.children()) in.args.push_back(build(ch));
        break;
      case ExprKind::quotient:
        in.op = Op::quotient;
        in.a = build(e.children()[0]);
        in.b = build(e.children()[1]);
        break;
      case ExprKind::power:
        in.op = Op::power;
        in.a = build(e.children()[0]);
        in.exponent = e.exponent();
        break;
      case ExprKind::log:
        in.op = Op::log;
        in.a = build(e.children()[0]);
        break;
      case ExprKind::exp:
        in.op = Op::exp;
        in.a = build(e.children()[0]);
        break;
      case ExprKind::negate:
        in.op = Op::negate;
        in.a = build(e.children()[0]);
        break;
    }
    return remember(e, emit(std::move(in)));
  }

 private:
  std::uint32_t input(const SymbolKey& k) {
    auto it = inputs_.find(k);
    if (it == inputs_.end()) throw UnboundSymbolError("no input slot for '" + k.str() + "'");
    return it->second;
  }

  std::uint32_t remember(const Expr& e, std::uint32_t slot) {
    by_node_.emplace(e.id(), slot);
    keep_.push_back(e);
    return slot;
  }

  static std::string key_of(const CompiledExpr::Instr& in) {
    std::string k;
    auto put = [&k](const void* p, std::size_t n) { k.append(static_cast<const char*>(p), n); };
    put(&in.op, sizeof in.op);
    put(&in.a, sizeof in.a);
    put(&in.b, sizeof in.b);
    put(&in.exponent, sizeof in.exponent);
    put(&in.constant, sizeof in.constant);
    for (auto a : in.args) put(&a, sizeof a);
    return k;
  }

  std::uint32_t emit(CompiledExpr::Instr in) {
    std::string k = key_of(in);
    if (auto it = by_key_.find(k); it != by_key_.end()) return it->second;
    auto slot = static_cast<std::uint32_t>(c_.code_.size());
    c_.code_.push_back(std::move(in));
    by_key_.emplace(std::move(k), slot);
    return slot;
  }

  CompiledExpr& c_;
  std::map<SymbolKey, std::uint32_t> inputs_;
  std::unordered_map<const void*, std::uint32_t> by_node_;
  std::unordered_map<std::string, std::uint32_t> by_key_;
  std::vector<Expr> keep_;
};

CompiledExpr::CompiledExpr(const std::vector<Expr>& outputs, std::vector<SymbolKey> inputs)
    : inputs_(std::move(inputs)) {
  TapeBuilder tb(*this);
  for (const auto& e : outputs) outputs_.push_back(tb.build(e));
}

void CompiledExpr::run(const double* in, double* out, const EvalOptions& opts) const {
  std::vector<double> r(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& c = code_[i];
    switch (c.op) {
      case Op::input:
        r[i] = in[c.a];
        break;
      case Op::constant:
        r[i] = c.constant;
        break;
      case Op::sum: {
        double s = 0.0;
        for (auto a : c.args) s += r[a];
        r[i] = checked(s);
        break;
      }
      case Op::product: {
        double p = 1.0;
        for (auto a : c.args) p *= r[a];
        r[i] = checked(p);
        break;
      }
      case Op::quotient:
        r[i] = safe_div(r[c.a], r[c.b], opts.singular_floor);
        break;
      case Op::power:
        r[i] = safe_pow(r[c.a], c.exponent, opts.singular_floor);
        break;
      case Op::negate:
        r[i] = -r[c.a];
        break;
      case Op::log:
        r[i] = safe_log(r[c.a]);
        break;
      case Op::exp:
        r[i] = checked(std::exp(r[c.a]));
        break;
    }
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = r[outputs_[k]];
}

std::vector<double> CompiledExpr::run(const std::vector<double>& in, const EvalOptions& opts) const {
  if (in.size() != inputs_.size()) throw DomainError("input count mismatch");
  std::vector<double> out(outputs_.size());
  run(in.data(), out.data(), opts);
  return out;
}

}  // namespace hypinv
