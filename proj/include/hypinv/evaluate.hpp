#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hypinv/expr.hpp"
#include "hypinv/symbol.hpp"

namespace hypinv {

/// Numeric values for variables, parameters and function symbols f^(k).
class Binding {
 public:
  Binding() = default;

  Binding& set(const SymbolKey& key, double value) {
    values_[key] = value;
    return *this;
  }
  Binding& variable(Var v, double value) { return set(SymbolKey::variable(v), value); }
  Binding& parameter(const std::string& name, double value) { return set(SymbolKey::parameter(name), value); }
  Binding& function(const std::string& name, int order, double value) {
    return set(SymbolKey::function(name, order), value);
  }

  /// Throws UnboundSymbolError when missing.
  double at(const SymbolKey& key) const;
  bool contains(const SymbolKey& key) const { return values_.count(key) != 0; }
  const std::map<SymbolKey, double>& values() const { return values_; }

 private:
  std::map<SymbolKey, double> values_;
};

struct EvalOptions {
  /// Denominators with magnitude at or below the floor count as singular.
  double singular_floor = 0.0;
};

/// Recursive double evaluation. Throws UnboundSymbolError or
/// SingularEvaluation (zero denominator, log of a non-positive value,
/// non-finite result).
double evaluate(const Expr& e, const Binding& b, const EvalOptions& opts = {});

/// Value together with the largest magnitude of any subterm met on the way.
struct ScaledValue {
  double value = 0.0;
  double scale = 0.0;
};
ScaledValue evaluate_scaled(const Expr& e, const Binding& b, const EvalOptions& opts = {});

/// Several expressions flattened into one instruction tape with common
/// subexpressions shared. Inputs are the symbols in `inputs`, in order.
class CompiledExpr {
 public:
  CompiledExpr(const std::vector<Expr>& outputs, std::vector<SymbolKey> inputs);

  const std::vector<SymbolKey>& inputs() const { return inputs_; }
  std::size_t output_count() const { return outputs_.size(); }
  std::size_t tape_size() const { return code_.size(); }

  /// Writes one value per output. Throws SingularEvaluation.
  void run(const double* in, double* out, const EvalOptions& opts = {}) const;
  std::vector<double> run(const std::vector<double>& in, const EvalOptions& opts = {}) const;

 private:
  enum class Op : std::uint8_t { input, constant, sum, product, quotient, power, negate, log, exp };
  struct Instr {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    long exponent = 0;
    double constant = 0.0;
    std::vector<std::uint32_t> args;
  };

  std::vector<SymbolKey> inputs_;
  std::vector<Instr> code_;
  std::vector<std::uint32_t> outputs_;

  friend class TapeBuilder;
};

}  // namespace hypinv
