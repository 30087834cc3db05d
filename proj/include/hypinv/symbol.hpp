#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hypinv {

/// The two independent variables of the equation class.
enum class Var : std::uint8_t { t, x };

inline char var_name(Var v) { return v == Var::t ? 't' : 'x'; }
inline Var other(Var v) { return v == Var::t ? Var::x : Var::t; }

/// Identifies one free symbol for evaluation: a variable, a named parameter,
/// or a function symbol at a given derivative order. The argument of a
/// function symbol is not part of the key.
struct SymbolKey {
  enum class Kind : std::uint8_t { variable, parameter, function };

  Kind kind = Kind::variable;
  std::string name;
  int order = 0;

  static SymbolKey variable(Var v) { return {Kind::variable, std::string(1, var_name(v)), 0}; }
  static SymbolKey parameter(std::string n) { return {Kind::parameter, std::move(n), 0}; }
  static SymbolKey function(std::string n, int k) { return {Kind::function, std::move(n), k}; }

  /// t, x, lambda, p, p', p'' ...
  std::string str() const {
    if (kind != Kind::function) return name;
    return name + std::string(static_cast<std::size_t>(order), '\'');
  }

  auto operator<=>(const SymbolKey&) const = default;
};

}  // namespace hypinv
