#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "hypinv/equation.hpp"

namespace hypinv {

/// Malformed equation document. `field` names the offending JSON member.
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : "field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses an equation document:
///
///   {"T": "<expr>", "X": "<expr>", "U": "<expr>",
///    "params": {"lambda": 3.0, "mu": null},
///    "functions": ["p", "q"]  or  {"p": "t", "q": "t+2"}}
///
/// Numeric parameter values (and `assume`, which overrides them) are
/// substituted exactly. A function given with a definition is substituted
/// too; one given by name only stays opaque.
HyperbolicEquation load_equation(const std::string& json_text, const std::map<std::string, std::string>& assume = {});
HyperbolicEquation load_equation_file(const std::string& path, const std::map<std::string, std::string>& assume = {});

/// Exact rational value of a decimal literal such as "2.5", "-3", "1e-3".
mpq_class parse_decimal(const std::string& text);

}  // namespace hypinv
