#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypinv/manifold.hpp"

namespace hypinv::cli {

enum class Command : std::uint8_t { classify, invariants, equivalence, manifold, selftest };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int not_equivalent = 1;
inline constexpr int indeterminate = 2;
inline constexpr int input_error = 3;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::selftest;
  std::vector<std::string> inputs;
  int order = 2;
  Domain domain;
  /// Domain of the second equation; the first one's when unset.
  std::optional<Domain> domain_b;
  Grid grid;
  std::uint64_t seed = 42;
  double tol_match = 1e-6;
  /// Parameter specializations, value text as on the command line.
  std::map<std::string, std::string> assume;
  /// Manifold CSV path; stdout when empty.
  std::string output;
  /// Size of the character table printed by selftest.
  int table_n = 2;
};

/// Runs one command. Results go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line into a config and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 12 significant digits, "null" for non-finite values.
std::string format_real(double v);

}  // namespace hypinv::cli
