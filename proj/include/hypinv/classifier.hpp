#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypinv/equation.hpp"
#include "hypinv/invariants.hpp"
#include "hypinv/kernel.hpp"

namespace hypinv {

struct Decision {
  /// e.g. "H == 0", "P_t == 0".
  std::string predicate;
  bool verdict = false;
  ZeroMethod method = ZeroMethod::symbolic;
};

enum class CanonicalTarget : std::uint8_t { wave, s6_1, s6_2 };

const char* target_name(CanonicalTarget t);

struct ClassificationReport {
  Subclass subclass = Subclass::S1;
  /// t and x were exchanged so that H is not identically zero.
  bool swapped = false;
  /// The equation the frame refers to (after the swap, if any).
  HyperbolicEquation equation;
  InvariantFrame frame;
  std::vector<Decision> decisions;
  std::optional<CanonicalTarget> canonical_target;
};

/// A zero test in the decision tree was indeterminate.
class ClassificationError : public std::runtime_error {
 public:
  ClassificationError(std::string predicate, const std::string& why)
      : std::runtime_error("cannot decide '" + predicate + "': " + why), predicate_(std::move(predicate)) {}
  const std::string& predicate() const { return predicate_; }

 private:
  std::string predicate_;
};

ClassificationReport classify(const HyperbolicEquation& eq, const ZeroTestOptions& opts = {});

/// Wave equation for S1; for S6 the constant-coefficient representative
/// with lambda = P when Q == 0, the Euler-Poisson form with lambda = P,
/// mu = Q otherwise. Throws DomainError for S2..S5.
HyperbolicEquation canonical_form(const ClassificationReport& report);

/// u_tx = -t u_t - lambda x u_x - lambda t x u.
HyperbolicEquation s6_constant_form(const Expr& lambda);
/// u_tx = 2/(mu (t+x)) u_t + 2 lambda/(mu (t+x)) u_x - 4 lambda/(mu^2 (t+x)^2) u.
HyperbolicEquation s6_euler_poisson_form(const Expr& lambda, const Expr& mu);

}  // namespace hypinv
