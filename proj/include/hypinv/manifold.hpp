#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypinv/classifier.hpp"
#include "hypinv/evaluate.hpp"
#include "hypinv/invariants.hpp"

namespace hypinv {

/// Rectangle [t0, t1] x [x0, x1].
struct Domain {
  double t0 = 0.1;
  double t1 = 1.1;
  double x0 = 0.2;
  double x1 = 1.2;

  bool contains(double t, double x) const { return t >= t0 && t <= t1 && x >= x0 && x <= x1; }
};

struct Grid {
  int nt = 20;
  int nx = 20;
};

/// Denominators this close to zero make a sample singular.
inline constexpr double kSingularFloor = 1e-12;
inline constexpr std::size_t kMinSamples = 25;

/// Coordinate labels of the order-s classifying manifold, sorted by
/// (label, j, k): P_jk, Q_jk, J2_jk on S2; P, Q_jk, L_jk on S3;
/// P, Q_jk, M2_jk on S4; P, Q, N_jk on S5.
struct Coordinate {
  std::string base;
  int j = 0;
  int k = 0;
  bool indexed = true;

  std::string label() const;
};
std::vector<Coordinate> manifold_coordinates(Subclass s, int order);

/// The map (t, x) -> derived invariants, compiled for repeated evaluation.
class InvariantMap {
 public:
  /// Throws DomainError for S1/S6 frames or when a parameter or function
  /// symbol is left without a numeric value.
  InvariantMap(const InvariantFrame& frame, int order);

  Subclass subclass() const { return tag_; }
  int order() const { return order_; }
  const std::vector<Coordinate>& coordinates() const { return coords_; }
  std::vector<std::string> labels() const;
  const std::vector<Expr>& expressions() const { return exprs_; }

  /// False at singular points.
  bool eval(double t, double x, double* out) const;
  std::size_t dimension() const { return coords_.size(); }

 private:
  Subclass tag_;
  int order_;
  std::vector<Coordinate> coords_;
  std::vector<Expr> exprs_;
  std::shared_ptr<const CompiledExpr> tape_;
};

struct ManifoldSample {
  double t = 0.0;
  double x = 0.0;
  std::vector<double> values;
};

struct ClassifyingManifold {
  int order = 2;
  Subclass tag = Subclass::S2;
  std::vector<std::string> coordinates;
  std::vector<ManifoldSample> samples;
  Domain domain;
  Grid grid;

  /// max - min of each coordinate over the samples.
  std::vector<double> ranges() const;
};

/// Evaluates the map on a grid including the rectangle's edges, skipping
/// singular points. Throws DomainError with fewer than kMinSamples points.
ClassifyingManifold sample_manifold(const InvariantMap& map, const Domain& domain, const Grid& grid);
ClassifyingManifold build_manifold(const InvariantFrame& frame, int order, const Domain& domain, const Grid& grid);

struct OverlapResult {
  /// Max over the evaluated samples of A of the normalized distance to B.
  double residual = 0.0;
  /// Fraction of A's samples whose distance is below the match tolerance.
  double matched_fraction = 0.0;
  /// Fraction of A's samples for which B could be evaluated at all.
  double evaluated_fraction = 0.0;
};

struct OverlapOptions {
  double tol_match = 1e-6;
  int refine_iterations = 40;
};

/// For every sample value v of A, minimizes the infinity norm of
/// (v - c_B(t, x)) / (1 + range of A) over B's domain: first over B's grid,
/// then by pattern search with halving steps.
OverlapResult overlap_residual(const ClassifyingManifold& a, const InvariantMap& b, const Domain& domain_b,
                               const Grid& grid_b, const OverlapOptions& opts = {});

/// Numerical rank of the local spread of sampled values around (t, x):
/// singular values of the stencil differences above rel_tol times the
/// largest one.
int local_rank(const InvariantMap& map, double t, double x, const std::vector<double>& scale, double h = 1e-5,
               double rel_tol = 1e-3);

enum class EquivalenceStatus : std::uint8_t { equivalent, not_equivalent, indeterminate };

const char* status_name(EquivalenceStatus s);

struct EquivalenceVerdict {
  EquivalenceStatus status = EquivalenceStatus::indeterminate;
  Subclass subclass_a = Subclass::S1;
  Subclass subclass_b = Subclass::S1;
  std::optional<double> residual_ab;
  std::optional<double> residual_ba;
  double matched_fraction = 1.0;
  std::vector<std::string> notes;
};

struct EquivalenceOptions {
  int order = 2;
  Domain domain_a;
  Domain domain_b;
  Grid grid;
  double tol_match = 1e-6;
  ZeroTestOptions zero;
};

/// Classifies both equations and compares them: by subclass, by the
/// constants P, Q on S6, by two-sided manifold overlap on S2..S5.
/// ClassificationError propagates.
EquivalenceVerdict decide_equivalence(const HyperbolicEquation& a, const HyperbolicEquation& b,
                                      const EquivalenceOptions& opts = {});

/// Same decision from existing reports.
EquivalenceVerdict decide_equivalence(const ClassificationReport& a, const ClassificationReport& b,
                                      const EquivalenceOptions& opts = {});

}  // namespace hypinv
