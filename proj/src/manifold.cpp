#include "hypinv/manifold.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypinv/errors.hpp"
#include "hypinv/kernel.hpp"

namespace hypinv {

std::string Coordinate::label() const {
  if (!indexed) return base;
  if (j < 10 && k < 10) return base + "_" + std::to_string(j) + std::to_string(k);
  return base + "_" + std::to_string(j) + "," + std::to_string(k);
}

std::vector<Coordinate> manifold_coordinates(Subclass s, int order) {
  if (!has_operators(s)) throw DomainError(std::string("no classifying manifold on ") + subclass_name(s));
  if (order < 0) throw DomainError("manifold order must be non-negative");
  std::vector<std::pair<std::string, bool>> bases;
  switch (s) {
    case Subclass::S2: bases = {{"P", true}, {"Q", true}, {"J2", true}}; break;
    case Subclass::S3: bases = {{"P", false}, {"Q", true}, {"L", true}}; break;
    case Subclass::S4: bases = {{"P", false}, {"Q", true}, {"M2", true}}; break;
    default: bases = {{"P", false}, {"Q", false}, {"N", true}}; break;
  }
  std::vector<Coordinate> out;
  for (const auto& [name, indexed] : bases) {
    if (!indexed) {
      out.push_back({name, 0, 0, false});
      continue;
    }
    for (int j = 0; j <= order; ++j) {
      for (int k = 0; j + k <= order; ++k) out.push_back({name, j, k, true});
    }
  }
  std::sort(out.begin(), out.end(), [](const Coordinate& a, const Coordinate& b) {
    return std::tie(a.base, a.j, a.k) < std::tie(b.base, b.j, b.k);
  });
  return out;
}

InvariantMap::InvariantMap(const InvariantFrame& frame, int order)
    : tag_(frame.tag), order_(order), coords_(manifold_coordinates(frame.tag, order)) {
  auto base_of = [&](const std::string& name) -> Expr {
    if (name == "P") return *frame.P;
    if (name == "Q") return *frame.Q;
    return frame.extras.at(name);
  };
  // D2^k first, then D1^j, reusing the lower rungs of each tower.
  std::map<std::tuple<std::string, int, int>, Expr> tower;
  for (const auto& c : coords_) {
    Expr e = base_of(c.base);
    for (int k = 1; k <= c.k; ++k) {
      auto key = std::make_tuple(c.base, 0, k);
      auto it = tower.find(key);
      e = it != tower.end() ? it->second : tower.emplace(key, invariant_derivative(frame, e, 2)).first->second;
    }
    for (int j = 1; j <= c.j; ++j) {
      auto key = std::make_tuple(c.base, j, c.k);
      auto it = tower.find(key);
      e = it != tower.end() ? it->second : tower.emplace(key, invariant_derivative(frame, e, 1)).first->second;
    }
    exprs_.push_back(e);
  }
  for (const auto& e : exprs_) {
    for (const auto& key : free_symbols(e)) {
      if (key.kind == SymbolKey::Kind::variable) continue;
      throw DomainError("manifold needs a numeric value for '" + key.str() + "'");
    }
  }
  tape_ = std::make_shared<const CompiledExpr>(
      exprs_, std::vector<SymbolKey>{SymbolKey::variable(Var::t), SymbolKey::variable(Var::x)});
}

std::vector<std::string> InvariantMap::labels() const {
  std::vector<std::string> out;
  for (const auto& c : coords_) out.push_back(c.label());
  return out;
}

bool InvariantMap::eval(double t, double x, double* out) const {
  double in[2] = {t, x};
  try {
    tape_->run(in, out, {kSingularFloor});
  } catch (const SingularEvaluation&) {
    return false;
  }
  return true;
}

std::vector<double> ClassifyingManifold::ranges() const {
  std::vector<double> lo(coordinates.size(), std::numeric_limits<double>::infinity());
  std::vector<double> hi(coordinates.size(), -std::numeric_limits<double>::infinity());
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      lo[i] = std::min(lo[i], s.values[i]);
      hi[i] = std::max(hi[i], s.values[i]);
    }
  }
  std::vector<double> r(coordinates.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (hi[i] >= lo[i]) r[i] = hi[i] - lo[i];
  }
  return r;
}

namespace {

double node(double a, double b, int i, int n) { return n < 2 ? a : a + (b - a) * i / (n - 1); }

}  // namespace

ClassifyingManifold sample_manifold(const InvariantMap& map, const Domain& domain, const Grid& grid) {
  if (grid.nt < 1 || grid.nx < 1) throw DomainError("grid must have at least one point per axis");
  ClassifyingManifold m;
  m.order = map.order();
  m.tag = map.subclass();
  m.coordinates = map.labels();
  m.domain = domain;
  m.grid = grid;
  std::vector<double> v(map.dimension());
  for (int i = 0; i < grid.nt; ++i) {
    for (int j = 0; j < grid.nx; ++j) {
      double t = node(domain.t0, domain.t1, i, grid.nt);
      double x = node(domain.x0, domain.x1, j, grid.nx);
      if (map.eval(t, x, v.data())) m.samples.push_back({t, x, v});
    }
  }
  if (m.samples.size() < kMinSamples) {
    throw DomainError("only " + std::to_string(m.samples.size()) +
                      " regular samples on the domain; enlarge the domain or the grid");
  }
  return m;
}

ClassifyingManifold build_manifold(const InvariantFrame& frame, int order, const Domain& domain, const Grid& grid) {
  return sample_manifold(InvariantMap(frame, order), domain, grid);
}

namespace {

class Distance {
 public:
  Distance(const InvariantMap& map, std::vector<double> inv_scale)
      : map_(map), inv_scale_(std::move(inv_scale)), buf_(map.dimension()) {}

  double of(const double* target, const double* w) const {
    double d = 0.0;
    for (std::size_t i = 0; i < inv_scale_.size(); ++i) d = std::max(d, std::fabs(target[i] - w[i]) * inv_scale_[i]);
    return d;
  }

  // Infinity when B is singular at (t, x).
  double at(const double* target, double t, double x) {
    if (!map_.eval(t, x, buf_.data())) return std::numeric_limits<double>::infinity();
    return of(target, buf_.data());
  }

 private:
  const InvariantMap& map_;
  std::vector<double> inv_scale_;
  std::vector<double> buf_;
};

}  // namespace

OverlapResult overlap_residual(const ClassifyingManifold& a, const InvariantMap& b, const Domain& dom,
                               const Grid& grid, const OverlapOptions& opts) {
  if (a.tag != b.subclass() || a.order != b.order()) throw DomainError("manifolds of different subclass or order");
  std::vector<double> inv;
  for (double r : a.ranges()) inv.push_back(1.0 / (1.0 + r));
  Distance dist(b, inv);

  std::vector<ManifoldSample> coarse;
  {
    std::vector<double> v(b.dimension());
    for (int i = 0; i < grid.nt; ++i) {
      for (int j = 0; j < grid.nx; ++j) {
        double t = node(dom.t0, dom.t1, i, grid.nt);
        double x = node(dom.x0, dom.x1, j, grid.nx);
        if (b.eval(t, x, v.data())) coarse.push_back({t, x, v});
      }
    }
  }
  const double exact = 1e-15;
  const double step_t0 = grid.nt > 1 ? (dom.t1 - dom.t0) / (grid.nt - 1) : (dom.t1 - dom.t0) / 2;
  const double step_x0 = grid.nx > 1 ? (dom.x1 - dom.x0) / (grid.nx - 1) : (dom.x1 - dom.x0) / 2;

  OverlapResult out;
  std::size_t evaluated = 0, matched = 0;
  for (const auto& s : a.samples) {
    const double* target = s.values.data();
    double best = std::numeric_limits<double>::infinity();
    double bt = 0, bx = 0;
    for (const auto& c : coarse) {
      double d = dist.of(target, c.values.data());
      if (d < best) {
        best = d;
        bt = c.t;
        bx = c.x;
        if (best < exact) break;
      }
    }
    if (!std::isfinite(best)) continue;
    double st = step_t0, sx = step_x0;
    int halvings = 0, moves = 0;
    while (best >= exact && halvings < opts.refine_iterations && moves < 50 * opts.refine_iterations) {
      double nt = bt, nx = bx, nb = best;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (!di && !dj) continue;
          double t = std::clamp(bt + di * st, dom.t0, dom.t1);
          double x = std::clamp(bx + dj * sx, dom.x0, dom.x1);
          double d = dist.at(target, t, x);
          if (d < nb) {
            nb = d;
            nt = t;
            nx = x;
          }
        }
      }
      if (nb < best) {
        best = nb;
        bt = nt;
        bx = nx;
        ++moves;
      } else {
        st /= 2;
        sx /= 2;
        ++halvings;
      }
    }
    ++evaluated;
    if (best < opts.tol_match) ++matched;
    out.residual = std::max(out.residual, best);
  }
  double n = static_cast<double>(a.samples.size());
  out.evaluated_fraction = n > 0 ? evaluated / n : 0.0;
  out.matched_fraction = n > 0 ? matched / n : 0.0;
  return out;
}

int local_rank(const InvariantMap& map, double t, double x, const std::vector<double>& scale, double h,
               double rel_tol) {
  const std::size_t m = map.dimension();
  std::vector<double> c(m), v(m);
  if (!map.eval(t, x, c.data())) throw SingularEvaluation("rank probe at a singular point");
  Eigen::MatrixXd d(8, static_cast<Eigen::Index>(m));
  int row = 0;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      if (!a && !b) continue;
      if (!map.eval(t + a * h, x + b * h, v.data())) throw SingularEvaluation("rank probe at a singular point");
      for (std::size_t i = 0; i < m; ++i) d(row, static_cast<Eigen::Index>(i)) = (v[i] - c[i]) / scale[i];
      ++row;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++rank;
  }
  return rank;
}

const char* status_name(EquivalenceStatus s) {
  switch (s) {
    case EquivalenceStatus::equivalent: return "equivalent";
    case EquivalenceStatus::not_equivalent: return "not_equivalent";
    case EquivalenceStatus::indeterminate: return "indeterminate";
  }
  return "";
}

namespace {

// |a - b| for constants, 0 / infinity for symbolic ones.
double constant_gap(const Expr& a, const Expr& b, const ZeroTestOptions& zopts) {
  Expr d = simplify(a - b);
  if (d.is_constant()) return std::fabs(d.value().get_d());
  return is_identically_zero(d, zopts) ? 0.0 : std::numeric_limits<double>::infinity();
}

EquivalenceStatus band(double r, double tol) {
  if (r < tol) return EquivalenceStatus::equivalent;
  if (r > 100 * tol) return EquivalenceStatus::not_equivalent;
  return EquivalenceStatus::indeterminate;
}

}  // namespace

EquivalenceVerdict decide_equivalence(const ClassificationReport& a, const ClassificationReport& b,
                                      const EquivalenceOptions& opts) {
  EquivalenceVerdict v;
  v.subclass_a = a.subclass;
  v.subclass_b = b.subclass;
  if (a.subclass != b.subclass) {
    v.status = EquivalenceStatus::not_equivalent;
    v.matched_fraction = 0.0;
    v.notes.push_back(std::string("different subclasses ") + subclass_name(a.subclass) + " and " +
                      subclass_name(b.subclass));
    return v;
  }
  if (a.subclass == Subclass::S1) {
    v.status = EquivalenceStatus::equivalent;
    v.notes.push_back("both equations are equivalent to the wave equation");
    return v;
  }
  if (a.subclass == Subclass::S6) {
    double gp = constant_gap(*a.frame.P, *b.frame.P, opts.zero);
    double gq = constant_gap(*a.frame.Q, *b.frame.Q, opts.zero);
    double g = std::max(gp, gq);
    if (std::isfinite(g)) {
      v.residual_ab = g;
      v.residual_ba = g;
    }
    v.status = band(g, opts.tol_match);
    v.matched_fraction = v.status == EquivalenceStatus::equivalent ? 1.0 : 0.0;
    v.notes.push_back("compared the constant invariants P and Q");
    return v;
  }

  InvariantMap ma(a.frame, opts.order);
  InvariantMap mb(b.frame, opts.order);
  ClassifyingManifold ca = sample_manifold(ma, opts.domain_a, opts.grid);
  ClassifyingManifold cb = sample_manifold(mb, opts.domain_b, opts.grid);
  OverlapOptions oo;
  oo.tol_match = opts.tol_match;
  OverlapResult ab = overlap_residual(ca, mb, opts.domain_b, opts.grid, oo);
  OverlapResult ba = overlap_residual(cb, ma, opts.domain_a, opts.grid, oo);
  v.residual_ab = ab.residual;
  v.residual_ba = ba.residual;
  v.matched_fraction = std::min(ab.matched_fraction, ba.matched_fraction);
  double evaluated = std::min(ab.evaluated_fraction, ba.evaluated_fraction);
  if (evaluated < 0.9) {
    v.status = EquivalenceStatus::indeterminate;
    v.notes.push_back("the other manifold could not be evaluated near most samples");
    return v;
  }
  double r = std::max(ab.residual, ba.residual);
  v.status = band(r, opts.tol_match);
  if (v.status == EquivalenceStatus::equivalent && v.matched_fraction < 0.9) {
    v.status = EquivalenceStatus::indeterminate;
  }
  return v;
}

EquivalenceVerdict decide_equivalence(const HyperbolicEquation& a, const HyperbolicEquation& b,
                                      const EquivalenceOptions& opts) {
  return decide_equivalence(classify(a, opts.zero), classify(b, opts.zero), opts);
}

}  // namespace hypinv
