#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hypinv/classifier.hpp"
#include "hypinv/corpus.hpp"
#include "hypinv/errors.hpp"
#include "hypinv/manifold.hpp"
#include "hypinv/parser.hpp"
#include "random_expr.hpp"

using namespace hypinv;
using hypinv::testing::ExprGen;

namespace {

HyperbolicEquation counter(const char* q) { return counterexample(parse("t"), parse(q)); }

EquivalenceOptions options_for(const Domain& a, const Domain& b) {
  EquivalenceOptions o;
  o.domain_a = a;
  o.domain_b = b;
  return o;
}

ClassifyingManifold manifold_of(const Witness& w, int order = 2) {
  return build_manifold(classify(w.equation).frame, order, w.domain, Grid{});
}

std::size_t index_of(const ClassifyingManifold& m, const std::string& label) {
  auto it = std::find(m.coordinates.begin(), m.coordinates.end(), label);
  EXPECT_NE(it, m.coordinates.end()) << label;
  return static_cast<std::size_t>(it - m.coordinates.begin());
}

}  // namespace

TEST(Coordinates, Lists) {
  auto labels = [](Subclass s, int order) {
    std::vector<std::string> out;
    for (const auto& c : manifold_coordinates(s, order)) out.push_back(c.label());
    return out;
  };
  EXPECT_EQ(labels(Subclass::S2, 1),
            (std::vector<std::string>{"J2_00", "J2_01", "J2_10", "P_00", "P_01", "P_10", "Q_00", "Q_01", "Q_10"}));
  EXPECT_EQ(labels(Subclass::S3, 1), (std::vector<std::string>{"L_00", "L_01", "L_10", "P", "Q_00", "Q_01", "Q_10"}));
  EXPECT_EQ(labels(Subclass::S4, 0), (std::vector<std::string>{"M2_00", "P", "Q_00"}));
  EXPECT_EQ(labels(Subclass::S5, 1), (std::vector<std::string>{"N_00", "N_01", "N_10", "P", "Q"}));
  EXPECT_EQ(manifold_coordinates(Subclass::S2, 2).size(), 18u);
  EXPECT_EQ(manifold_coordinates(Subclass::S3, 2).size(), 13u);
  EXPECT_THROW(manifold_coordinates(Subclass::S1, 2), DomainError);
  EXPECT_THROW(manifold_coordinates(Subclass::S6, 2), DomainError);
  EXPECT_THROW(manifold_coordinates(Subclass::S2, -1), DomainError);
}

TEST(Manifold, SamplesFinite) {
  for (const auto& w : manifold_witnesses()) {
    ClassifyingManifold m = manifold_of(w);
    EXPECT_EQ(m.tag, w.subclass) << w.name;
    EXPECT_GE(m.samples.size(), kMinSamples);
    for (const auto& s : m.samples) {
      EXPECT_TRUE(w.domain.contains(s.t, s.x));
      ASSERT_EQ(s.values.size(), m.coordinates.size());
      for (double v : s.values) EXPECT_TRUE(std::isfinite(v)) << w.name;
    }
  }
}

TEST(Manifold, CounterexampleQTower) {
  Witness w{"c", counter("t+2"), Subclass::S2, Domain{}};
  ClassifyingManifold m = manifold_of(w);
  ASSERT_EQ(m.samples.size(), 400u);
  std::size_t q10 = index_of(m, "Q_10"), q00 = index_of(m, "Q_00"), p00 = index_of(m, "P_00");
  for (const auto& s : m.samples) {
    EXPECT_NEAR(s.values[q10], 1.0, 1e-12);
    EXPECT_NEAR(s.values[q00], s.t + 2, 1e-12);
    EXPECT_NEAR(s.values[p00], s.t, 1e-12);
    for (const char* l : {"Q_01", "Q_02", "Q_11"}) EXPECT_NEAR(s.values[index_of(m, l)], 0.0, 1e-12) << l;
    EXPECT_NEAR(s.values[index_of(m, "Q_20")], 0.0, 1e-12);
  }
}

TEST(Manifold, Rejected) {
  EXPECT_THROW(InvariantMap(classify(wave_equation()).frame, 2), DomainError);
  EXPECT_THROW(InvariantMap(classify(s6_1_witness()).frame, 2), DomainError);
  EXPECT_THROW(InvariantMap(classify(s5_witness()).frame, 2), DomainError);
  Domain tiny{0.1, 0.1001, 0.2, 0.2001};
  EXPECT_THROW(build_manifold(classify(s3_witness()).frame, 2, tiny, Grid{3, 3}), DomainError);
}

TEST(Manifold, SingularPointsSkipped) {
  // t = x lies inside the rectangle and is singular for the S4 witness.
  ClassifyingManifold m = build_manifold(classify(s4_witness()).frame, 1, Domain{0.1, 1.1, 0.1, 1.1}, Grid{11, 11});
  EXPECT_LT(m.samples.size(), 121u);
  for (const auto& s : m.samples) EXPECT_GT(std::abs(s.t - s.x), 1e-9);
}

TEST(Overlap, SelfOverlap) {
  for (const auto& w : manifold_witnesses()) {
    InvariantFrame f = classify(w.equation).frame;
    InvariantMap map(f, 2);
    ClassifyingManifold m = sample_manifold(map, w.domain, Grid{});
    OverlapResult r = overlap_residual(m, map, w.domain, Grid{});
    EXPECT_LT(r.residual, 1e-9) << w.name;
    EXPECT_EQ(r.matched_fraction, 1.0);
    EXPECT_EQ(r.evaluated_fraction, 1.0);
  }
}

TEST(Overlap, OffGridSamples) {
  // A is sampled on a grid that B's coarse search never visits.
  Witness w = manifold_witnesses()[2];
  InvariantMap map(classify(w.equation).frame, 2);
  ClassifyingManifold m = sample_manifold(map, Domain{0.13, 1.07, 0.23, 1.17}, Grid{7, 9});
  OverlapResult r = overlap_residual(m, map, w.domain, Grid{});
  EXPECT_LT(r.residual, 1e-6);
  EXPECT_EQ(r.matched_fraction, 1.0);
}

TEST(Overlap, CounterexampleGauge) {
  HyperbolicEquation a = counter("t+2");
  HyperbolicEquation b = gauge_transform(a, parse("exp(t+x)"));
  InvariantMap mb(classify(b).frame, 2);
  ClassifyingManifold ma = build_manifold(classify(a).frame, 2, Domain{}, Grid{});
  EXPECT_LT(overlap_residual(ma, mb, Domain{}, Grid{}).residual, 1e-6);
  EquivalenceVerdict v = decide_equivalence(a, b);
  EXPECT_EQ(v.status, EquivalenceStatus::equivalent);
}

TEST(Overlap, SeparationAgainstOracle) {
  ClassifyingManifold ma = build_manifold(classify(counter("t+2")).frame, 2, Domain{}, Grid{});
  InvariantMap mb(classify(counter("2*t")).frame, 2);
  OverlapResult r = overlap_residual(ma, mb, Domain{}, Grid{});
  // Lower bound from the coordinates P = t and Q = q(t) alone, minimized on a
  // dense grid of B's t-range: both A-ranges equal 1 on the default domain.
  double bound = 0.0;
  for (const auto& s : ma.samples) {
    double best = 1e300;
    for (int i = 0; i <= 20000; ++i) {
      double tb = 0.1 + i * 1e-4;
      best = std::min(best, std::max(std::abs(s.t - tb), std::abs(s.t + 2 - 2 * tb)) / 2.0);
    }
    bound = std::max(bound, best);
  }
  EXPECT_NEAR(bound, 0.95 / 3.0 * 2.0 / 2.0, 1e-3);
  EXPECT_GT(r.residual, 0.1);
  EXPECT_GE(r.residual, bound - 1e-6);
  EquivalenceVerdict v = decide_equivalence(counter("t+2"), counter("2*t"));
  EXPECT_EQ(v.status, EquivalenceStatus::not_equivalent);
  EXPECT_GT(*v.residual_ab, 0.1);
  EXPECT_GT(*v.residual_ba, 0.1);
}

TEST(Decide, ThresholdBand) {
  EquivalenceVerdict near = decide_equivalence(counter("t+2"), counter("t+2+1/100000"));
  EXPECT_GT(*near.residual_ab, 1e-6);
  EXPECT_LT(*near.residual_ab, 1e-4);
  EXPECT_EQ(near.status, EquivalenceStatus::indeterminate);
  EquivalenceVerdict far = decide_equivalence(counter("t+2"), counter("t+2+1/100"));
  EXPECT_EQ(far.status, EquivalenceStatus::not_equivalent);
}

TEST(Decide, WaveGauge) {
  EquivalenceVerdict v = decide_equivalence(wave_equation(), gauge_transform(wave_equation(), parse("exp(t*x)")));
  EXPECT_EQ(v.status, EquivalenceStatus::equivalent);
  EXPECT_EQ(v.subclass_a, Subclass::S1);
}

TEST(Decide, S6Constants) {
  Expr two = Expr::integer(2);
  HyperbolicEquation a = specialize(s6_1_witness(), {{"lambda", two}}, {});
  HyperbolicEquation b = specialize(s6_2_witness(), {{"lambda", two}, {"mu", Expr::integer(1)}}, {});
  EquivalenceVerdict v = decide_equivalence(a, b);
  EXPECT_EQ(v.status, EquivalenceStatus::not_equivalent);
  EXPECT_NEAR(*v.residual_ab, 1.0, 1e-15);
  EXPECT_EQ(decide_equivalence(a, s6_constant_form(two)).status, EquivalenceStatus::equivalent);
  EXPECT_EQ(decide_equivalence(s6_2_witness(), gauge_transform(s6_2_witness(), parse("t+x"))).status,
            EquivalenceStatus::equivalent);
  EXPECT_EQ(decide_equivalence(s6_1_witness(), s6_2_witness()).status, EquivalenceStatus::not_equivalent);
}

TEST(Decide, SelfEquivalence) {
  for (const auto& w : classification_witnesses()) {
    if (w.subclass != Subclass::S1 && w.subclass != Subclass::S6) continue;
    EXPECT_EQ(decide_equivalence(w.equation, w.equation).status, EquivalenceStatus::equivalent) << w.name;
  }
  for (const auto& w : manifold_witnesses()) {
    EquivalenceVerdict v = decide_equivalence(w.equation, w.equation, options_for(w.domain, w.domain));
    EXPECT_EQ(v.status, EquivalenceStatus::equivalent) << w.name;
    EXPECT_EQ(v.matched_fraction, 1.0);
  }
}

TEST(Decide, GaugeSoundness) {
  ExprGen g(5150, false);
  auto start = std::chrono::steady_clock::now();
  for (const auto& w : manifold_witnesses()) {
    for (int i = 0; i < 10; ++i) {
      Expr c = g.rational() + Expr::integer(13);
      if (i % 2) c = c * exp(g.rational(2));
      HyperbolicEquation b = gauge_transform(w.equation, c);
      EquivalenceVerdict v = decide_equivalence(w.equation, b, options_for(w.domain, w.domain));
      EXPECT_EQ(v.status, EquivalenceStatus::equivalent) << w.name << " c = " << c.str();
      EXPECT_LT(*v.residual_ab, 1e-6);
      EXPECT_LT(*v.residual_ba, 1e-6);
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 60.0);
}

TEST(Decide, SubclassSeparationAndSymmetry) {
  std::vector<Witness> ws = classification_witnesses();
  for (const auto& w : manifold_witnesses()) ws.push_back(w);
  ws.push_back({"S2 q=2t", counter("2*t"), Subclass::S2, Domain{}});
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      bool symbolic_s5 = ws[i].name == "S5" && ws[j].subclass == Subclass::S5;
      if (symbolic_s5) continue;
      EquivalenceVerdict ab = decide_equivalence(ws[i].equation, ws[j].equation, options_for(ws[i].domain, ws[j].domain));
      EquivalenceVerdict ba = decide_equivalence(ws[j].equation, ws[i].equation, options_for(ws[j].domain, ws[i].domain));
      EXPECT_EQ(ab.status, ba.status) << ws[i].name << " / " << ws[j].name;
      if (ws[i].subclass != ws[j].subclass) {
        EXPECT_EQ(ab.status, EquivalenceStatus::not_equivalent) << ws[i].name << " / " << ws[j].name;
      }
    }
  }
}

TEST(Rank, AtMostTwo) {
  for (const auto& w : manifold_witnesses()) {
    InvariantMap map(classify(w.equation).frame, 2);
    ClassifyingManifold m = sample_manifold(map, w.domain, Grid{});
    std::vector<double> scale;
    for (double r : m.ranges()) scale.push_back(1.0 + r);
    int probes = 0;
    for (int i = 1; i <= 10; ++i) {
      double t = w.domain.t0 + (w.domain.t1 - w.domain.t0) * (0.05 + 0.09 * i);
      double x = w.domain.x0 + (w.domain.x1 - w.domain.x0) * (0.93 - 0.08 * i);
      int r = local_rank(map, t, x, scale);
      EXPECT_LE(r, 2) << w.name << " at " << t << ", " << x;
      EXPECT_GE(r, 1);
      ++probes;
    }
    EXPECT_EQ(probes, 10);
  }
}

TEST(Rank, Counterexample) {
  // P and Q depend on t alone, J2 = -2/(t+x) - 1/(t+2) on x as well.
  InvariantMap map(classify(counter("t+2")).frame, 2);
  std::vector<double> scale(map.dimension(), 1.0);
  EXPECT_EQ(local_rank(map, 0.5, 0.7, scale), 2);
  InvariantMap s3(classify(s3_witness()).frame, 0);
  EXPECT_EQ(local_rank(s3, 0.5, 0.7, std::vector<double>(s3.dimension(), 1.0)), 1);
}
