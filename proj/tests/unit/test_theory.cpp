#include <cmath>

#include <gtest/gtest.h>

#include <netoco/error.hpp>
#include <netoco/graph.hpp>
#include <netoco/theory.hpp>

using namespace netoco;

namespace {

constexpr double kExact = 1e-12;

// Plain transcription of the competitive-ratio bound and its gate, with
// pow() everywhere and C3 summed by hand.
std::pair<double, double> cr_by_hand(double mu, double lf, double lT, double lS, int D,
                                     const std::vector<double>& h, double rT, double rS, double C1,
                                     int k, int r) {
  double rG = 1.0 - 2.0 / (std::sqrt(1.0 + 2.0 * lT / mu) + 1.0);
  double C0 = std::max(1.0, 2.0 * lT / mu);
  double C3 = 0.0;
  for (int g = 0; g <= r; ++g) C3 += (g < (int)h.size() ? h[g] : 0.0) * std::pow(rS, g);
  double hr = r < (int)h.size() ? h[r] : 0.0;
  double L = 32.0 * C0 * C0 * C1 * C1 * (lf + D * lS + 2.0 * lT);
  double bound = 1.0 + (1.0 + L * hr * hr / (mu * std::pow(1 - rG, 2) * std::pow(1 - rT, 2))) * std::pow(rS, r) +
                 (1.0 + L * C3 * C3 / (mu * std::pow(1 - rG, 2))) * std::pow(rT, k - 1);
  double gate = 4.0 * C1 * C1 * std::pow(C0, 4) / std::pow(1 - rG, 2) *
                (hr * hr * rG * rG / ((1 - rT) * (1 - rG * rG * rT)) * std::pow(rS, 2 * r) +
                 C3 * C3 * std::pow(rT, 2 * (k - 1)) * std::pow(rG, 2 * k));
  return {bound, gate};
}

}  // namespace

TEST(DecayBasic, ZeroCouplings) {
  BasicDecay b = decay_basic(1.0, 0.0, 0.0, 3);
  EXPECT_EQ(b.rho_T, 0.0);
  EXPECT_EQ(b.rho_S, 0.0);
  EXPECT_EQ(b.C1, 0.0);
  EXPECT_EQ(b.C2, b.C1);
}

TEST(DecayBasic, PerfectSquarePoints) {
  EXPECT_NEAR(decay_basic(1.0, 4.0, 0.0, 3).rho_T, std::sqrt(0.5), kExact);
  EXPECT_NEAR(decay_basic(2.0, 8.0, 0.0, 3).rho_T, std::sqrt(0.5), kExact);
  EXPECT_NEAR(decay_basic(1.0, 0.0, 1.0, 3).rho_S, std::sqrt(1.0 / 3.0), kExact);
  BasicDecay b = decay_basic(2.0, 0.5, 0.25, 4);
  EXPECT_NEAR(b.C1, 2.0 * std::sqrt(4 * 0.25 * 0.5) / 2.0, kExact);
}

TEST(DecayBasic, MonotoneAndBelowOne) {
  double prevT = -1.0, prevS = -1.0;
  for (int e = -10; e <= 10; ++e) {
    double x = std::ldexp(1.0, e);
    BasicDecay b = decay_basic(1.0, x, x / 3.0, 3);
    EXPECT_GT(b.rho_T, prevT);
    EXPECT_GT(b.rho_S, prevS);
    EXPECT_LT(b.rho_T, 1.0);
    EXPECT_LT(b.rho_S, 1.0);
    prevT = b.rho_T;
    prevS = b.rho_S;
  }
}

TEST(DecayBasic, TinyRatiosKeepPrecision) {
  // 1 - 2/(sqrt(1+x)+1) ~ x/4 for small x.
  BasicDecay b = decay_basic(1.0, 1e-14, 0.0, 3);
  EXPECT_NEAR(b.rho_T * b.rho_T / (2e-14 / 4.0), 1.0, 1e-8);
}

TEST(DecayGlobal, Examples) {
  GlobalDecay g = decay_global(1.0, 0.0);
  EXPECT_EQ(g.rho_G, 0.0);
  EXPECT_EQ(g.C_G, 0.0);
  EXPECT_EQ(g.C0, 1.0);
  g = decay_global(1.0, 4.0);
  EXPECT_NEAR(g.rho_G, 0.5, kExact);
  EXPECT_NEAR(g.C_G, 8.0, kExact);
  EXPECT_NEAR(g.C0, 8.0, kExact);
}

TEST(DecayGlobal, SquareOfBasicTemporal) {
  for (int e = -10; e <= 10; ++e) {
    for (double mu : {0.3, 1.0, 7.0}) {
      double lT = mu * std::ldexp(1.0, e);
      double rT = decay_basic(mu, lT, 0.0, 3).rho_T;
      EXPECT_NEAR(decay_global(mu, lT).rho_G, rT * rT, 1e-14);
    }
  }
}

TEST(LowerBound, Examples) {
  EXPECT_NEAR(lower_bound_factors(1.0, 2.0, 0.0, 3).lambda_T, 0.25, kExact);
  LowerBoundFactors f = lower_bound_factors(1.0, 0.0, 1.0, 3);
  EXPECT_NEAR(f.lambda_S, 0.25, kExact);
  EXPECT_EQ(f.branch, LambdaBranch::First);
  EXPECT_FALSE(f.second_branch.has_value());

  f = lower_bound_factors(1.0, 0.0, 64.0, 3);
  ASSERT_TRUE(f.second_branch.has_value());
  EXPECT_NEAR(*f.second_branch, 0.25, kExact);
  EXPECT_NEAR(f.first_branch, 192.0 / 579.0, kExact);
  EXPECT_NEAR(f.lambda_S, 192.0 / 579.0, kExact);
  EXPECT_EQ(f.branch, LambdaBranch::First);
}

TEST(LowerBound, SecondBranchWinsForLargeRatio) {
  LowerBoundFactors f = lower_bound_factors(1.0, 0.0, 1e6, 3);
  EXPECT_EQ(f.branch, LambdaBranch::Second);
  EXPECT_NEAR(f.lambda_S, std::pow(1.0 - 4.0 * std::sqrt(3.0) / std::sqrt(3e6), 2), kExact);
}

TEST(LowerBound, BoundaryAtFortyEight) {
  LowerBoundFactors f = lower_bound_factors(1.0, 0.0, 16.0, 3);
  ASSERT_TRUE(f.second_branch.has_value());
  EXPECT_NEAR(*f.second_branch, 0.0, kExact);
  EXPECT_FALSE(lower_bound_factors(1.0, 0.0, 15.999, 3).second_branch.has_value());
}

TEST(LowerBound, DegreeFlag) {
  EXPECT_FALSE(lower_bound_factors(1.0, 0.1, 0.1, 2).degree_ok);
  EXPECT_TRUE(lower_bound_factors(1.0, 0.1, 0.1, 3).degree_ok);
}

TEST(BoundaryGrowthTest, Families) {
  auto e = BoundaryGrowth::exponential(3.0);
  EXPECT_DOUBLE_EQ(e(0), 1.0);
  EXPECT_DOUBLE_EQ(e(4), 81.0);
  EXPECT_DOUBLE_EQ(e.limit_ratio(), 3.0);
  auto p = BoundaryGrowth::polynomial(4.0, 1.0);
  EXPECT_DOUBLE_EQ(p(0), 1.0);
  EXPECT_DOUBLE_EQ(p(3), 12.0);
  EXPECT_DOUBLE_EQ(p.limit_ratio(), 1.0);
  auto s = BoundaryGrowth::sequence({1, 2, 4}, 0.5);
  EXPECT_DOUBLE_EQ(s(2), 4.0);
  EXPECT_DOUBLE_EQ(s(3), 2.0);
  EXPECT_DOUBLE_EQ(s(4), 1.0);
  auto m = BoundaryGrowth::measured(cycle_graph(8));
  std::vector<double> expect{1, 2, 2, 2, 1, 0, 0};
  for (int g = 0; g < 7; ++g) EXPECT_DOUBLE_EQ(m(g), expect[g]);
  EXPECT_TRUE(std::isinf(m.log_value(6)));
}

TEST(WeightedSeries, GeometricAndDivergent) {
  auto e = BoundaryGrowth::exponential(3.0);
  SeriesSum s = weighted_series(e, 0.25);
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.value, 4.0, kExact);
  EXPECT_FALSE(weighted_series(e, 0.5).converged);
  SeriesSum lin = weighted_series(BoundaryGrowth::polynomial(1.0, 1.0), 0.5);
  // 1 + sum_{g>=1} g 2^-g = 3
  EXPECT_TRUE(lin.converged);
  EXPECT_NEAR(lin.value, 3.0, 1e-12);
  EXPECT_THROW(weighted_series(e, 1.0), InvalidConfig);
}

TEST(DecayTight, PureExponentialChoice) {
  for (int D = 3; D <= 8; ++D) {
    TightDecay t = decay_tight(1.0, 0.0, 0.0, D, BoundaryGrowth::exponential(D), 2.0 * D - 1, 4.0 * D * D - 2.0 * D);
    EXPECT_NEAR(t.a, 2.0, kExact) << D;
    EXPECT_NEAR(t.a_tilde, 2.0, kExact) << D;
  }
  TightDecay t = decay_tight(100.0, 1.0, 0.0, 3, BoundaryGrowth::exponential(3.0), 5.0, 30.0);
  EXPECT_NEAR(t.rho_T, 0.08, kExact);
  EXPECT_TRUE(t.hypotheses_hold());
}

TEST(DecayTight, UnitWeights) {
  // D ell_S / mu = 5/4 on a 5-regular growth.
  TightDecay t = decay_tight(4.0, 0.0, 1.0, 5, BoundaryGrowth::polynomial(1.0, 1.0), 1.0, 1.0);
  EXPECT_NEAR(t.gamma_S, 0.2, kExact);
  EXPECT_NEAR(t.rho_S, 0.6, kExact);
}

TEST(DecayTight, ViolationsNamed) {
  TightDecay t = decay_tight(1.0, 1.0, 0.0, 3, BoundaryGrowth::exponential(3.0), 5.0, 30.0);
  EXPECT_FALSE(t.hypotheses_hold());
  EXPECT_FALSE(t.mu_condition);
  TightDecay d = decay_tight(1.0, 0.0, 0.0, 3, BoundaryGrowth::exponential(3.0), 1.0, 1.0);
  EXPECT_FALSE(d.a_finite || d.a_tilde_finite);
  EXPECT_THROW(require_decay_tight(1.0, 1.0, 0.0, 3, BoundaryGrowth::exponential(3.0), 5.0, 30.0),
               HypothesisViolated);
}

TEST(C3, Examples) {
  EXPECT_DOUBLE_EQ(c3(BoundaryGrowth::measured(cycle_graph(8)), 0.0, 3), 1.0);
  EXPECT_NEAR(c3(BoundaryGrowth::sequence({1, 2, 2, 2, 1}), 0.5, 2), 2.5, kExact);
  EXPECT_NEAR(c3(BoundaryGrowth::exponential(1.0), 0.5, 200), 2.0, 1e-12);
}

TEST(CrBoundTest, ZeroFactorsGiveOne) {
  DecayParams p = decay_params_basic(1.0, 2.0, 0.0, 0.0, 2, BoundaryGrowth::measured(cycle_graph(6)));
  for (int k = 2; k < 6; ++k) {
    CrBound b = cr_upper_bound(p, k, 1);
    EXPECT_NEAR(b.bound, 1.0, kExact);
    EXPECT_TRUE(b.condition_met);
  }
  EXPECT_THROW(cr_upper_bound(p, 1, 1), InvalidConfig);
}

TEST(CrBoundTest, MonotoneInWindows) {
  DecayParams p = decay_params_basic(1.0, 2.0, 0.1, 0.05, 2, BoundaryGrowth::exponential(2.0));
  for (int r = 1; r <= 5; ++r)
    for (int k = 2; k <= 8; ++k) {
      EXPECT_LE(cr_upper_bound(p, k + 1, r).bound, cr_upper_bound(p, k, r).bound);
    }
  for (int k = 2; k <= 5; ++k)
    for (int r = 1; r <= 8; ++r) {
      EXPECT_LE(cr_upper_bound(p, k, r + 1).bound, cr_upper_bound(p, k, r).bound * (1 + 1e-15));
    }
}

TEST(CrBoundTest, MatchesHandTranscription) {
  const double mu = 1.3, lf = 2.9, lT = 0.21, lS = 0.07;
  const int D = 4;
  std::vector<double> h{1, 4, 8, 6, 3};
  DecayParams p = decay_params_basic(mu, lf, lT, lS, D, BoundaryGrowth::sequence(h));
  double rT = std::sqrt(1 - 2 / (std::sqrt(1 + 2 * lT / mu) + 1));
  double rS = std::sqrt(1 - 2 / (std::sqrt(1 + D * lS / mu) + 1));
  double C1 = 2 * std::sqrt(D * lS * lT) / mu;
  EXPECT_NEAR(p.rho_T, rT, 1e-14);
  EXPECT_NEAR(p.rho_S, rS, 1e-14);
  for (int k : {2, 3, 7})
    for (int r : {1, 2, 4, 6}) {
      auto [bound, gate] = cr_by_hand(mu, lf, lT, lS, D, h, rT, rS, C1, k, r);
      CrBound b = cr_upper_bound(p, k, r);
      EXPECT_NEAR(b.bound, bound, 1e-12 * bound);
      EXPECT_NEAR(b.gate, gate, 1e-12 * std::max(1.0, gate));
      EXPECT_EQ(b.condition_met, gate <= 0.5);
    }
}

TEST(PerStepBound, ShapeAndLength) {
  DecayParams p = decay_params_basic(1.0, 2.0, 0.1, 0.1, 2, BoundaryGrowth::measured(cycle_graph(8)));
  EXPECT_THROW(per_step_error_bound(p, 3, 1, 0.0, {1.0, 1.0}), DimensionMismatch);
  EXPECT_EQ(per_step_error_bound(p, 3, 1, 0.0, {0.0, 0.0, 0.0}), 0.0);
  EXPECT_GT(per_step_error_bound(p, 3, 1, 1.0, {0.0, 0.0, 0.0}), 0.0);
  DecayParams z = decay_params_basic(1.0, 2.0, 0.0, 0.0, 2, BoundaryGrowth::measured(cycle_graph(8)));
  EXPECT_EQ(per_step_error_bound(z, 3, 1, 5.0, {1.0, 2.0, 3.0}), 0.0);
}

TEST(Accumulation, Factor) {
  EXPECT_DOUBLE_EQ(error_accumulation_factor(decay_global(1.0, 0.0)), 1.0);
  EXPECT_NEAR(error_accumulation_factor(decay_global(1.0, 4.0)), 64.0 / 0.25, 1e-10);
}

TEST(PureExp, HypothesesAndBound) {
  auto ok = pure_exp_decay_bound(1.0, 2.0, 1.0 / 32.0, std::pow(3.0, -7), 3, 4, 3);
  EXPECT_TRUE(ok.hypotheses_hold);
  EXPECT_GT(ok.bound, 1.0);
  EXPECT_LT(ok.rho_T, 1.0);
  EXPECT_FALSE(pure_exp_decay_bound(1.0, 2.0, 0.1, 0.0, 3, 4, 3).hypotheses_hold);
  EXPECT_FALSE(pure_exp_decay_bound(1.0, 2.0, 0.0, 1e-2, 3, 4, 3).hypotheses_hold);
}

TEST(Augmentation, Examples) {
  AugmentationVerdict v = augmentation_relations(1.0, 4.0, 1.0, 3);
  EXPECT_NEAR(v.rho_T * v.rho_T, 0.5, kExact);
  EXPECT_NEAR(v.lambda_T, std::pow(1 - 2 / (std::sqrt(17.0) + 1), 2), kExact);
  EXPECT_TRUE(v.temporal_lower && v.temporal_upper);
  AugmentationVerdict z = augmentation_relations(1.0, 0.0, 0.0, 3);
  EXPECT_TRUE(z.all());
  EXPECT_EQ(z.lambda_T, 0.0);
}

TEST(Augmentation, FullSweep) {
  for (int D = 3; D <= 10; ++D)
    for (int a = -10; a <= 10; ++a)
      for (int b = -10; b <= 10; ++b) {
        double lT = std::ldexp(1.0, a), lS = std::ldexp(1.0, b) / D;
        EXPECT_TRUE(augmentation_relations(1.0, lT, lS, D).all()) << D << " " << a << " " << b;
      }
}

TEST(LaplacianFloorTest, Examples) {
  LaplacianFloor f = laplacian_decay_floor(1, 1.0, 3);
  EXPECT_NEAR(f.first_claim, 1.0 / 27.0, kExact);
  EXPECT_EQ(laplacian_decay_floor(2, 0.0, 4).first_claim, 0.0);
  EXPECT_THROW(laplacian_decay_floor(2, 1.0, 2), DistanceTooSmall);
  EXPECT_FALSE(laplacian_decay_floor(2, 1.0, 3).second_claim.has_value());
  EXPECT_TRUE(laplacian_decay_floor(2, 9.0, 3).second_claim.has_value());
}

TEST(LaplacianFloorTest, RingOverload) {
  Network ring = ring_of_blocks(8, 2);
  for (int i = 0; i < ring.vertex_count(); ++i)
    for (int j = 0; j < ring.vertex_count(); ++j) {
      if (ring.distance(i, j) < 3) {
        EXPECT_THROW(laplacian_decay_floor(ring, 1.0, i, j), DistanceTooSmall);
      } else {
        EXPECT_DOUBLE_EQ(laplacian_decay_floor(ring, 1.0, i, j).first_claim,
                         laplacian_decay_floor(2, 1.0, ring.distance(i, j)).first_claim);
      }
    }
  EXPECT_THROW(laplacian_decay_floor(path_graph(6), 1.0, 0, 5), InvalidGraph);
}
