#include <gtest/gtest.h>

#include <netoco/error.hpp>
#include <netoco/generators.hpp>
#include <netoco/lpc.hpp>

#include "oracles.hpp"

using namespace netoco;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

Instance inst_of(const Network& net, int H, std::uint64_t seed, double ell_T = 0.25, double ell_S = 0.25) {
  return random_instance(net, H, 1, {1.0, 2.0, ell_T, ell_S / std::max(1, net.max_degree())}, seed,
                         {.center_spread = 1.5});
}

}  // namespace

TEST(LpcConfig, RejectsDegenerateWindows) {
  EXPECT_THROW((LpcConfig{1, 1}.validate()), InvalidConfig);
  EXPECT_THROW((LpcConfig{2, 0}.validate()), InvalidConfig);
  EXPECT_NO_THROW((LpcConfig{2, 1}.validate()));
}

TEST(LpcStep, DecoupledPicksTheta) {
  Instance inst = random_instance(cycle_graph(5), 4, 2, {1.0, 2.0, 0.0, 0.0}, 3);
  Trajectory tr = lpc_run(inst, {3, 1});
  for (int t = 1; t <= 4; ++t)
    for (int v = 0; v < 5; ++v) EXPECT_LT((tr.actions[t][v] - inst.theta(t, v)).norm(), 1e-12);
  auto opt = offline_opt(inst).trajectory;
  EXPECT_NEAR(tr.total_cost(), opt.total_cost(), 1e-12);
  for (double e : per_step_errors(inst, tr)) EXPECT_LE(e, 1e-9);
}

TEST(LpcStep, SingleAgentLongHorizonIsTailOptimal) {
  Instance inst = temporal_adversary_instance(1.0, 1.5, 6, 0);
  GlobalAction prev = {VectorXd::Constant(1, 0.3)};
  for (int t = 1; t <= 6; ++t) {
    LpcConfig cfg{inst.horizon() - t + 2, 1};
    GlobalAction x = lpc_step(inst, t, prev, cfg);
    Segment tail = clairvoyant_tail(inst, t, prev);
    EXPECT_NEAR(x[0][0], tail.actions[0][0][0], 1e-6);
    prev = x;
  }
}

TEST(LpcStep, TriangleMatchesDenseLocalSolve) {
  Instance inst = inst_of(cycle_graph(3), 4, 12);
  GlobalAction prev = inst.x0();
  for (int t = 1; t <= 4; ++t) {
    GlobalAction x = lpc_step(inst, t, prev, {2, 1});
    for (int v = 0; v < 3; ++v) {
      auto lp = oracle::local_problem(inst, t, v, 2, 1, prev);
      ASSERT_EQ(lp.free.size(), 1u);
      VectorXd ref = oracle::projected_gradient(lp.qp, 1e-13);
      EXPECT_NEAR(x[v][0], ref[0], 1e-8);
    }
    prev = x;
  }
}

TEST(LpcRun, ExactInformationCorner) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Instance inst = inst_of(cycle_graph(6), 5, seed);
    const int diam = inst.network().diameter();
    CrReport rep = competitive_ratio(inst, {inst.horizon() + 1, diam + 1});
    EXPECT_NEAR(rep.ratio, 1.0, 1e-5);
  }
}

TEST(LpcRun, AlgNeverBeatsOpt) {
  Instance inst = inst_of(cycle_graph(8), 10, 3);
  CrReport rep = competitive_ratio(inst, {3, 2});
  EXPECT_GE(rep.alg_cost, rep.opt_cost * (1.0 - 1e-9));
  EXPECT_GE(rep.ratio, 1.0 - 1e-6);
  EXPECT_EQ(rep.k, 3);
  EXPECT_GT(rep.decay.rho_T, 0.0);
}

TEST(LpcRun, FeasibleAndConsistentCosts) {
  Instance inst = inst_of(grid_graph(3, 3), 6, 4);
  Trajectory tr = lpc_run(inst, {3, 1});
  for (int t = 1; t <= 6; ++t)
    for (int v = 0; v < 9; ++v) EXPECT_TRUE(inst.box(t, v).contains(tr.actions[t][v], 1e-12));
  EXPECT_NEAR(tr.total_cost(), oracle::trajectory_cost(inst, tr.actions), 1e-10);
}

TEST(LpcRun, DeterministicAcrossThreadCounts) {
  Instance inst = inst_of(cycle_graph(8), 6, 9);
  Trajectory a = lpc_run(inst, {3, 2, {}, 1});
  Trajectory b = lpc_run(inst, {3, 2, {}, 4});
  for (int t = 0; t <= 6; ++t)
    for (int v = 0; v < 8; ++v) EXPECT_EQ(a.actions[t][v], b.actions[t][v]);
}

TEST(LpcRun, InformationLocality) {
  Instance base = inst_of(path_graph(9), 8, 5);
  const int t = 2, v = 4, k = 3, r = 2;
  GlobalAction prev = base.x0();
  GlobalAction x = lpc_step(base, t, prev, {k, r});
  // Change costs outside the window [t, t+k-1] x N_v^r: far agents and late times.
  InstanceData d = base.data();
  for (int tau = 1; tau <= 8; ++tau) {
    for (int u = 0; u < 9; ++u) {
      bool inside = tau >= t && tau <= t + k - 1 && std::abs(u - v) <= r;
      if (!inside) d.node[tau - 1][u] = NodeCost::centered(MatrixXd::Constant(1, 1, 1.7), VectorXd::Constant(1, 0.9));
    }
  }
  Instance changed(std::move(d));
  GlobalAction y = lpc_step(changed, t, prev, {k, r});
  EXPECT_NEAR(x[v][0], y[v][0], 1e-12);
}

TEST(LpcRun, MonotoneInKOnAFixedInstance) {
  Instance inst = inst_of(cycle_graph(8), 8, 3);
  auto opt = offline_opt(inst).trajectory;
  double prev = 1e300;
  for (int k = 2; k <= 6; ++k) {
    double cr = competitive_ratio(inst, {k, 2}, opt).ratio;
    EXPECT_LE(cr, prev + 1e-5) << "k=" << k;
    prev = cr;
  }
}

TEST(PerStepErrors, OptimumHasNoError) {
  Instance inst = inst_of(cycle_graph(6), 6, 2);
  auto opt = offline_opt(inst).trajectory;
  for (double e : per_step_errors(inst, opt)) EXPECT_LE(e, 1e-6);
}

TEST(PerStepErrors, PinnedPathAgrees) {
  Instance inst = inst_of(cycle_graph(6), 6, 14);
  Trajectory tr = lpc_run(inst, {2, 1});
  auto a = per_step_errors(inst, tr);
  auto b = per_step_errors_pinned(inst, tr);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GE(a[i], 0.0);
    EXPECT_NEAR(a[i], b[i], 1e-7);
  }
}

TEST(CompetitiveRatio, DegenerateOptimumRejected) {
  InstanceData d;
  d.net = Network(1, {});
  d.horizon = 2;
  d.dim = 1;
  d.constants = {1.0, 1.0, 0.0, 0.0};
  d.x0 = {VectorXd::Zero(1)};
  for (int t = 0; t < 2; ++t) {
    d.node.push_back({NodeCost::isotropic(1, 1.0)});
    d.temporal.push_back({PairCost::zero(1)});
    d.spatial.push_back({});
    d.boxes.push_back({Box::unbounded(1)});
  }
  EXPECT_THROW(competitive_ratio(Instance(std::move(d)), {2, 1}), DegenerateOptimum);
}

TEST(Greedy, NoBetterThanOptimum) {
  Instance inst = inst_of(cycle_graph(6), 6, 7);
  Trajectory g = greedy_run(inst, {2, 1});
  EXPECT_EQ(g.horizon(), 6);
  EXPECT_GE(g.total_cost(), offline_opt(inst).trajectory.total_cost() - 1e-9);
}
