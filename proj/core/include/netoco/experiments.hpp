#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netoco/generators.hpp"
#include "netoco/lpc.hpp"
#include "netoco/theory.hpp"

namespace netoco {

// Outcome of one checked inequality. A failure names the witness.
struct Check {
  std::string inequality;
  bool passed = true;
  double worst_margin = 0.0;  // min over instances of (right side - left side)
  std::string witness;
};

// ---- perturbation decay ----

struct PerturbationOptions {
  double delta = 1e-3;  // relative to the largest boundary entry (at least 1)
  std::uint64_t seed = 0;
  SolverSettings solver{Backend::ActiveSet, 1e-11, 200000};
  double slack = 1e-8;
  // Tight constants are evaluated with these, h measured on the network.
  // Defaults are the pure exponential choice 2D - 1, 4D^2 - 2D.
  std::optional<double> b1;
  std::optional<double> b2;
};

struct PerturbationRecord {
  SpaceTimeIndex source;  // perturbed boundary entry; time t - 1 for the initial state
  bool initial = false;
  SpaceTimeIndex probe;
  int temporal_distance = 0;
  int spatial_distance = 0;
  double magnitude = 0.0;
  double response = 0.0;
  double ceiling = 0.0;                // basic constants
  std::optional<double> tight_ceiling;  // when the tight hypotheses hold
  bool within() const;
  bool within_tight() const;
  double slack = 0.0;
};

struct PerturbationSweep {
  int t = 1, v = 0, k = 2, r = 1;
  BasicDecay basic;
  TightDecay tight;
  std::vector<PerturbationRecord> records;
  Check basic_check;
  Check tight_check;  // passes vacuously when the tight hypotheses fail
};

PerturbationSweep perturbation_sweep(const Instance& inst, int t, int v, int k, int r,
                                     const PerturbationOptions& options = {});

// ---- competitive ratio sweeps ----

struct CrCell {
  int k = 0;
  int r = 0;
  double alg_cost = 0.0;
  double ratio = 0.0;
  CrBound bound;
};

struct CrSweep {
  std::vector<int> k_list;
  std::vector<int> r_list;
  double opt_cost = 0.0;
  std::vector<CrCell> cells;  // k-major: cells[i * r_list.size() + j]
  Check ceiling;              // measured <= bound wherever the gate holds
  Check monotone_k;           // CR weakly decreasing in k for each r
  Check monotone_r;           // CR weakly decreasing in r for each k
  const CrCell& at(std::size_t ki, std::size_t ri) const { return cells[ki * r_list.size() + ri]; }
};

// Throws DegenerateOptimum.
CrSweep cr_sweep(const Instance& inst, const std::vector<int>& k_list, const std::vector<int>& r_list,
                 const SolverSettings& settings = {}, int threads = 0,
                 double monotone_tolerance = 1e-5);

// ---- error inequalities ----

struct AccumulationVerdict {
  double lhs = 0.0;  // sum ||x_t - x_t*||^2
  double rhs = 0.0;  // C0^2 / (1 - rho_G)^2 sum e_t^2
  double factor = 0.0;
  std::vector<double> errors;
  Check check;
};

AccumulationVerdict error_accumulation_check(const Instance& inst, const LpcConfig& cfg);
AccumulationVerdict error_accumulation_check(const Instance& inst, const Trajectory& alg,
                                             const Trajectory& opt, const SolverSettings& settings = {});

struct PerStepRow {
  int t = 0;
  double error_sq = 0.0;
  double prev_gap_sq = 0.0;
  double rhs = 0.0;
};

struct PerStepVerdict {
  std::vector<PerStepRow> rows;
  DecayParams decay;
  Check check;
};

PerStepVerdict per_step_bound_check(const Instance& inst, const LpcConfig& cfg);
PerStepVerdict per_step_bound_check(const Instance& inst, const LpcConfig& cfg, const Trajectory& alg,
                                    const Trajectory& opt);

// ---- spatial lower bound ----

struct FloorRecord {
  int i = 0;
  int j = 0;
  int kappa = 0;
  double value = 0.0;  // ((I + ell L)^{-1})_{ij}
  double floor = 0.0;
  std::optional<double> second_floor;
};

struct FloorCheck {
  int blocks = 0;
  int block_size = 0;
  double ell = 0.0;
  std::vector<FloorRecord> records;
  Check check;  // first claim, slack 1e-12
};

FloorCheck laplacian_floor_check(int blocks, int block_size, double ell, double slack = 1e-12);

struct EstimatorRow {
  int r = 0;
  double mean_excess = 0.0;      // Monte Carlo over seeds
  double expected_excess = 0.0;  // exact under standard normal w
  double lambda_S_pow_r = 0.0;
};

struct SpatialLowerReport {
  int blocks = 0;
  int block_size = 0;
  double ell = 0.0;
  std::vector<std::uint64_t> seeds;
  LowerBoundFactors factors;
  FloorCheck floor;
  std::vector<EstimatorRow> rows;
  Check decreasing;  // mean excess strictly decreasing over the given r order
};

// Excess cost over OPT of the r-local estimator
//   x_i = -sum_{j in N_i^r} ((I + ell L)^{-1})_{ij} w_j
// which is the conditional mean of x_i* given the local w.
double local_estimator_excess(const SpatialOneStep& inst, const Network& net, int r);
double local_estimator_expected_excess(const SpatialOneStep& inst, const Network& net, int r);

SpatialLowerReport spatial_lower_demo(int blocks, int block_size, double ell, const std::vector<int>& r_list,
                                      const std::vector<std::uint64_t>& seeds);

// ---- pricing ----

struct PricingReport {
  double cost_ratio = 0.0;
  double revenue_alg = 0.0;
  double revenue_opt = 0.0;
  double revenue_ratio = 0.0;
  double eta = 0.0;
  double lemma_floor = 0.0;  // 1 - (eta/2)(CR - 1)
  double identity_error = 0.0;  // max |revenue + cost - constant| over ALG and OPT
  Check lemma;
};

PricingReport pricing_demo(const PricingParams& params, const Network& net, const LpcConfig& cfg);

// revenue(x) + cost(x) - (C + initial constant); zero up to rounding.
double pricing_identity_residual(const PricingInstance& pi, const std::vector<GlobalAction>& trajectory);

}  // namespace netoco
