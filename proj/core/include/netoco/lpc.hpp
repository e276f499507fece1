#pragma once

#include <vector>

#include "netoco/instance.hpp"
#include "netoco/solver.hpp"
#include "netoco/theory.hpp"

namespace netoco {

struct LpcConfig {
  int k = 2;  // prediction horizon
  int r = 1;  // communication radius
  SolverSettings solver;
  int threads = 0;  // 0: thread_count()

  // Throws InvalidConfig for k < 2 or r < 1.
  void validate() const;
};

// Every agent solves its own pinned window and commits the entry (t, v).
// A SolverDiverged from agent v is rethrown tagged with (t, v).
GlobalAction lpc_step(const Instance& inst, int t, const GlobalAction& prev, const LpcConfig& cfg);
Trajectory lpc_run(const Instance& inst, const LpcConfig& cfg);

// Myopic baseline: each agent minimizes its window's costs at time t with
// the next step's switching costs dropped (the k = 2 window without future).
GlobalAction greedy_step(const Instance& inst, int t, const GlobalAction& prev, const LpcConfig& cfg);
Trajectory greedy_run(const Instance& inst, const LpcConfig& cfg);

// e_t = ||x_t - first action of the tail-optimal plan from x_{t-1}||,
// stacked over all agents; index t-1.
std::vector<double> per_step_errors(const Instance& inst, const Trajectory& traj,
                                    const SolverSettings& settings = {});
// Same quantity through the pinned problem with p = H - t + 2 and z = 0
// at time H + 1, where the extension makes the pin free of cost.
std::vector<double> per_step_errors_pinned(const Instance& inst, const Trajectory& traj,
                                           const SolverSettings& settings = {});

// sum_t ||x_t - y_t||^2 over t = 1..H
double squared_distance(const Trajectory& a, const Trajectory& b);

struct CrReport {
  int k = 0;
  int r = 0;
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  Trajectory alg;
  Trajectory opt;
  // Predictions from the basic constants with h measured on the network.
  DecayParams decay;
  CrBound bound;
};

// Throws DegenerateOptimum when cost(OPT) <= 1e-12.
CrReport competitive_ratio(const Instance& inst, const LpcConfig& cfg);
// Reuses a precomputed offline optimum.
CrReport competitive_ratio(const Instance& inst, const LpcConfig& cfg, const Trajectory& opt);

// Decay parameters of an instance: basic factors, D = max degree,
// h measured on its network.
DecayParams instance_decay(const Instance& inst);

}  // namespace netoco
