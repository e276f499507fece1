#pragma once

#include <vector>

#include <Eigen/Dense>

#include "netoco/instance.hpp"
#include "netoco/qp.hpp"

namespace netoco {

struct SolveReport {
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  QpMethod method = QpMethod::Direct;
  int variables = 0;
};

// Geometry of the local problem of agent v at time t.
struct LocalWindow {
  int t = 1;
  int v = 0;
  int k = 2;
  int r = 1;
  std::vector<int> outer;     // N_v^r
  std::vector<int> interior;  // N_v^{r-1}
  std::vector<int> edges;     // E(N_v^r)
  // [t, t+k-2] x interior, time-major then vertex-major.
  std::vector<SpaceTimeIndex> free_slots;
  // ({t+k-1} x N_v^r) u ([t, t+k-2] x boundary(v, r)), same ordering.
  std::vector<SpaceTimeIndex> boundary_slots;

  int free_position(int tau, int u) const;
  int boundary_position(int tau, int u) const;
  int outer_position(int u) const;
};

LocalWindow local_window(const Network& net, int t, int v, int k, int r);

// Pinned values: `initial` is x_{t-1} on window.outer (same order),
// `terminal` is aligned with window.boundary_slots.
struct LocalBoundary {
  std::vector<Eigen::VectorXd> initial;
  std::vector<Eigen::VectorXd> terminal;
};

// The LPC choice: y from the previous global action, z from node minimizers.
LocalBoundary lpc_boundary(const Instance& inst, const LocalWindow& w, const GlobalAction& prev);

struct LocalSolution {
  std::vector<Eigen::VectorXd> values;  // aligned with window.free_slots
  SolveReport report;
};

struct LocalOptions {
  // Keep the switching costs between the last free step and the pinned
  // terminal step. Dropping them gives the greedy baseline.
  bool terminal_switching = true;
};

LocalSolution local_psi(const Instance& inst, const LocalWindow& w, const LocalBoundary& boundary,
                        const SolverSettings& settings = {}, const LocalOptions& options = {});

struct Segment {
  int first_time = 1;
  std::vector<GlobalAction> actions;
  SolveReport report;
};

// Minimizes sum_{tau=t}^{t+p-1} f_tau + c_tau with x_{t-1} = y, x_{t+p-1} = z.
// Returns x_t..x_{t+p-2}, which is empty for p = 1.
Segment clairvoyant_pinned(const Instance& inst, int t, int p, const GlobalAction& y,
                           const GlobalAction& z, const SolverSettings& settings = {});
// Minimizes sum_{tau=t}^{H} f_tau + c_tau with x_{t-1} = y. Returns x_t..x_H.
Segment clairvoyant_tail(const Instance& inst, int t, const GlobalAction& y,
                         const SolverSettings& settings = {});

struct CostBreakdown {
  std::vector<double> hitting;    // [t-1]
  std::vector<double> switching;  // [t-1]
  double total() const;
  double total_hitting() const;
  double total_switching() const;
};

struct Trajectory {
  std::vector<GlobalAction> actions;  // t = 0..H
  CostBreakdown costs;
  double total_cost() const { return costs.total(); }
  int horizon() const { return static_cast<int>(actions.size()) - 1; }
};

CostBreakdown evaluate_costs(const Instance& inst, const std::vector<GlobalAction>& actions);
Trajectory make_trajectory(const Instance& inst, std::vector<GlobalAction> actions);

struct OfflineResult {
  Trajectory trajectory;
  SolveReport report;
};

OfflineResult offline_opt(const Instance& inst, const SolverSettings& settings = {});

}  // namespace netoco
