#include "netoco/lpc.hpp"

#include <cmath>

#include "netoco/error.hpp"
#include "netoco/parallel.hpp"

namespace netoco {

namespace {

constexpr double kDegenerateOpt = 1e-12;

GlobalAction step_with(const Instance& inst, int t, const GlobalAction& prev, const LpcConfig& cfg,
                       int k, const LocalOptions& options) {
  cfg.validate();
  if (t < 1 || t > inst.horizon()) throw InvalidConfig("step time must lie in [1, H]");
  if (static_cast<int>(prev.size()) != inst.vertex_count()) {
    throw DimensionMismatch("previous action has the wrong number of agents");
  }
  const int V = inst.vertex_count();
  GlobalAction next(V);
  parallel_for(
      static_cast<std::size_t>(V),
      [&](std::size_t i) {
        const int v = static_cast<int>(i);
        try {
          LocalWindow w = local_window(inst.network(), t, v, k, cfg.r);
          LocalSolution sol = local_psi(inst, w, lpc_boundary(inst, w, prev), cfg.solver, options);
          next[i] = sol.values[w.free_position(t, v)];
        } catch (const SolverDiverged& e) {
          throw e.tagged(t, v);
        }
      },
      cfg.threads);
  return next;
}

Trajectory run_with(const Instance& inst, const LpcConfig& cfg, bool greedy) {
  cfg.validate();
  std::vector<GlobalAction> actions;
  actions.reserve(inst.horizon() + 1);
  actions.push_back(inst.x0());
  for (int t = 1; t <= inst.horizon(); ++t) {
    actions.push_back(greedy ? greedy_step(inst, t, actions.back(), cfg)
                             : lpc_step(inst, t, actions.back(), cfg));
  }
  return make_trajectory(inst, std::move(actions));
}

double action_distance(const GlobalAction& a, const GlobalAction& b) {
  double s = 0.0;
  for (std::size_t v = 0; v < a.size(); ++v) s += (a[v] - b[v]).squaredNorm();
  return std::sqrt(s);
}

void check_trajectory(const Instance& inst, const Trajectory& traj) {
  if (traj.horizon() != inst.horizon()) throw DimensionMismatch("trajectory horizon differs from instance");
}

}  // namespace

void LpcConfig::validate() const {
  if (k < 2) throw InvalidConfig("prediction horizon k must be at least 2");
  if (r < 1) throw InvalidConfig("communication radius r must be at least 1");
}

GlobalAction lpc_step(const Instance& inst, int t, const GlobalAction& prev, const LpcConfig& cfg) {
  return step_with(inst, t, prev, cfg, cfg.k, LocalOptions{});
}

Trajectory lpc_run(const Instance& inst, const LpcConfig& cfg) { return run_with(inst, cfg, false); }

GlobalAction greedy_step(const Instance& inst, int t, const GlobalAction& prev, const LpcConfig& cfg) {
  LocalOptions options;
  options.terminal_switching = false;
  return step_with(inst, t, prev, cfg, 2, options);
}

Trajectory greedy_run(const Instance& inst, const LpcConfig& cfg) { return run_with(inst, cfg, true); }

std::vector<double> per_step_errors(const Instance& inst, const Trajectory& traj,
                                    const SolverSettings& settings) {
  check_trajectory(inst, traj);
  std::vector<double> e(inst.horizon());
  for (int t = 1; t <= inst.horizon(); ++t) {
    Segment seg = clairvoyant_tail(inst, t, traj.actions[t - 1], settings);
    e[t - 1] = action_distance(traj.actions[t], seg.actions.front());
  }
  return e;
}

std::vector<double> per_step_errors_pinned(const Instance& inst, const Trajectory& traj,
                                           const SolverSettings& settings) {
  check_trajectory(inst, traj);
  const int H = inst.horizon();
  const GlobalAction zero = zero_action(inst.vertex_count(), inst.dim());
  std::vector<double> e(H);
  for (int t = 1; t <= H; ++t) {
    Segment seg = clairvoyant_pinned(inst, t, H - t + 2, traj.actions[t - 1], zero, settings);
    e[t - 1] = action_distance(traj.actions[t], seg.actions.front());
  }
  return e;
}

double squared_distance(const Trajectory& a, const Trajectory& b) {
  if (a.horizon() != b.horizon()) throw DimensionMismatch("trajectories have different horizons");
  double s = 0.0;
  for (int t = 1; t <= a.horizon(); ++t) {
    double d = action_distance(a.actions[t], b.actions[t]);
    s += d * d;
  }
  return s;
}

DecayParams instance_decay(const Instance& inst) {
  const Constants& c = inst.constants();
  return decay_params_basic(c.mu, c.ell_f, c.ell_T, c.ell_S, inst.network().max_degree(),
                            BoundaryGrowth::measured(inst.network()));
}

CrReport competitive_ratio(const Instance& inst, const LpcConfig& cfg) {
  return competitive_ratio(inst, cfg, offline_opt(inst, cfg.solver).trajectory);
}

CrReport competitive_ratio(const Instance& inst, const LpcConfig& cfg, const Trajectory& opt) {
  cfg.validate();
  check_trajectory(inst, opt);
  CrReport rep;
  rep.k = cfg.k;
  rep.r = cfg.r;
  rep.opt = opt;
  rep.opt_cost = opt.total_cost();
  if (!(rep.opt_cost > kDegenerateOpt)) {
    throw DegenerateOptimum("cost(OPT) = " + std::to_string(rep.opt_cost) + " is too small for a ratio");
  }
  rep.alg = lpc_run(inst, cfg);
  rep.alg_cost = rep.alg.total_cost();
  rep.ratio = rep.alg_cost / rep.opt_cost;
  rep.decay = instance_decay(inst);
  rep.bound = cr_upper_bound(rep.decay, cfg.k, cfg.r);
  return rep;
}

}  // namespace netoco
