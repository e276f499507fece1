#include "netoco/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "netoco/error.hpp"
#include "netoco/parallel.hpp"

namespace netoco {

namespace {

// Absolute floor for the error inequalities: both sides are sums of
// squared solver outputs, so anything below this is rounding.
constexpr double kSquaredNoise = 1e-10;

double ipow(double base, int e) { return e == 0 ? 1.0 : std::pow(base, e); }

void note_margin(Check& c, double margin, const std::string& witness) {
  if (c.witness.empty() || margin < c.worst_margin) {
    c.worst_margin = margin;
    if (margin < 0.0 || c.witness.empty()) c.witness = witness;
  }
  if (margin < 0.0) c.passed = false;
}

std::string at_string(const char* label, int a, int b) {
  std::ostringstream os;
  os << label << "(" << a << ", " << b << ")";
  return os.str();
}

Eigen::VectorXd push_into(const Box& box, const Eigen::VectorXd& base, const Eigen::VectorXd& step) {
  Eigen::VectorXd up = base + step;
  if (box.contains(up, 0.0)) return up;
  Eigen::VectorXd down = base - step;
  if (box.contains(down, 0.0)) return down;
  return box.clamp(up);
}

}  // namespace

bool PerturbationRecord::within() const { return response <= ceiling + slack; }

bool PerturbationRecord::within_tight() const {
  return !tight_ceiling || response <= *tight_ceiling + slack;
}

PerturbationSweep perturbation_sweep(const Instance& inst, int t, int v, int k, int r,
                                     const PerturbationOptions& options) {
  if (!(options.delta >= 0.0)) throw InvalidConfig("perturbation size must be nonnegative");
  const Network& net = inst.network();
  const Constants& c = inst.constants();
  const int D = net.max_degree();
  LocalWindow w = local_window(net, t, v, k, r);

  PerturbationSweep out;
  out.t = t;
  out.v = v;
  out.k = k;
  out.r = r;
  out.basic = decay_basic(c.mu, c.ell_T, c.ell_S, D);
  out.tight = decay_tight(c.mu, c.ell_T, c.ell_S, D, BoundaryGrowth::measured(net),
                          options.b1.value_or(2.0 * D - 1.0),
                          options.b2.value_or(4.0 * D * D - 2.0 * D));
  const bool tight_ok = out.tight.hypotheses_hold() && std::isfinite(out.tight.C1) &&
                        out.tight.rho_T < 1.0 && out.tight.rho_S < 1.0;
  out.basic_check.inequality = "response <= C1 rho_T^dt rho_S^ds |delta| (basic constants)";
  out.tight_check.inequality = "response <= C1 rho_T^dt rho_S^ds |delta| (tight constants)";

  LocalBoundary base = lpc_boundary(inst, w, inst.x0());
  if (t > 1) {
    // Any state works as y; use the node minimizers of the previous step.
    for (std::size_t i = 0; i < w.outer.size(); ++i) base.initial[i] = inst.theta(t - 1, w.outer[i]);
  }
  double scale = 1.0;
  for (const auto& x : base.initial) scale = std::max(scale, x.lpNorm<Eigen::Infinity>());
  for (const auto& x : base.terminal) scale = std::max(scale, x.lpNorm<Eigen::Infinity>());
  const double step = options.delta * scale;

  LocalSolution ref = local_psi(inst, w, base, options.solver);

  struct Source {
    SpaceTimeIndex at;
    bool initial;
    std::size_t index;
  };
  std::vector<Source> sources;
  for (std::size_t i = 0; i < w.outer.size(); ++i) sources.push_back({{t - 1, w.outer[i]}, true, i});
  for (std::size_t i = 0; i < w.boundary_slots.size(); ++i) sources.push_back({w.boundary_slots[i], false, i});

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::vector<LocalBoundary> perturbed(sources.size(), base);
  std::vector<double> magnitude(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    Eigen::VectorXd dir(inst.dim());
    for (int i = 0; i < inst.dim(); ++i) dir[i] = normal(rng);
    dir /= dir.norm();
    const Source& src = sources[s];
    Eigen::VectorXd& slot = src.initial ? perturbed[s].initial[src.index] : perturbed[s].terminal[src.index];
    const Eigen::VectorXd before = slot;
    slot = push_into(inst.action_box(src.at.t, src.at.v), before, step * dir);
    magnitude[s] = (slot - before).norm();
  }

  std::vector<std::vector<PerturbationRecord>> per_source(sources.size());
  parallel_for(sources.size(), [&](std::size_t s) {
    LocalSolution sol = local_psi(inst, w, perturbed[s], options.solver);
    const Source& src = sources[s];
    for (std::size_t f = 0; f < w.free_slots.size(); ++f) {
      PerturbationRecord rec;
      rec.source = src.at;
      rec.initial = src.initial;
      rec.probe = w.free_slots[f];
      rec.temporal_distance = std::abs(rec.probe.t - src.at.t);
      rec.spatial_distance = net.distance(rec.probe.v, src.at.v);
      rec.magnitude = magnitude[s];
      rec.response = (sol.values[f] - ref.values[f]).norm();
      rec.slack = options.slack;
      rec.ceiling = out.basic.C1 * ipow(out.basic.rho_T, rec.temporal_distance) *
                    ipow(out.basic.rho_S, rec.spatial_distance) * rec.magnitude;
      if (tight_ok) {
        rec.tight_ceiling = out.tight.C1 * ipow(out.tight.rho_T, rec.temporal_distance) *
                            ipow(out.tight.rho_S, rec.spatial_distance) * rec.magnitude;
      }
      per_source[s].push_back(rec);
    }
  });

  for (auto& group : per_source) {
    for (auto& rec : group) {
      std::ostringstream wit;
      wit << "source (t=" << rec.source.t << ", v=" << rec.source.v << ") probe (t=" << rec.probe.t
          << ", v=" << rec.probe.v << ") response " << rec.response << " ceiling " << rec.ceiling;
      note_margin(out.basic_check, rec.ceiling + rec.slack - rec.response, wit.str());
      if (rec.tight_ceiling) note_margin(out.tight_check, *rec.tight_ceiling + rec.slack - rec.response, wit.str());
      out.records.push_back(rec);
    }
  }
  return out;
}

CrSweep cr_sweep(const Instance& inst, const std::vector<int>& k_list, const std::vector<int>& r_list,
                 const SolverSettings& settings, int threads, double monotone_tolerance) {
  if (k_list.empty() || r_list.empty()) throw InvalidConfig("cr sweep needs nonempty k and r lists");
  for (int k : k_list) LpcConfig{k, 1, settings, 1}.validate();
  for (int r : r_list) LpcConfig{2, r, settings, 1}.validate();

  CrSweep out;
  out.k_list = k_list;
  out.r_list = r_list;
  Trajectory opt = offline_opt(inst, settings).trajectory;
  out.opt_cost = opt.total_cost();
  if (!(out.opt_cost > 1e-12)) throw DegenerateOptimum("cost(OPT) is zero; the ratio is undefined");

  const std::size_t nk = k_list.size(), nr = r_list.size();
  out.cells.resize(nk * nr);
  parallel_for(
      out.cells.size(),
      [&](std::size_t i) {
        LpcConfig cfg{k_list[i / nr], r_list[i % nr], settings, 1};
        CrReport rep = competitive_ratio(inst, cfg, opt);
        out.cells[i] = {cfg.k, cfg.r, rep.alg_cost, rep.ratio, rep.bound};
      },
      threads);

  out.ceiling.inequality = "CR <= explicit bound where the gate holds";
  out.monotone_k.inequality = "CR weakly decreasing in k";
  out.monotone_r.inequality = "CR weakly decreasing in r";
  for (const CrCell& cell : out.cells) {
    if (cell.bound.condition_met) {
      note_margin(out.ceiling, cell.bound.bound - cell.ratio, at_string("(k, r) = ", cell.k, cell.r));
    }
  }
  for (std::size_t j = 0; j < nr; ++j) {
    for (std::size_t i = 1; i < nk; ++i) {
      const CrCell& a = out.at(i - 1, j);
      const CrCell& b = out.at(i, j);
      note_margin(out.monotone_k, a.ratio + monotone_tolerance - b.ratio, at_string("(k, r) = ", b.k, b.r));
    }
  }
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 1; j < nr; ++j) {
      const CrCell& a = out.at(i, j - 1);
      const CrCell& b = out.at(i, j);
      note_margin(out.monotone_r, a.ratio + monotone_tolerance - b.ratio, at_string("(k, r) = ", b.k, b.r));
    }
  }
  return out;
}

AccumulationVerdict error_accumulation_check(const Instance& inst, const LpcConfig& cfg) {
  Trajectory opt = offline_opt(inst, cfg.solver).trajectory;
  return error_accumulation_check(inst, lpc_run(inst, cfg), opt, cfg.solver);
}

AccumulationVerdict error_accumulation_check(const Instance& inst, const Trajectory& alg,
                                             const Trajectory& opt, const SolverSettings& settings) {
  AccumulationVerdict out;
  out.errors = per_step_errors(inst, alg, settings);
  out.lhs = squared_distance(alg, opt);
  out.factor = error_accumulation_factor(decay_global(inst.constants().mu, inst.constants().ell_T));
  double sum = 0.0;
  for (double e : out.errors) sum += e * e;
  out.rhs = out.factor * sum;
  out.check.inequality = "sum ||x_t - x_t*||^2 <= C0^2/(1 - rho_G)^2 sum e_t^2";
  std::ostringstream wit;
  wit << "lhs " << out.lhs << " rhs " << out.rhs;
  note_margin(out.check, out.rhs + kSquaredNoise - out.lhs, wit.str());
  return out;
}

PerStepVerdict per_step_bound_check(const Instance& inst, const LpcConfig& cfg) {
  Trajectory opt = offline_opt(inst, cfg.solver).trajectory;
  return per_step_bound_check(inst, cfg, lpc_run(inst, cfg), opt);
}

PerStepVerdict per_step_bound_check(const Instance& inst, const LpcConfig& cfg, const Trajectory& alg,
                                    const Trajectory& opt) {
  cfg.validate();
  const int H = inst.horizon();
  PerStepVerdict out;
  out.decay = instance_decay(inst);
  out.check.inequality = "e_t^2 <= per-step bound with basic constants";
  std::vector<double> e = per_step_errors(inst, alg, cfg.solver);
  std::vector<double> f_opt(H);
  for (int t = 1; t <= H; ++t) f_opt[t - 1] = inst.hitting_cost(t, opt.actions[t]);
  for (int t = 1; t <= H; ++t) {
    PerStepRow row;
    row.t = t;
    row.error_sq = e[t - 1] * e[t - 1];
    double gap = 0.0;
    for (int v = 0; v < inst.vertex_count(); ++v) {
      gap += (alg.actions[t - 1][v] - opt.actions[t - 1][v]).squaredNorm();
    }
    row.prev_gap_sq = gap;
    std::vector<double> f_star(cfg.k, 0.0);
    for (int i = 0; i < cfg.k && t + i <= H; ++i) f_star[i] = f_opt[t + i - 1];
    row.rhs = per_step_error_bound(out.decay, cfg.k, cfg.r, gap, f_star);
    std::ostringstream wit;
    wit << "t=" << t << " e^2 " << row.error_sq << " rhs " << row.rhs;
    note_margin(out.check, row.rhs + kSquaredNoise - row.error_sq, wit.str());
    out.rows.push_back(row);
  }
  return out;
}

FloorCheck laplacian_floor_check(int blocks, int block_size, double ell, double slack) {
  Network ring = ring_of_blocks(blocks, block_size);
  const int V = ring.vertex_count();
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(V, V) + ell * laplacian(ring);
  Eigen::MatrixXd Kinv = K.ldlt().solve(Eigen::MatrixXd::Identity(V, V));
  FloorCheck out;
  out.blocks = blocks;
  out.block_size = block_size;
  out.ell = ell;
  out.check.inequality = "((I + ell L)^{-1})_ij >= first-claim floor";
  for (int i = 0; i < V; ++i) {
    for (int j = i + 1; j < V; ++j) {
      int kappa = ring.distance(i, j);
      if (kappa < 3) continue;
      LaplacianFloor fl = laplacian_decay_floor(ring, ell, i, j);
      FloorRecord rec{i, j, kappa, Kinv(i, j), fl.first_claim, fl.second_claim};
      std::ostringstream wit;
      wit << "N=" << blocks << " d=" << block_size << " ell=" << ell << " (i, j) = (" << i << ", " << j
          << ") kappa=" << kappa << " value " << rec.value << " floor " << rec.floor;
      note_margin(out.check, rec.value - rec.floor + slack, wit.str());
      out.records.push_back(rec);
    }
  }
  return out;
}

namespace {

Eigen::MatrixXd local_mask(const Network& net, int r) {
  const int V = net.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(V, V);
  for (int i = 0; i < V; ++i) {
    for (int j : net.neighborhood(i, r)) m(i, j) = 1.0;
  }
  return m;
}

Eigen::MatrixXd inverse_of(const SpatialOneStep& s) {
  const int V = static_cast<int>(s.w.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(V, V) + s.ell * s.L;
  return K.ldlt().solve(Eigen::MatrixXd::Identity(V, V));
}

GlobalAction as_action(const Eigen::VectorXd& x) {
  GlobalAction a(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) a[i] = Eigen::VectorXd::Constant(1, x[i]);
  return a;
}

}  // namespace

double local_estimator_excess(const SpatialOneStep& s, const Network& net, int r) {
  Eigen::MatrixXd P = local_mask(net, r).cwiseProduct(inverse_of(s));
  Eigen::VectorXd est = -P * s.w;
  return s.instance.hitting_cost(1, as_action(est)) - s.instance.hitting_cost(1, as_action(s.optimum()));
}

double local_estimator_expected_excess(const SpatialOneStep& s, const Network& net, int r) {
  Eigen::MatrixXd Kinv = inverse_of(s);
  Eigen::MatrixXd P = Kinv - local_mask(net, r).cwiseProduct(Kinv);
  const int V = static_cast<int>(s.w.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(V, V) + s.ell * s.L;
  return (P.transpose() * K * P).trace();
}

SpatialLowerReport spatial_lower_demo(int blocks, int block_size, double ell, const std::vector<int>& r_list,
                                      const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw InvalidConfig("spatial lower demo needs at least one seed");
  SpatialLowerReport out;
  out.blocks = blocks;
  out.block_size = block_size;
  out.ell = ell;
  out.seeds = seeds;
  out.floor = laplacian_floor_check(blocks, block_size, ell);
  std::vector<SpatialOneStep> samples;
  for (auto seed : seeds) samples.push_back(spatial_onestep_instance(blocks, block_size, ell, seed));
  const Constants& c = samples.front().instance.constants();
  const Network& net = samples.front().instance.network();
  out.factors = lower_bound_factors(c.mu, c.ell_T, c.ell_S, net.max_degree());
  out.decreasing.inequality = "mean excess strictly decreasing in r";
  for (int r : r_list) {
    if (r < 0) throw InvalidConfig("radius must be nonnegative");
    EstimatorRow row;
    row.r = r;
    for (const auto& s : samples) row.mean_excess += local_estimator_excess(s, net, r);
    row.mean_excess /= static_cast<double>(samples.size());
    row.expected_excess = local_estimator_expected_excess(samples.front(), net, r);
    row.lambda_S_pow_r = ipow(out.factors.lambda_S, r);
    if (!out.rows.empty()) {
      const EstimatorRow& prev = out.rows.back();
      std::ostringstream wit;
      wit << "r=" << prev.r << " -> " << r << ": " << prev.mean_excess << " -> " << row.mean_excess;
      double margin = prev.mean_excess - row.mean_excess;
      note_margin(out.decreasing, margin, wit.str());
      if (margin == 0.0) out.decreasing.passed = false;
    }
    out.rows.push_back(row);
  }
  return out;
}

double pricing_identity_residual(const PricingInstance& pi, const std::vector<GlobalAction>& trajectory) {
  const Network& net = pi.instance.network();
  double revenue = pricing_revenue(pi.params, net, trajectory);
  double cost = evaluate_costs(pi.instance, trajectory).total();
  return revenue + cost - (pi.derived.C + pi.derived.initial_constant);
}

PricingReport pricing_demo(const PricingParams& params, const Network& net, const LpcConfig& cfg) {
  PricingInstance pi = pricing_instance(params, net);
  CrReport cr = competitive_ratio(pi.instance, cfg);
  PricingReport out;
  out.cost_ratio = cr.ratio;
  out.revenue_alg = pricing_revenue(params, net, cr.alg.actions);
  out.revenue_opt = pricing_revenue(params, net, cr.opt.actions);
  out.eta = pi.derived.eta;
  out.lemma_floor = 1.0 - 0.5 * out.eta * (cr.ratio - 1.0);
  out.identity_error = std::max(std::abs(pricing_identity_residual(pi, cr.alg.actions)),
                                std::abs(pricing_identity_residual(pi, cr.opt.actions)));
  out.lemma.inequality = "revenue(ALG)/revenue(OPT) >= 1 - (eta/2)(CR - 1)";
  if (out.revenue_opt > 0.0) {
    out.revenue_ratio = out.revenue_alg / out.revenue_opt;
    std::ostringstream wit;
    wit << "revenue ratio " << out.revenue_ratio << " floor " << out.lemma_floor << " CR " << cr.ratio;
    note_margin(out.lemma, out.revenue_ratio - out.lemma_floor + 1e-6, wit.str());
  } else {
    out.revenue_ratio = std::nan("");
    out.lemma.witness = "revenue(OPT) <= 0, lemma not applicable";
  }
  return out;
}

}  // namespace netoco
