#include "netoco/solver.hpp"

#include <algorithm>
#include <numeric>

#include "netoco/error.hpp"

namespace netoco {

namespace {

// A pinned slot carries a value; a free slot an index into the QP blocks.
struct Slot {
  int block = -1;
  const Eigen::VectorXd* value = nullptr;
};

class Assembler {
 public:
  explicit Assembler(int n) : n_(n) {}

  int add_block(const Box& box) {
    lower_.push_back(box.lower());
    upper_.push_back(box.upper());
    linear_.push_back(Eigen::VectorXd::Zero(n_));
    return static_cast<int>(lower_.size()) - 1;
  }

  void node(const NodeCost& f, Slot a) {
    if (a.block < 0) {
      constant_ += f.value(*a.value);
      return;
    }
    add_hessian(a.block, a.block, f.hessian());
    linear_[a.block] += f.linear();
    constant_ += f.constant();
  }

  void pair(const PairCost& s, Slot a, Slot b) {
    if (a.block < 0 && b.block < 0) {
      constant_ += s.value(*a.value, *b.value);
      return;
    }
    constant_ += s.constant();
    if (a.block >= 0 && b.block >= 0) {
      add_hessian(a.block, a.block, s.hxx());
      add_hessian(a.block, b.block, s.hxy());
      add_hessian(b.block, a.block, s.hyx());
      add_hessian(b.block, b.block, s.hyy());
      linear_[a.block] += s.gx();
      linear_[b.block] += s.gy();
    } else if (a.block >= 0) {
      const Eigen::VectorXd& y = *b.value;
      add_hessian(a.block, a.block, s.hxx());
      linear_[a.block] += s.gx() + s.hxy() * y;
      constant_ += 0.5 * y.dot(s.hyy() * y) + s.gy().dot(y);
    } else {
      const Eigen::VectorXd& x = *a.value;
      add_hessian(b.block, b.block, s.hyy());
      linear_[b.block] += s.gy() + s.hyx() * x;
      constant_ += 0.5 * x.dot(s.hxx() * x) + s.gx().dot(x);
    }
  }

  BoxQp build() const {
    const int blocks = static_cast<int>(lower_.size());
    const int m = blocks * n_;
    BoxQp qp;
    qp.Q.resize(m, m);
    qp.Q.setFromTriplets(triplets_.begin(), triplets_.end());
    qp.q.resize(m);
    qp.lower.resize(m);
    qp.upper.resize(m);
    for (int b = 0; b < blocks; ++b) {
      qp.q.segment(b * n_, n_) = linear_[b];
      qp.lower.segment(b * n_, n_) = lower_[b];
      qp.upper.segment(b * n_, n_) = upper_[b];
    }
    qp.constant = constant_;
    return qp;
  }

 private:
  template <typename M>
  void add_hessian(int bi, int bj, const M& block) {
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) {
        double val = block(i, j);
        if (val != 0.0) triplets_.emplace_back(bi * n_ + i, bj * n_ + j, val);
      }
    }
  }

  int n_;
  std::vector<Eigen::VectorXd> lower_, upper_, linear_;
  std::vector<Eigen::Triplet<double>> triplets_;
  double constant_ = 0.0;
};

SolveReport report_of(const QpResult& res, int variables) {
  return {res.objective, res.kkt_residual, res.iterations, res.method, variables};
}

Eigen::VectorXd block(const Eigen::VectorXd& z, int b, int n) { return z.segment(b * n, n); }

void check_action(const Instance& inst, const GlobalAction& x, const char* what) {
  if (static_cast<int>(x.size()) != inst.vertex_count()) {
    throw DimensionMismatch(std::string(what) + " must cover every vertex");
  }
  for (const auto& xv : x) {
    if (xv.size() != inst.dim()) throw DimensionMismatch(std::string(what) + " has wrong dimension");
  }
}

// Global window: free times [t0, t1], x_{t0-1} = y and, if z is given,
// x_{t1+1} = z with the costs of step t1+1 included.
Segment solve_global_window(const Instance& inst, int t0, int t1, const GlobalAction& y,
                            const GlobalAction* z, const SolverSettings& settings) {
  const int V = inst.vertex_count();
  const int n = inst.dim();
  const auto& edges = inst.network().edges();
  const int steps = std::max(t1 - t0 + 1, 0);
  Assembler as(n);
  for (int tau = t0; tau <= t1; ++tau) {
    for (int v = 0; v < V; ++v) as.add_block(inst.box(tau, v));
  }
  auto slot = [&](int tau, int v) -> Slot {
    if (tau == t0 - 1) return {-1, &y[v]};
    if (tau == t1 + 1) return {-1, &(*z)[v]};
    return {(tau - t0) * V + v, nullptr};
  };
  const int last = z ? t1 + 1 : t1;
  for (int tau = t0; tau <= last; ++tau) {
    for (int v = 0; v < V; ++v) {
      as.node(inst.node_cost(tau, v), slot(tau, v));
      as.pair(inst.temporal_cost(tau, v), slot(tau, v), slot(tau - 1, v));
    }
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      as.pair(inst.spatial_cost(tau, e), slot(tau, edges[e].u), slot(tau, edges[e].v));
    }
  }
  BoxQp qp = as.build();
  QpResult res = solve_box_qp(qp, settings);
  Segment seg;
  seg.first_time = t0;
  seg.report = report_of(res, qp.size());
  seg.actions.resize(steps);
  for (int s = 0; s < steps; ++s) {
    seg.actions[s].resize(V);
    for (int v = 0; v < V; ++v) seg.actions[s][v] = block(res.z, s * V + v, n);
  }
  return seg;
}

}  // namespace

int LocalWindow::free_position(int tau, int u) const {
  auto it = std::lower_bound(interior.begin(), interior.end(), u);
  if (tau < t || tau > t + k - 2 || it == interior.end() || *it != u) return -1;
  return (tau - t) * static_cast<int>(interior.size()) + static_cast<int>(it - interior.begin());
}

int LocalWindow::boundary_position(int tau, int u) const {
  auto it = std::lower_bound(boundary_slots.begin(), boundary_slots.end(), SpaceTimeIndex{tau, u});
  if (it == boundary_slots.end() || !(*it == SpaceTimeIndex{tau, u})) return -1;
  return static_cast<int>(it - boundary_slots.begin());
}

int LocalWindow::outer_position(int u) const {
  auto it = std::lower_bound(outer.begin(), outer.end(), u);
  if (it == outer.end() || *it != u) return -1;
  return static_cast<int>(it - outer.begin());
}

LocalWindow local_window(const Network& net, int t, int v, int k, int r) {
  if (k < 2) throw InvalidConfig("local problem needs k >= 2, got " + std::to_string(k));
  if (r < 1) throw InvalidConfig("local problem needs r >= 1, got " + std::to_string(r));
  if (t < 1) throw InvalidConfig("local problem needs t >= 1");
  LocalWindow w;
  w.t = t;
  w.v = v;
  w.k = k;
  w.r = r;
  w.outer = net.neighborhood(v, r);
  w.interior = net.neighborhood(v, r - 1);
  w.edges = net.edges_within(w.outer);
  SpaceTimeNeighborhood st = st_neighborhood(net, t, v, k, r);
  w.free_slots = std::move(st.interior);
  w.boundary_slots = std::move(st.boundary);
  return w;
}

LocalBoundary lpc_boundary(const Instance& inst, const LocalWindow& w, const GlobalAction& prev) {
  LocalBoundary b;
  b.initial.reserve(w.outer.size());
  for (int u : w.outer) b.initial.push_back(prev.at(u));
  b.terminal.reserve(w.boundary_slots.size());
  for (const auto& s : w.boundary_slots) b.terminal.push_back(inst.theta(s.t, s.v));
  return b;
}

LocalSolution local_psi(const Instance& inst, const LocalWindow& w, const LocalBoundary& boundary,
                        const SolverSettings& settings, const LocalOptions& options) {
  const int n = inst.dim();
  if (boundary.initial.size() != w.outer.size() ||
      boundary.terminal.size() != w.boundary_slots.size()) {
    throw DimensionMismatch("local boundary does not match its window");
  }
  for (const auto& x : boundary.initial) {
    if (x.size() != n) throw DimensionMismatch("local boundary value has wrong dimension");
  }
  for (const auto& x : boundary.terminal) {
    if (x.size() != n) throw DimensionMismatch("local boundary value has wrong dimension");
  }
  Assembler as(n);
  for (const auto& s : w.free_slots) as.add_block(inst.box(s.t, s.v));
  auto slot = [&](int tau, int u) -> Slot {
    if (tau == w.t - 1) return {-1, &boundary.initial[w.outer_position(u)]};
    int f = w.free_position(tau, u);
    if (f >= 0) return {f, nullptr};
    return {-1, &boundary.terminal[w.boundary_position(tau, u)]};
  };
  const auto& edges = inst.network().edges();
  const int last = w.t + w.k - 1;
  for (int tau = w.t; tau <= last; ++tau) {
    for (int u : w.interior) as.node(inst.node_cost(tau, u), slot(tau, u));
    for (int e : w.edges) as.pair(inst.spatial_cost(tau, e), slot(tau, edges[e].u), slot(tau, edges[e].v));
    if (tau == last && !options.terminal_switching) continue;
    for (int u : w.outer) as.pair(inst.temporal_cost(tau, u), slot(tau, u), slot(tau - 1, u));
  }
  BoxQp qp = as.build();
  QpResult res = solve_box_qp(qp, settings);
  LocalSolution sol;
  sol.report = report_of(res, qp.size());
  sol.values.resize(w.free_slots.size());
  for (std::size_t i = 0; i < w.free_slots.size(); ++i) sol.values[i] = block(res.z, static_cast<int>(i), n);
  return sol;
}

Segment clairvoyant_pinned(const Instance& inst, int t, int p, const GlobalAction& y,
                           const GlobalAction& z, const SolverSettings& settings) {
  if (t < 1) throw InvalidConfig("clairvoyant window needs t >= 1");
  if (p < 1) throw InvalidConfig("clairvoyant window needs p >= 1");
  check_action(inst, y, "initial action");
  check_action(inst, z, "terminal action");
  return solve_global_window(inst, t, t + p - 2, y, &z, settings);
}

Segment clairvoyant_tail(const Instance& inst, int t, const GlobalAction& y,
                         const SolverSettings& settings) {
  if (t < 1 || t > inst.horizon()) throw InvalidConfig("tail problem needs 1 <= t <= H");
  check_action(inst, y, "initial action");
  return solve_global_window(inst, t, inst.horizon(), y, nullptr, settings);
}

double CostBreakdown::total_hitting() const {
  return std::accumulate(hitting.begin(), hitting.end(), 0.0);
}

double CostBreakdown::total_switching() const {
  return std::accumulate(switching.begin(), switching.end(), 0.0);
}

double CostBreakdown::total() const { return total_hitting() + total_switching(); }

CostBreakdown evaluate_costs(const Instance& inst, const std::vector<GlobalAction>& actions) {
  const int H = inst.horizon();
  if (static_cast<int>(actions.size()) != H + 1) {
    throw DimensionMismatch("trajectory must cover t = 0..H");
  }
  CostBreakdown c;
  c.hitting.resize(H);
  c.switching.resize(H);
  for (int t = 1; t <= H; ++t) {
    c.hitting[t - 1] = inst.hitting_cost(t, actions[t]);
    c.switching[t - 1] = inst.switching_cost(t, actions[t], actions[t - 1]);
  }
  return c;
}

Trajectory make_trajectory(const Instance& inst, std::vector<GlobalAction> actions) {
  Trajectory tr;
  tr.costs = evaluate_costs(inst, actions);
  tr.actions = std::move(actions);
  return tr;
}

OfflineResult offline_opt(const Instance& inst, const SolverSettings& settings) {
  Segment seg = clairvoyant_tail(inst, 1, inst.x0(), settings);
  std::vector<GlobalAction> actions;
  actions.reserve(inst.horizon() + 1);
  actions.push_back(inst.x0());
  for (auto& a : seg.actions) actions.push_back(std::move(a));
  OfflineResult out;
  out.trajectory = make_trajectory(inst, std::move(actions));
  out.report = seg.report;
  return out;
}

}  // namespace netoco
