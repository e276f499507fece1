#pragma once

// Reference implementations used only by the tests. They read raw cost
// values (never the library's assembly, gradients or solvers) so that a
// match is meaningful.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include <netoco/graph.hpp>
#include <netoco/instance.hpp>

namespace oracle {

inline constexpr int kFar = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> floyd(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kFar));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : edges) d[u][v] = d[v][u] = 1;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
  return d;
}

inline std::vector<std::vector<int>> floyd(const netoco::Network& net) {
  std::vector<std::pair<int, int>> e;
  for (const auto& ed : net.edges()) e.emplace_back(ed.u, ed.v);
  return floyd(net.vertex_count(), e);
}

// A quadratic q(z) = 0.5 z'Hz + g'z + c on a box.
struct DenseQp {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  double c = 0.0;
  Eigen::VectorXd lo, hi;

  double value(const Eigen::VectorXd& z) const { return 0.5 * z.dot(H * z) + g.dot(z) + c; }
};

// Exact coefficients of a quadratic from values alone: second differences
// with unit steps have no truncation error for polynomials of degree 2.
inline DenseQp extract(int m, const std::function<double(const Eigen::VectorXd&)>& q) {
  DenseQp out;
  out.H.setZero(m, m);
  out.g.setZero(m);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
  out.c = q(z);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[i] = 1.0;
    out.g[i] = 0.5 * (q(e) - q(-e));
    for (int j = i; j < m; ++j) {
      Eigen::VectorXd f = Eigen::VectorXd::Zero(m);
      f[j] = 1.0;
      double h = 0.25 * (q(e + f) - q(e - f) - q(f - e) + q(-e - f));
      out.H(i, j) = out.H(j, i) = h;
    }
  }
  out.lo = Eigen::VectorXd::Constant(m, -std::numeric_limits<double>::infinity());
  out.hi = Eigen::VectorXd::Constant(m, std::numeric_limits<double>::infinity());
  return out;
}

// Global offline problem over z = (x_1, ..., x_H), agents stacked in order.
// Each cost term is extracted on its own variables and scattered.
inline DenseQp global_qp(const netoco::Instance& inst) {
  const int H = inst.horizon(), V = inst.vertex_count(), n = inst.dim();
  const int m = H * V * n;
  DenseQp out;
  out.H.setZero(m, m);
  out.g.setZero(m);
  out.lo.resize(m);
  out.hi.resize(m);
  auto at = [&](int t, int v) { return ((t - 1) * V + v) * n; };
  auto scatter = [&](const DenseQp& local, const std::vector<int>& index) {
    for (std::size_t i = 0; i < index.size(); ++i) {
      out.g[index[i]] += local.g[i];
      for (std::size_t j = 0; j < index.size(); ++j) out.H(index[i], index[j]) += local.H(i, j);
    }
    out.c += local.c;
  };
  auto block = [&](int t, int v) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = at(t, v) + i;
    return idx;
  };
  for (int t = 1; t <= H; ++t) {
    for (int v = 0; v < V; ++v) {
      const auto& f = inst.node_cost(t, v);
      scatter(extract(n, [&](const Eigen::VectorXd& x) { return f.value(x); }), block(t, v));
      const auto& c = inst.temporal_cost(t, v);
      if (t == 1) {
        Eigen::VectorXd x0 = inst.x0()[v];
        scatter(extract(n, [&](const Eigen::VectorXd& x) { return c.value(x, x0); }), block(t, v));
      } else {
        auto idx = block(t, v);
        auto prev = block(t - 1, v);
        idx.insert(idx.end(), prev.begin(), prev.end());
        scatter(extract(2 * n, [&](const Eigen::VectorXd& z) { return c.value(z.head(n), z.tail(n)); }), idx);
      }
      const auto& box = inst.box(t, v);
      out.lo.segment(at(t, v), n) = box.lower();
      out.hi.segment(at(t, v), n) = box.upper();
    }
    const auto& edges = inst.network().edges();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      const auto& s = inst.spatial_cost(t, e);
      auto idx = block(t, edges[e].u);
      auto other = block(t, edges[e].v);
      idx.insert(idx.end(), other.begin(), other.end());
      scatter(extract(2 * n, [&](const Eigen::VectorXd& z) { return s.value(z.head(n), z.tail(n)); }), idx);
    }
  }
  return out;
}

inline Eigen::VectorXd project(const DenseQp& qp, const Eigen::VectorXd& z) {
  return z.cwiseMax(qp.lo).cwiseMin(qp.hi);
}

inline double residual(const DenseQp& qp, const Eigen::VectorXd& z) {
  return (z - project(qp, z - (qp.H * z + qp.g))).norm();
}

// Accelerated projected gradient with step 1/lambda_max and function-value
// restart, run until the fixed-point residual is below tol.
inline Eigen::VectorXd projected_gradient(const DenseQp& qp, double tol = 1e-12, int max_iter = 2000000) {
  const int m = static_cast<int>(qp.g.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qp.H, Eigen::EigenvaluesOnly);
  const double L = std::max(es.eigenvalues().maxCoeff(), 1e-12);
  Eigen::VectorXd x = project(qp, Eigen::VectorXd::Zero(m));
  Eigen::VectorXd y = x;
  double theta = 1.0;
  double fx = qp.value(x);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd next = project(qp, y - (qp.H * y + qp.g) / L);
    double fn = qp.value(next);
    if (fn > fx) {
      // Restart from a plain projected step. Never reject it: near the
      // optimum fn > fx can be rounding noise.
      theta = 1.0;
      next = project(qp, x - (qp.H * x + qp.g) / L);
      fn = qp.value(next);
    }
    double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    y = next + ((theta - 1.0) / theta_next) * (next - x);
    x = next;
    fx = fn;
    theta = theta_next;
    if (it % 8 == 0 && residual(qp, x) <= tol) break;
  }
  return x;
}

inline std::vector<netoco::GlobalAction> unstack(const netoco::Instance& inst, const Eigen::VectorXd& z) {
  const int H = inst.horizon(), V = inst.vertex_count(), n = inst.dim();
  std::vector<netoco::GlobalAction> out;
  out.push_back(inst.x0());
  for (int t = 1; t <= H; ++t) {
    netoco::GlobalAction a(V);
    for (int v = 0; v < V; ++v) a[v] = z.segment(((t - 1) * V + v) * n, n);
    out.push_back(a);
  }
  return out;
}

// Total cost from raw term values only.
inline double trajectory_cost(const netoco::Instance& inst, const std::vector<netoco::GlobalAction>& x) {
  double total = 0.0;
  const auto& edges = inst.network().edges();
  for (int t = 1; t <= inst.horizon(); ++t) {
    for (int v = 0; v < inst.vertex_count(); ++v) {
      total += inst.node_cost(t, v).value(x[t][v]);
      total += inst.temporal_cost(t, v).value(x[t][v], x[t - 1][v]);
    }
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      total += inst.spatial_cost(t, e).value(x[t][edges[e].u], x[t][edges[e].v]);
    }
  }
  return total;
}

// The local problem of agent v at time t, rebuilt from its definition:
// actions on [t-1, t+k-1] x N_v^r, with x_{t-1} = prev, the entries outside
// [t, t+k-2] x N_v^{r-1} pinned at the node minimizers, and cost
//   sum_{tau=t}^{t+k-1} f over N_v^{r-1} + s over edges inside N_v^r
//                       + c over N_v^r.
struct LocalProblem {
  std::vector<std::pair<int, int>> free;  // (tau, u)
  DenseQp qp;
};

inline LocalProblem local_problem(const netoco::Instance& inst, int t, int v, int k, int r,
                                  const netoco::GlobalAction& prev) {
  const int n = inst.dim();
  auto dist = floyd(inst.network());
  std::vector<int> outer, inner;
  for (int u = 0; u < inst.vertex_count(); ++u) {
    if (dist[v][u] <= r) outer.push_back(u);
    if (dist[v][u] <= r - 1) inner.push_back(u);
  }
  LocalProblem lp;
  for (int tau = t; tau <= t + k - 2; ++tau)
    for (int u : inner) lp.free.emplace_back(tau, u);
  const int m = static_cast<int>(lp.free.size()) * n;
  auto fill = [&](const Eigen::VectorXd& z) {
    std::vector<std::vector<Eigen::VectorXd>> X(k + 1, std::vector<Eigen::VectorXd>(inst.vertex_count()));
    for (int u : outer) {
      X[0][u] = prev[u];
      for (int i = 1; i <= k; ++i) X[i][u] = inst.theta(t + i - 1, u);
    }
    for (std::size_t s = 0; s < lp.free.size(); ++s) {
      X[lp.free[s].first - t + 1][lp.free[s].second] = z.segment(static_cast<int>(s) * n, n);
    }
    return X;
  };
  auto objective = [&](const Eigen::VectorXd& z) {
    auto X = fill(z);
    double total = 0.0;
    const auto& edges = inst.network().edges();
    for (int i = 1; i <= k; ++i) {
      const int tau = t + i - 1;
      for (int u : inner) total += inst.node_cost(tau, u).value(X[i][u]);
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (dist[v][edges[e].u] <= r && dist[v][edges[e].v] <= r) {
          total += inst.spatial_cost(tau, e).value(X[i][edges[e].u], X[i][edges[e].v]);
        }
      }
      for (int u : outer) total += inst.temporal_cost(tau, u).value(X[i][u], X[i - 1][u]);
    }
    return total;
  };
  lp.qp = extract(m, objective);
  for (std::size_t s = 0; s < lp.free.size(); ++s) {
    const auto& box = inst.box(lp.free[s].first, lp.free[s].second);
    lp.qp.lo.segment(static_cast<int>(s) * n, n) = box.lower();
    lp.qp.hi.segment(static_cast<int>(s) * n, n) = box.upper();
  }
  return lp;
}

// Central difference of a scalar function along coordinate i.
inline double partial(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x, int i,
                      double h = 1e-5) {
  Eigen::VectorXd a = x, b = x;
  a[i] += h;
  b[i] -= h;
  return (f(a) - f(b)) / (2.0 * h);
}

}  // namespace oracle
