#include "netoco/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "netoco/error.hpp"

namespace netoco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform(std::mt19937_64& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) G(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

Eigen::MatrixXd with_spectrum(const Eigen::MatrixXd& Q, const Eigen::VectorXd& lambda) {
  Eigen::MatrixXd A = Q * lambda.asDiagonal() * Q.transpose();
  return 0.5 * (A + A.transpose());
}

}  // namespace

Instance random_instance(const Network& net, int horizon, int dim, const Constants& constants,
                         std::uint64_t seed, const RandomInstanceOptions& options) {
  if (!(constants.mu > 0.0) || constants.ell_f < constants.mu) {
    throw InvalidConfig("random_instance needs 0 < mu <= ell_f");
  }
  if (constants.ell_T < 0.0 || constants.ell_S < 0.0) {
    throw InvalidConfig("random_instance needs ell_T, ell_S >= 0");
  }
  if (horizon < 1 || dim < 1) throw InvalidConfig("random_instance needs H >= 1 and n >= 1");
  if (options.box_half_width_min <= 0.0 ||
      options.box_half_width_max < options.box_half_width_min) {
    throw InvalidConfig("random_instance box widths must satisfy 0 < min <= max");
  }

  std::mt19937_64 rng(seed);
  const int V = net.vertex_count();
  const int E = net.edge_count();
  const int n = dim;
  InstanceData d;
  d.net = net;
  d.horizon = horizon;
  d.dim = n;
  d.constants = constants;
  d.node.assign(horizon, {});
  d.temporal.assign(horizon, {});
  d.spatial.assign(horizon, {});
  d.boxes.assign(horizon, {});

  for (int t = 1; t <= horizon; ++t) {
    for (int v = 0; v < V; ++v) {
      Box box = Box::unbounded(n);
      Eigen::VectorXd center(n);
      if (options.unbounded) {
        for (int i = 0; i < n; ++i) center[i] = uniform(rng, -1.0, 1.0);
      } else {
        Eigen::VectorXd lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
          lo[i] = -uniform(rng, options.box_half_width_min, options.box_half_width_max);
          hi[i] = uniform(rng, options.box_half_width_min, options.box_half_width_max);
        }
        box = Box(lo, hi);
        for (int i = 0; i < n; ++i) {
          double mid = 0.5 * (lo[i] + hi[i]);
          center[i] = mid + options.center_spread * (uniform(rng, 0.0, 1.0) - 0.5) * (hi[i] - lo[i]);
        }
      }
      Eigen::VectorXd lambda(n);
      for (int i = 0; i < n; ++i) lambda[i] = uniform(rng, constants.mu, constants.ell_f);
      std::sort(lambda.data(), lambda.data() + n);
      bool first = t == 1 && v == 0;
      bool last = t == horizon && v == V - 1;
      if (last && (!first || n > 1)) lambda[n - 1] = constants.ell_f;
      if (first) lambda[0] = constants.mu;
      Eigen::MatrixXd A = with_spectrum(random_orthogonal(rng, n), lambda);
      d.node[t - 1].push_back(NodeCost::centered(A, center));
      d.boxes[t - 1].push_back(box);

      if (constants.ell_T > 0.0) {
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i) w[i] = uniform(rng, 0.0, 0.5 * constants.ell_T);
        std::sort(w.data(), w.data() + n);
        if (first) w[n - 1] = 0.5 * constants.ell_T;
        d.temporal[t - 1].push_back(PairCost::difference(with_spectrum(random_orthogonal(rng, n), w)));
      } else {
        d.temporal[t - 1].push_back(PairCost::zero(n));
      }
    }
    for (int e = 0; e < E; ++e) {
      if (constants.ell_S > 0.0) {
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i) w[i] = uniform(rng, 0.0, 0.5 * constants.ell_S);
        std::sort(w.data(), w.data() + n);
        if (t == 1 && e == 0) w[n - 1] = 0.5 * constants.ell_S;
        Eigen::MatrixXd W = with_spectrum(random_orthogonal(rng, n), w);
        bool flip = options.signed_spatial && uniform(rng, 0.0, 1.0) < 0.5;
        if (flip) {
          Eigen::MatrixXd H(2 * n, 2 * n);
          H << W, W, W, W;
          d.spatial[t - 1].push_back(PairCost(H, Eigen::VectorXd::Zero(2 * n), 0.0));
        } else {
          d.spatial[t - 1].push_back(PairCost::difference(W));
        }
      } else {
        d.spatial[t - 1].push_back(PairCost::zero(n));
      }
    }
  }
  d.x0.resize(V);
  for (int v = 0; v < V; ++v) {
    d.x0[v].resize(n);
    for (int i = 0; i < n; ++i) d.x0[v][i] = uniform(rng, -options.x0_scale, options.x0_scale);
  }
  return Instance(std::move(d));
}

PricingDerived pricing_derive(const PricingParams& p, const Network& net) {
  const int H = p.horizon;
  const int V = net.vertex_count();
  const int E = net.edge_count();
  if (H < 1) throw InvalidConfig("pricing horizon must be at least 1");
  auto check = [&](const std::vector<std::vector<double>>& m, int width, const char* what) {
    if (static_cast<int>(m.size()) != H) throw DimensionMismatch(std::string(what) + " needs H rows");
    for (const auto& row : m) {
      if (static_cast<int>(row.size()) != width) {
        throw DimensionMismatch(std::string(what) + " row has wrong length");
      }
    }
  };
  check(p.a, V, "a");
  check(p.k, V, "k");
  check(p.b, V, "b");
  check(p.price_cap, V, "price_cap");
  check(p.eta_forward, E, "eta_forward");
  check(p.eta_backward, E, "eta_backward");
  if (!p.x0.empty() && static_cast<int>(p.x0.size()) != V) throw DimensionMismatch("x0 size");
  if (!(p.mu > 0.0)) throw InvalidConfig("pricing mu must be positive");

  PricingDerived out;
  out.gamma.assign(H, std::vector<double>(E, 0.0));
  out.xi.assign(H, std::vector<double>(V, 0.0));
  double k_max = 0.0;
  for (int t = 0; t < H; ++t) {
    for (int v = 0; v < V; ++v) {
      if (!(p.a[t][v] > 0.0)) throw InvalidConfig("pricing needs a > 0");
      if (!(p.k[t][v] > 0.0)) throw InvalidConfig("pricing needs k > 0");
      if (p.b[t][v] < 0.0) throw InvalidConfig("pricing needs b >= 0");
      if (!(p.price_cap[t][v] > 0.0)) throw InvalidConfig("pricing needs a positive price cap");
      k_max = std::max(k_max, p.k[t][v]);
      out.b_max = std::max(out.b_max, p.b[t][v]);
      if (std::isfinite(p.price_cap[t][v])) {
        out.c_tilde = std::max(out.c_tilde, p.a[t][v] / p.price_cap[t][v]);
      }
    }
    for (int e = 0; e < E; ++e) {
      out.gamma[t][e] = 0.5 * (p.eta_forward[t][e] + p.eta_backward[t][e]);
      out.gamma_max = std::max({out.gamma_max, std::abs(p.eta_forward[t][e]),
                                std::abs(p.eta_backward[t][e])});
      const Edge& ed = net.edge(e);
      out.b_tilde = std::max({out.b_tilde, p.a[t][ed.u] / p.a[t][ed.v], p.a[t][ed.v] / p.a[t][ed.u]});
    }
  }
  for (int t = 0; t < H; ++t) {
    for (int v = 0; v < V; ++v) {
      double coupling = 0.0;
      for (int u : net.neighbors(v)) coupling += std::abs(out.gamma[t][net.edge_index(u, v)]);
      double b_next = t + 1 < H ? p.b[t + 1][v] : 0.0;
      double xi = p.k[t][v] - coupling - 0.5 * (p.b[t][v] + b_next);
      if (!(xi >= 0.5 * p.mu)) {
        throw InstanceInfeasible("pricing condition xi >= mu/2 fails at (t=" + std::to_string(t + 1) +
                                 ", v=" + std::to_string(v) + "): xi = " + std::to_string(xi));
      }
      out.xi[t][v] = xi;
      out.C += p.a[t][v] * p.a[t][v] / (4.0 * xi);
    }
  }
  if (!p.x0.empty()) {
    for (int v = 0; v < V; ++v) out.initial_constant += 0.5 * p.b[0][v] * p.x0[v] * p.x0[v];
  }
  out.ell_f = 2.0 * k_max;
  out.eta = std::max(2.0 * (out.ell_f + net.max_degree() * out.b_tilde * out.gamma_max) / p.mu,
                     out.c_tilde / p.mu);
  return out;
}

PricingInstance pricing_instance(const PricingParams& p, const Network& net) {
  PricingDerived der = pricing_derive(p, net);
  const int H = p.horizon;
  const int V = net.vertex_count();
  const int E = net.edge_count();
  InstanceData d;
  d.net = net;
  d.horizon = H;
  d.dim = 1;
  d.constants = {p.mu, der.ell_f, 2.0 * der.b_max, 4.0 * der.gamma_max};
  d.node.assign(H, {});
  d.temporal.assign(H, {});
  d.spatial.assign(H, {});
  d.boxes.assign(H, {});
  for (int t = 0; t < H; ++t) {
    for (int v = 0; v < V; ++v) {
      double xi = der.xi[t][v];
      Eigen::MatrixXd A = Eigen::MatrixXd::Constant(1, 1, 2.0 * xi);
      Eigen::VectorXd center = Eigen::VectorXd::Constant(1, p.a[t][v] / (2.0 * xi));
      d.node[t].push_back(NodeCost::centered(A, center));
      d.temporal[t].push_back(p.b[t][v] > 0.0 ? PairCost::squared_combination(1, 0.5 * p.b[t][v], -1.0)
                                              : PairCost::zero(1));
      d.boxes[t].push_back(Box::uniform(1, 0.0, p.price_cap[t][v]));
    }
    for (int e = 0; e < E; ++e) {
      double g = der.gamma[t][e];
      d.spatial[t].push_back(g != 0.0 ? PairCost::squared_combination(1, std::abs(g), g > 0 ? 1.0 : -1.0)
                                      : PairCost::zero(1));
    }
  }
  d.x0.assign(V, Eigen::VectorXd::Zero(1));
  if (!p.x0.empty()) {
    for (int v = 0; v < V; ++v) d.x0[v][0] = p.x0[v];
  }
  return {p, der, Instance(std::move(d))};
}

std::vector<std::vector<double>> pricing_demand(const PricingParams& p, const Network& net,
                                                const std::vector<GlobalAction>& trajectory) {
  const int H = p.horizon;
  const int V = net.vertex_count();
  if (static_cast<int>(trajectory.size()) != H + 1) {
    throw DimensionMismatch("pricing trajectory must cover t = 0..H");
  }
  std::vector<std::vector<double>> demand(H, std::vector<double>(V, 0.0));
  for (int t = 1; t <= H; ++t) {
    for (int v = 0; v < V; ++v) {
      double x = trajectory[t][v][0];
      double dv = p.a[t - 1][v] - p.k[t - 1][v] * x + p.b[t - 1][v] * trajectory[t - 1][v][0];
      for (int u : net.neighbors(v)) {
        int e = net.edge_index(u, v);
        double eta_uv = u < v ? p.eta_forward[t - 1][e] : p.eta_backward[t - 1][e];
        dv -= eta_uv * trajectory[t][u][0];
      }
      demand[t - 1][v] = dv;
    }
  }
  return demand;
}

double pricing_revenue(const PricingParams& p, const Network& net,
                       const std::vector<GlobalAction>& trajectory) {
  auto demand = pricing_demand(p, net, trajectory);
  double total = 0.0;
  for (int t = 1; t <= p.horizon; ++t) {
    for (int v = 0; v < net.vertex_count(); ++v) total += trajectory[t][v][0] * demand[t - 1][v];
  }
  return total;
}

PricingParams random_pricing_params(const Network& net, int horizon, std::uint64_t seed,
                                    const RandomPricingOptions& o) {
  if (o.xi_min < 0.5 * o.mu) throw InvalidConfig("xi_min must be at least mu/2");
  std::mt19937_64 rng(seed);
  const int V = net.vertex_count();
  const int E = net.edge_count();
  PricingParams p;
  p.horizon = horizon;
  p.mu = o.mu;
  p.a.assign(horizon, std::vector<double>(V));
  p.b.assign(horizon, std::vector<double>(V));
  p.k.assign(horizon, std::vector<double>(V));
  p.price_cap.assign(horizon, std::vector<double>(V, o.price_cap));
  p.eta_forward.assign(horizon, std::vector<double>(E));
  p.eta_backward.assign(horizon, std::vector<double>(E));
  for (int t = 0; t < horizon; ++t) {
    for (int v = 0; v < V; ++v) {
      p.a[t][v] = uniform(rng, o.a_min, o.a_max);
      p.b[t][v] = uniform(rng, 0.0, o.b_max);
    }
    for (int e = 0; e < E; ++e) {
      p.eta_forward[t][e] = uniform(rng, -o.eta_max, o.eta_max);
      p.eta_backward[t][e] = uniform(rng, -o.eta_max, o.eta_max);
    }
  }
  for (int t = 0; t < horizon; ++t) {
    for (int v = 0; v < V; ++v) {
      double coupling = 0.0;
      for (int u : net.neighbors(v)) {
        int e = net.edge_index(u, v);
        coupling += std::abs(0.5 * (p.eta_forward[t][e] + p.eta_backward[t][e]));
      }
      double b_next = t + 1 < horizon ? p.b[t + 1][v] : 0.0;
      p.k[t][v] = coupling + 0.5 * (p.b[t][v] + b_next) + uniform(rng, o.xi_min, o.xi_max);
    }
  }
  return p;
}

std::vector<double> temporal_adversary_thetas(int horizon, std::uint64_t seed, ThetaPattern pattern) {
  std::vector<double> theta(horizon);
  std::mt19937_64 rng(seed);
  for (int t = 1; t <= horizon; ++t) {
    theta[t - 1] = pattern == ThetaPattern::Alternating ? static_cast<double>(t % 2)
                                                        : uniform(rng, 0.0, 1.0);
  }
  return theta;
}

Instance temporal_adversary_instance(double mu, double ell_T, int horizon, std::uint64_t seed,
                                     ThetaPattern pattern) {
  if (horizon < 2) throw InvalidConfig("temporal adversary needs H >= 2");
  if (!(mu > 0.0) || ell_T < 0.0) throw InvalidConfig("temporal adversary needs mu > 0, ell_T >= 0");
  std::vector<double> theta = temporal_adversary_thetas(horizon, seed, pattern);
  InstanceData d;
  d.net = Network(1, {});
  d.horizon = horizon;
  d.dim = 1;
  d.constants = {mu, mu, 2.0 * ell_T, 0.0};
  for (int t = 0; t < horizon; ++t) {
    d.node.push_back({NodeCost::centered(Eigen::MatrixXd::Constant(1, 1, mu),
                                         Eigen::VectorXd::Constant(1, theta[t]))});
    d.temporal.push_back({ell_T > 0.0 ? PairCost::squared_combination(1, 0.5 * ell_T, -1.0)
                                      : PairCost::zero(1)});
    d.spatial.push_back({});
    d.boxes.push_back({Box::uniform(1, 0.0, 1.0)});
  }
  d.x0 = {Eigen::VectorXd::Zero(1)};
  return Instance(std::move(d));
}

Eigen::MatrixXd laplacian(const Network& net) {
  const int N = net.vertex_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
  for (const Edge& e : net.edges()) {
    L(e.u, e.u) += 1.0;
    L(e.v, e.v) += 1.0;
    L(e.u, e.v) -= 1.0;
    L(e.v, e.u) -= 1.0;
  }
  return L;
}

Eigen::VectorXd SpatialOneStep::optimum() const {
  const auto N = w.size();
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(N, N) + ell * L;
  return -K.ldlt().solve(w);
}

double SpatialOneStep::optimal_cost() const {
  const auto N = w.size();
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(N, N) + ell * L;
  return w.dot(w) - w.dot(K.ldlt().solve(w));
}

SpatialOneStep spatial_onestep_instance(int blocks, int block_size, double ell,
                                        const Eigen::VectorXd& w) {
  if (ell < 0.0) throw InvalidConfig("spatial one-step instance needs ell >= 0");
  Network net = ring_of_blocks(blocks, block_size);
  const int N = net.vertex_count();
  if (w.size() != N) throw DimensionMismatch("w must have one entry per vertex");
  InstanceData d;
  d.net = net;
  d.horizon = 1;
  d.dim = 1;
  d.constants = {2.0, 2.0, 0.0, 4.0 * ell};
  d.node.assign(1, {});
  d.temporal.assign(1, {});
  d.spatial.assign(1, {});
  d.boxes.assign(1, {});
  for (int i = 0; i < N; ++i) {
    d.node[0].push_back(NodeCost(Eigen::MatrixXd::Constant(1, 1, 2.0),
                                 Eigen::VectorXd::Constant(1, 2.0 * w[i]), w[i] * w[i]));
    d.temporal[0].push_back(PairCost::zero(1));
    d.boxes[0].push_back(Box::unbounded(1));
  }
  for (int e = 0; e < net.edge_count(); ++e) {
    d.spatial[0].push_back(ell > 0.0 ? PairCost::squared_combination(1, ell, -1.0) : PairCost::zero(1));
  }
  d.x0.assign(N, Eigen::VectorXd::Zero(1));
  return {Instance(std::move(d)), w, laplacian(net), ell};
}

SpatialOneStep spatial_onestep_instance(int blocks, int block_size, double ell,
                                        std::uint64_t w_seed) {
  std::mt19937_64 rng(w_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd w(blocks * block_size);
  for (int i = 0; i < w.size(); ++i) w[i] = normal(rng);
  return spatial_onestep_instance(blocks, block_size, ell, w);
}

}  // namespace netoco
