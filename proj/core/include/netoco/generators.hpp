#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "netoco/instance.hpp"

namespace netoco {

struct RandomInstanceOptions {
  // Each box coordinate is [-U(lo, hi), U(lo, hi)].
  double box_half_width_min = 1.0;
  double box_half_width_max = 2.0;
  bool unbounded = false;
  // Node cost centers are drawn uniformly from the box scaled by this
  // factor; values above 1 push some centers outside so boxes bind.
  double center_spread = 1.0;
  // Spatial costs couple x^u with -x^v on a random half of the edges.
  bool signed_spatial = false;
  double x0_scale = 1.0;
};

// Quadratic instance whose certified spectral extremes equal the requested
// constants (whenever there is more than one cost to carry them).
Instance random_instance(const Network& net, int horizon, int dim, const Constants& constants,
                         std::uint64_t seed, const RandomInstanceOptions& options = {});

// Multiproduct pricing with linear demand
//   d_t^v = a - k x_t^v - sum_u eta_{u->v} x_t^u + b x_{t-1}^v.
// Per-(t, v) arrays are indexed [t-1][v]; per-(t, edge) arrays [t-1][e]
// with eta_forward = eta_{u->v} and eta_backward = eta_{v->u} for
// edge (u, v), u < v.
struct PricingParams {
  int horizon = 1;
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> k;
  std::vector<std::vector<double>> b;
  std::vector<std::vector<double>> price_cap;  // may be +inf
  std::vector<std::vector<double>> eta_forward;
  std::vector<std::vector<double>> eta_backward;
  double mu = 1.0;
  std::vector<double> x0;  // empty means zero prices
};

struct PricingDerived {
  std::vector<std::vector<double>> gamma;  // [t-1][e]
  std::vector<std::vector<double>> xi;     // [t-1][v]
  double ell_f = 0.0;
  double b_max = 0.0;
  double gamma_max = 0.0;
  double b_tilde = 0.0;
  double c_tilde = 0.0;
  double eta = 0.0;
  // sum a^2 / (4 xi)
  double C = 0.0;
  // sum_v (b_1^v / 2) (x_0^v)^2, zero when x0 = 0
  double initial_constant = 0.0;
};

struct PricingInstance {
  PricingParams params;
  PricingDerived derived;
  Instance instance;
};

PricingDerived pricing_derive(const PricingParams& p, const Network& net);
PricingInstance pricing_instance(const PricingParams& p, const Network& net);
// trajectory[t] for t = 0..H, one scalar price per vertex.
std::vector<std::vector<double>> pricing_demand(const PricingParams& p, const Network& net,
                                                const std::vector<GlobalAction>& trajectory);
double pricing_revenue(const PricingParams& p, const Network& net,
                       const std::vector<GlobalAction>& trajectory);

struct RandomPricingOptions {
  double a_min = 1.0, a_max = 2.0;
  double b_max = 0.2;
  double eta_max = 0.2;
  double xi_min = 0.5, xi_max = 1.0;
  double price_cap = 4.0;
  double mu = 1.0;
};
PricingParams random_pricing_params(const Network& net, int horizon, std::uint64_t seed,
                                    const RandomPricingOptions& options = {});

enum class ThetaPattern { Alternating, Random };

// Single agent, n = 1, D = [0, 1], f_t = (mu/2)(x - theta_t)^2 and
// c_t = (ell_T/2)(x_t - x_{t-1})^2. The certified temporal constant is the
// joint smoothness 2 ell_T of that switching cost.
Instance temporal_adversary_instance(double mu, double ell_T, int horizon, std::uint64_t seed,
                                     ThetaPattern pattern = ThetaPattern::Alternating);
std::vector<double> temporal_adversary_thetas(int horizon, std::uint64_t seed, ThetaPattern pattern);

Eigen::MatrixXd laplacian(const Network& net);

// One-step instance on a ring of blocks: node cost (x_i + w_i)^2, spatial
// cost ell (x_i - x_j)^2, H = 1, unconstrained.
struct SpatialOneStep {
  Instance instance;
  Eigen::VectorXd w;
  Eigen::MatrixXd L;
  double ell = 0.0;

  // -(I + ell L)^{-1} w, the minimizer of the cost as written.
  Eigen::VectorXd optimum() const;
  // w'(I - (I + ell L)^{-1}) w
  double optimal_cost() const;
};

SpatialOneStep spatial_onestep_instance(int blocks, int block_size, double ell,
                                        const Eigen::VectorXd& w);
SpatialOneStep spatial_onestep_instance(int blocks, int block_size, double ell,
                                        std::uint64_t w_seed);

}  // namespace netoco
