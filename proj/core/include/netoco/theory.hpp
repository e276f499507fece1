#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netoco/graph.hpp"

namespace netoco {

struct BasicDecay {
  double rho_T = 0.0;
  double rho_S = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
};

BasicDecay decay_basic(double mu, double ell_T, double ell_S, int max_degree);

// Boundary sizes h(gamma), either an explicit sequence (with an optional
// geometric tail beyond its end) or a symbolic family.
class BoundaryGrowth {
 public:
  enum class Kind { Sequence, Exponential, Polynomial };

  // h(g) = values[g] for g < size; beyond, values.back() * tail^(g - size + 1).
  static BoundaryGrowth sequence(std::vector<double> values, double tail_ratio = 0.0);
  // h(g) = base^g
  static BoundaryGrowth exponential(double base);
  // h(0) = 1, h(g) = coeff * g^degree for g >= 1
  static BoundaryGrowth polynomial(double coeff, double degree);
  // Measured from a finite network; zero beyond the diameter.
  static BoundaryGrowth measured(const Network& net);

  Kind kind() const { return kind_; }
  int explicit_terms() const { return static_cast<int>(values_.size()); }
  double operator()(int gamma) const;
  // log h(gamma), -inf where h vanishes.
  double log_value(int gamma) const;
  // lim h(g+1)/h(g), the quantity the ratio test needs.
  double limit_ratio() const;

 private:
  Kind kind_ = Kind::Sequence;
  std::vector<double> values_;
  double param_a_ = 0.0;
  double param_b_ = 0.0;
};

struct SeriesSum {
  double value = 0.0;
  bool converged = true;
  int terms = 0;
};

// sum_{g >= 0} q^g h(g), stopping once terms drop below 1e-15 relative.
SeriesSum weighted_series(const BoundaryGrowth& h, double q);

struct TightDecay {
  double rho_T = 0.0;
  double rho_S = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double a = 0.0;
  double a_tilde = 0.0;
  double gamma_S = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  bool a_finite = true;
  bool a_tilde_finite = true;
  bool mu_condition = true;
  std::vector<std::string> violations;
  bool hypotheses_hold() const { return violations.empty(); }
};

// Never throws on hypothesis failure; the violations are listed instead.
TightDecay decay_tight(double mu, double ell_T, double ell_S, int max_degree,
                       const BoundaryGrowth& h, double b1, double b2);
// Throws HypothesisViolated naming the failed conditions.
TightDecay require_decay_tight(double mu, double ell_T, double ell_S, int max_degree,
                               const BoundaryGrowth& h, double b1, double b2);

struct GlobalDecay {
  double rho_G = 0.0;
  double C_G = 0.0;
  double C0 = 1.0;
};

GlobalDecay decay_global(double mu, double ell_T);

enum class LambdaBranch { First, Second };

struct LowerBoundFactors {
  double lambda_T = 0.0;
  double lambda_S = 0.0;
  double first_branch = 0.0;
  std::optional<double> second_branch;  // only evaluated when D ell_S / mu >= 48
  LambdaBranch branch = LambdaBranch::First;
  bool degree_ok = true;  // the construction needs max degree >= 3
};

LowerBoundFactors lower_bound_factors(double mu, double ell_T, double ell_S, int max_degree);

// C3(r) = sum_{g=0}^{r} h(g) rho_S^g, with 0^0 = 1.
double c3(const BoundaryGrowth& h, double rho_S, int r);

// Everything the competitive-ratio and per-step bounds consume.
struct DecayParams {
  double mu = 1.0;
  double ell_f = 1.0;
  double ell_T = 0.0;
  double ell_S = 0.0;
  int max_degree = 0;
  BoundaryGrowth h = BoundaryGrowth::exponential(1.0);
  double rho_T = 0.0;
  double rho_S = 0.0;
  double C1 = 0.0;
  GlobalDecay global;
};

DecayParams decay_params_basic(double mu, double ell_f, double ell_T, double ell_S,
                               int max_degree, const BoundaryGrowth& h);
DecayParams decay_params_tight(double mu, double ell_f, double ell_T, double ell_S,
                               int max_degree, const BoundaryGrowth& h, double b1, double b2);

struct CrBound {
  bool condition_met = false;
  double gate = 0.0;   // left side of the largeness condition, compared to 1/2
  double bound = 0.0;  // evaluated even when the condition fails
};

CrBound cr_upper_bound(const DecayParams& p, int k, int r);

// Right side of the per-step error inequality. f_star[i] = f_{t+i}(x*_{t+i})
// for i = 0..k-1 (zero past the horizon); prev_gap_sq = ||x_{t-1} - x*_{t-1}||^2.
double per_step_error_bound(const DecayParams& p, int k, int r, double prev_gap_sq,
                            const std::vector<double>& f_star);

// C0^2 / (1 - rho_G)^2
double error_accumulation_factor(const GlobalDecay& g);

// Bound of the pure exponential-decay corollary: tight factors with
// b1 = 2D - 1, b2 = 4D^2 - 2D and h(g) <= D^g.
struct PureExpDecayBound {
  bool hypotheses_hold = false;  // ell_S/mu <= D^-7 and ell_T/mu <= 1/16
  double rho_T = 0.0;
  double rho_S = 0.0;
  double bound = 0.0;
};

PureExpDecayBound pure_exp_decay_bound(double mu, double ell_f, double ell_T, double ell_S,
                                       int max_degree, int k, int r);

struct AugmentationVerdict {
  double rho_T = 0.0;
  double rho_S = 0.0;
  double lambda_T = 0.0;
  double lambda_S = 0.0;
  bool temporal_lower = true;  // rho_T^4 <= lambda_T
  bool temporal_upper = true;  // lambda_T <= rho_T^2
  bool spatial = true;         // rho_S^32 <= lambda_S
  double temporal_lower_margin = 0.0;
  double temporal_upper_margin = 0.0;
  double spatial_margin = 0.0;
  bool all() const { return temporal_lower && temporal_upper && spatial; }
};

AugmentationVerdict augmentation_relations(double mu, double ell_T, double ell_S, int max_degree);

struct LaplacianFloor {
  int kappa = 0;
  int block_size = 0;
  double first_claim = 0.0;
  std::optional<double> second_claim;  // when ell > 16 / d
};

// Floor on ((I + ell L)^{-1})_{ij} for a ring of blocks with block size d at
// distance kappa >= 3.
LaplacianFloor laplacian_decay_floor(int block_size, double ell, int kappa);
LaplacianFloor laplacian_decay_floor(const Network& ring, double ell, int i, int j);

}  // namespace netoco
