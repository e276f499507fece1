#include "netoco/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "netoco/error.hpp"

namespace netoco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_mu(double mu) {
  if (!(mu > 0.0)) throw InvalidConfig("mu must be positive");
}

// 1 - 2/(sqrt(1+x)+1) written as x/(sqrt(1+x)+1)^2 to keep precision
// for small x.
double one_minus_two_over(double x) {
  double s = std::sqrt(1.0 + x) + 1.0;
  return x / (s * s);
}

double power(double base, int exponent) {
  if (exponent == 0) return 1.0;
  return std::pow(base, exponent);
}

}  // namespace

BasicDecay decay_basic(double mu, double ell_T, double ell_S, int max_degree) {
  require_mu(mu);
  BasicDecay d;
  d.rho_T = std::sqrt(one_minus_two_over(2.0 * ell_T / mu));
  d.rho_S = std::sqrt(one_minus_two_over(max_degree * ell_S / mu));
  d.C1 = 2.0 * std::sqrt(max_degree * ell_S * ell_T) / mu;
  d.C2 = d.C1;
  return d;
}

BoundaryGrowth BoundaryGrowth::sequence(std::vector<double> values, double tail_ratio) {
  if (values.empty()) throw InvalidConfig("boundary growth sequence is empty");
  if (tail_ratio < 0.0) throw InvalidConfig("boundary growth tail ratio must be nonnegative");
  BoundaryGrowth h;
  h.kind_ = Kind::Sequence;
  h.values_ = std::move(values);
  h.param_a_ = tail_ratio;
  return h;
}

BoundaryGrowth BoundaryGrowth::exponential(double base) {
  if (!(base > 0.0)) throw InvalidConfig("exponential boundary growth needs a positive base");
  BoundaryGrowth h;
  h.kind_ = Kind::Exponential;
  h.param_a_ = base;
  return h;
}

BoundaryGrowth BoundaryGrowth::polynomial(double coeff, double degree) {
  if (!(coeff > 0.0) || degree < 0.0) throw InvalidConfig("polynomial boundary growth parameters");
  BoundaryGrowth h;
  h.kind_ = Kind::Polynomial;
  h.param_a_ = coeff;
  h.param_b_ = degree;
  return h;
}

BoundaryGrowth BoundaryGrowth::measured(const Network& net) {
  std::vector<int> h = net.boundary_growth(net.diameter() + 1);
  return sequence(std::vector<double>(h.begin(), h.end()), 0.0);
}

double BoundaryGrowth::operator()(int gamma) const {
  if (gamma < 0) return 0.0;
  switch (kind_) {
    case Kind::Sequence: {
      const int size = static_cast<int>(values_.size());
      if (gamma < size) return values_[gamma];
      return values_.back() * power(param_a_, gamma - size + 1);
    }
    case Kind::Exponential:
      return power(param_a_, gamma);
    case Kind::Polynomial:
      return gamma == 0 ? 1.0 : param_a_ * std::pow(static_cast<double>(gamma), param_b_);
  }
  return 0.0;
}

double BoundaryGrowth::log_value(int gamma) const {
  if (gamma < 0) return -kInf;
  switch (kind_) {
    case Kind::Sequence: {
      double v = (*this)(gamma);
      return v > 0.0 ? std::log(v) : -kInf;
    }
    case Kind::Exponential:
      return gamma * std::log(param_a_);
    case Kind::Polynomial:
      return gamma == 0 ? 0.0 : std::log(param_a_) + param_b_ * std::log(static_cast<double>(gamma));
  }
  return -kInf;
}

double BoundaryGrowth::limit_ratio() const {
  switch (kind_) {
    case Kind::Sequence: return param_a_;
    case Kind::Exponential: return param_a_;
    case Kind::Polynomial: return 1.0;
  }
  return 1.0;
}

SeriesSum weighted_series(const BoundaryGrowth& h, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidConfig("series ratio must lie in (0, 1)");
  SeriesSum out;
  // Ratio test on the limit of successive terms.
  if (h.limit_ratio() * q >= 1.0) {
    out.value = kInf;
    out.converged = false;
    return out;
  }
  if (h.kind() == BoundaryGrowth::Kind::Exponential) {
    // Geometric; sum in closed form.
    double ratio = h.limit_ratio() * q;
    out.value = 1.0 / (1.0 - ratio);
    out.terms = 0;
    return out;
  }
  // Stop only where the terms are already decreasing: past the explicit
  // values of a sequence, or past the hump of a polynomial.
  int tail_start = 0;
  if (h.kind() == BoundaryGrowth::Kind::Sequence) {
    tail_start = h.explicit_terms();
  }
  const double log_q = std::log(q);
  double sum = 0.0;
  double prev = kInf;
  for (int g = 0; g < 10000000; ++g) {
    double lv = h.log_value(g);
    double term = std::isfinite(lv) ? std::exp(g * log_q + lv) : 0.0;
    sum += term;
    out.terms = g + 1;
    if (g >= tail_start && term <= prev && term <= 1e-15 * sum) {
      out.value = sum;
      return out;
    }
    prev = term;
  }
  out.value = sum;
  out.converged = false;
  return out;
}

TightDecay decay_tight(double mu, double ell_T, double ell_S, int max_degree,
                       const BoundaryGrowth& h, double b1, double b2) {
  require_mu(mu);
  if (!(b1 > 0.0) || !(b2 > 0.0)) throw InvalidConfig("b1 and b2 must be positive");
  TightDecay d;
  d.b1 = b1;
  d.b2 = b2;
  SeriesSum a = weighted_series(h, (1.0 + b1) / (1.0 + b1 + b2));
  SeriesSum at = weighted_series(h, 1.0 / (1.0 + b1));
  d.a = a.value;
  d.a_tilde = at.value;
  d.a_finite = a.converged && std::isfinite(a.value);
  d.a_tilde_finite = at.converged && std::isfinite(at.value);
  if (!d.a_finite) d.violations.push_back("a is not finite");
  if (!d.a_tilde_finite) d.violations.push_back("a_tilde is not finite");

  const double beta = max_degree * ell_S / mu;
  const double s = std::sqrt(1.0 + beta) + 1.0;
  d.gamma_S = beta / (s * s);
  d.rho_S = (1.0 + b1 + b2) * d.gamma_S;
  d.rho_T = 4.0 * d.a_tilde * ell_T / mu;
  if (ell_T == 0.0) d.rho_T = 0.0;

  double need = std::max(8.0 * d.a_tilde * ell_T, max_degree * ell_S * (b1 + b2) / 4.0);
  if (ell_T == 0.0) need = max_degree * ell_S * (b1 + b2) / 4.0;
  d.mu_condition = mu >= need;
  if (!d.mu_condition) d.violations.push_back("mu >= max{8 a_tilde ell_T, D ell_S (b1 + b2)/4} fails");

  if (d.a_finite && d.a_tilde_finite && d.rho_T < 1.0) {
    const double shrink = 1.0 - d.rho_T;
    // beta / gamma_S = (sqrt(1 + beta) + 1)^2, also at beta = 0.
    double first = d.a * d.a / (2.0 * d.a_tilde * shrink);
    double second = 2.0 * d.a * d.a * s * s / ((1.0 + b1 + b2) * shrink);
    d.C1 = std::max(first, second);
  } else {
    d.C1 = kInf;
  }
  d.C2 = d.C1;
  return d;
}

TightDecay require_decay_tight(double mu, double ell_T, double ell_S, int max_degree,
                               const BoundaryGrowth& h, double b1, double b2) {
  TightDecay d = decay_tight(mu, ell_T, ell_S, max_degree, h, b1, b2);
  if (!d.hypotheses_hold()) {
    std::string msg = "tight decay hypotheses violated:";
    for (const auto& v : d.violations) msg += " [" + v + "]";
    throw HypothesisViolated(msg);
  }
  return d;
}

GlobalDecay decay_global(double mu, double ell_T) {
  require_mu(mu);
  GlobalDecay g;
  g.rho_G = one_minus_two_over(2.0 * ell_T / mu);
  g.C_G = 2.0 * ell_T / mu;
  g.C0 = std::max(1.0, g.C_G);
  return g;
}

LowerBoundFactors lower_bound_factors(double mu, double ell_T, double ell_S, int max_degree) {
  require_mu(mu);
  LowerBoundFactors f;
  double x = one_minus_two_over(4.0 * ell_T / mu);
  f.lambda_T = x * x;
  const double beta = max_degree * ell_S / mu;
  f.first_branch = beta / (3.0 + 3.0 * beta);
  f.lambda_S = f.first_branch;
  f.branch = LambdaBranch::First;
  if (beta >= 48.0) {
    double y = 1.0 - 4.0 * std::sqrt(3.0) / std::sqrt(beta);
    f.second_branch = y * y;
    if (*f.second_branch > f.first_branch) {
      f.lambda_S = *f.second_branch;
      f.branch = LambdaBranch::Second;
    }
  }
  f.degree_ok = max_degree >= 3;
  return f;
}

double c3(const BoundaryGrowth& h, double rho_S, int r) {
  double sum = 0.0;
  for (int g = 0; g <= r; ++g) sum += h(g) * power(rho_S, g);
  return sum;
}

DecayParams decay_params_basic(double mu, double ell_f, double ell_T, double ell_S,
                               int max_degree, const BoundaryGrowth& h) {
  BasicDecay b = decay_basic(mu, ell_T, ell_S, max_degree);
  DecayParams p;
  p.mu = mu;
  p.ell_f = ell_f;
  p.ell_T = ell_T;
  p.ell_S = ell_S;
  p.max_degree = max_degree;
  p.h = h;
  p.rho_T = b.rho_T;
  p.rho_S = b.rho_S;
  p.C1 = b.C1;
  p.global = decay_global(mu, ell_T);
  return p;
}

DecayParams decay_params_tight(double mu, double ell_f, double ell_T, double ell_S,
                               int max_degree, const BoundaryGrowth& h, double b1, double b2) {
  TightDecay t = require_decay_tight(mu, ell_T, ell_S, max_degree, h, b1, b2);
  DecayParams p = decay_params_basic(mu, ell_f, ell_T, ell_S, max_degree, h);
  p.rho_T = t.rho_T;
  p.rho_S = t.rho_S;
  p.C1 = t.C1;
  return p;
}

CrBound cr_upper_bound(const DecayParams& p, int k, int r) {
  if (k < 2 || r < 1) throw InvalidConfig("cr_upper_bound needs k >= 2 and r >= 1");
  const double rG = p.global.rho_G;
  const double C0 = p.global.C0;
  const double hr = p.h(r);
  const double C3 = c3(p.h, p.rho_S, r);
  const double sS2r = power(p.rho_S, 2 * r);
  const double sT2k = power(p.rho_T, 2 * (k - 1));
  CrBound out;
  double inner = hr * hr * rG * rG / ((1.0 - p.rho_T) * (1.0 - rG * rG * p.rho_T)) * sS2r +
                 C3 * C3 * sT2k * power(rG, 2 * k);
  out.gate = 4.0 * p.C1 * p.C1 * power(C0, 4) / ((1.0 - rG) * (1.0 - rG)) * inner;
  out.condition_met = out.gate <= 0.5;
  const double lead = 32.0 * C0 * C0 * p.C1 * p.C1 *
                      (p.ell_f + p.max_degree * p.ell_S + 2.0 * p.ell_T) /
                      (p.mu * (1.0 - rG) * (1.0 - rG));
  out.bound = 1.0 + (1.0 + lead * hr * hr / ((1.0 - p.rho_T) * (1.0 - p.rho_T))) * power(p.rho_S, r) +
              (1.0 + lead * C3 * C3) * power(p.rho_T, k - 1);
  return out;
}

double per_step_error_bound(const DecayParams& p, int k, int r, double prev_gap_sq,
                            const std::vector<double>& f_star) {
  if (static_cast<int>(f_star.size()) != k) {
    throw DimensionMismatch("per-step bound needs f(x*) for k steps");
  }
  const double rG = p.global.rho_G;
  const double C0 = p.global.C0;
  const double hr = p.h(r);
  const double C3 = c3(p.h, p.rho_S, r);
  const double sS2r = power(p.rho_S, 2 * r);
  const double sT2k = power(p.rho_T, 2 * (k - 1));
  double first = 4.0 * p.C1 * p.C1 * C0 * C0 *
                 (hr * hr * rG * rG / ((1.0 - p.rho_T) * (1.0 - rG * rG * p.rho_T)) * sS2r +
                  C3 * C3 * sT2k * power(rG, 2 * k)) *
                 prev_gap_sq;
  double weighted = 0.0;
  for (int i = 0; i < k; ++i) weighted += power(p.rho_T, i) * f_star[i];
  double second = 8.0 * p.C1 * p.C1 / p.mu *
                  (hr * hr / (1.0 - p.rho_T) * sS2r * weighted + C3 * C3 * sT2k * f_star[k - 1]);
  return first + second;
}

double error_accumulation_factor(const GlobalDecay& g) {
  return g.C0 * g.C0 / ((1.0 - g.rho_G) * (1.0 - g.rho_G));
}

PureExpDecayBound pure_exp_decay_bound(double mu, double ell_f, double ell_T, double ell_S,
                                       int max_degree, int k, int r) {
  require_mu(mu);
  if (max_degree < 1) throw InvalidConfig("pure exponential decay bound needs max degree >= 1");
  const double D = max_degree;
  PureExpDecayBound out;
  out.hypotheses_hold = ell_S / mu <= std::pow(D, -7.0) && ell_T / mu <= 1.0 / 16.0;
  TightDecay t = decay_tight(mu, ell_T, ell_S, max_degree, BoundaryGrowth::exponential(D),
                             2.0 * D - 1.0, 4.0 * D * D - 2.0 * D);
  GlobalDecay g = decay_global(mu, ell_T);
  out.rho_T = t.rho_T;
  out.rho_S = t.rho_S;
  const double C0 = g.C0;
  const double rG = g.rho_G;
  const double lead = 32.0 * C0 * C0 * t.C1 * t.C1 * (ell_f + D * ell_S + 2.0 * ell_T) /
                      (mu * (1.0 - rG) * (1.0 - rG));
  const double sq = std::sqrt(t.rho_S);
  out.bound = 1.0 + (1.0 + lead / ((1.0 - t.rho_T) * (1.0 - t.rho_T))) * std::pow(t.rho_S, 0.5 * r) +
              (1.0 + lead * D * D / ((D - sq) * (D - sq))) * power(t.rho_T, k - 1);
  return out;
}

AugmentationVerdict augmentation_relations(double mu, double ell_T, double ell_S, int max_degree) {
  BasicDecay b = decay_basic(mu, ell_T, ell_S, max_degree);
  LowerBoundFactors l = lower_bound_factors(mu, ell_T, ell_S, max_degree);
  AugmentationVerdict v;
  v.rho_T = b.rho_T;
  v.rho_S = b.rho_S;
  v.lambda_T = l.lambda_T;
  v.lambda_S = l.lambda_S;
  const double rt2 = b.rho_T * b.rho_T;
  v.temporal_lower_margin = l.lambda_T - rt2 * rt2;
  v.temporal_upper_margin = rt2 - l.lambda_T;
  v.spatial_margin = l.lambda_S - std::pow(b.rho_S, 32);
  // Equality cases (all zero) are exact; allow rounding in the last bits.
  const double tol = 1e-15;
  v.temporal_lower = v.temporal_lower_margin >= -tol;
  v.temporal_upper = v.temporal_upper_margin >= -tol;
  v.spatial = v.spatial_margin >= -tol;
  return v;
}

LaplacianFloor laplacian_decay_floor(int block_size, double ell, int kappa) {
  if (block_size < 1) throw InvalidConfig("block size must be at least 1");
  if (ell < 0.0) throw InvalidConfig("ell must be nonnegative");
  if (kappa < 3) throw DistanceTooSmall(-1, -1, kappa);
  const double d = block_size;
  const double scale = d * d * (2.0 * d * ell + 1.0);
  LaplacianFloor f;
  f.kappa = kappa;
  f.block_size = block_size;
  f.first_claim = kappa / scale * power(d * ell / (2.0 * d * ell + 1.0), kappa);
  if (ell > 16.0 / d) {
    const double root = std::sqrt(d * ell);
    f.second_claim = 1.0 / (4.0 * std::sqrt(std::numbers::pi * kappa * root) * scale) *
                     power(1.0 - 4.0 / root, kappa);
  }
  return f;
}

LaplacianFloor laplacian_decay_floor(const Network& ring, double ell, int i, int j) {
  int kappa = ring.distance(i, j);
  if (kappa < 3 || kappa == Network::kUnreachable) throw DistanceTooSmall(i, j, kappa);
  if (ring.max_degree() % 2 != 0 || ring.max_degree() != ring.min_degree()) {
    throw InvalidGraph("Laplacian floor expects a ring of blocks (regular of even degree)");
  }
  return laplacian_decay_floor(ring.max_degree() / 2, ell, kappa);
}

}  // namespace netoco
