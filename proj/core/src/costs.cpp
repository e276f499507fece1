#include "netoco/costs.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "netoco/error.hpp"

namespace netoco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& M, const char* what) {
  if (M.rows() != M.cols()) throw DimensionMismatch(std::string(what) + " must be square");
  if (!M.allFinite()) throw InvalidConfig(std::string(what) + " has non-finite entries");
  double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidConfig(std::string(what) + " must be symmetric");
  }
  return 0.5 * (M + M.transpose());
}

std::pair<double, double> spectrum(const Eigen::MatrixXd& M) {
  if (M.rows() == 0) return {0.0, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double slack(double bound) { return kCertifyTolerance * std::max(1.0, std::abs(bound)); }

BoxQp dense_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, double c,
               const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  BoxQp qp;
  qp.Q = H.sparseView();
  qp.q = g;
  qp.constant = c;
  qp.lower = lower;
  qp.upper = upper;
  return qp;
}

// Minimum of a convex quadratic over R^m: -inf unless g lies in range(H).
double global_minimum(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, double c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  const auto& lam = es.eigenvalues();
  Eigen::VectorXd proj = es.eigenvectors().transpose() * g;
  double cutoff = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  double value = c;
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] > cutoff) {
      value -= 0.5 * proj[i] * proj[i] / lam[i];
    } else if (std::abs(proj[i]) > 1e-9 * (1.0 + g.norm())) {
      return -kInf;
    }
  }
  return value;
}

}  // namespace

Box::Box(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw DimensionMismatch("box bounds differ in size");
  for (int i = 0; i < lower_.size(); ++i) {
    if (std::isnan(lower_[i]) || std::isnan(upper_[i])) throw InvalidConfig("box bound is NaN");
    if (!(lower_[i] < upper_[i])) {
      std::ostringstream os;
      os << "box coordinate " << i << " has empty interior [" << lower_[i] << ", " << upper_[i]
         << "]";
      throw InvalidConfig(os.str());
    }
  }
}

Box Box::unbounded(int n) {
  return Box(Eigen::VectorXd::Constant(n, -kInf), Eigen::VectorXd::Constant(n, kInf));
}

Box Box::uniform(int n, double lower, double upper) {
  return Box(Eigen::VectorXd::Constant(n, lower), Eigen::VectorXd::Constant(n, upper));
}

bool Box::bounded() const { return lower_.allFinite() && upper_.allFinite(); }

bool Box::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
  }
  return true;
}

Eigen::VectorXd Box::clamp(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

NodeCost::NodeCost(Eigen::MatrixXd A, Eigen::VectorXd b, double c)
    : A_(symmetrized(A, "node cost Hessian")), b_(std::move(b)), c_(c) {
  if (b_.size() != A_.rows()) throw DimensionMismatch("node cost linear term size");
  if (!b_.allFinite() || !std::isfinite(c_)) throw InvalidConfig("node cost is not finite");
}

NodeCost NodeCost::centered(const Eigen::MatrixXd& A, const Eigen::VectorXd& center,
                            double offset) {
  Eigen::VectorXd b = -(A * center);
  double c = 0.5 * center.dot(A * center) + offset;
  return NodeCost(A, b, c);
}

NodeCost NodeCost::isotropic(int n, double mu) {
  return NodeCost(mu * Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n), 0.0);
}

double NodeCost::value(const Eigen::VectorXd& x) const {
  return 0.5 * x.dot(A_ * x) + b_.dot(x) + c_;
}

Eigen::VectorXd NodeCost::gradient(const Eigen::VectorXd& x) const { return A_ * x + b_; }

PairCost::PairCost(Eigen::MatrixXd H, Eigen::VectorXd g, double c)
    : H_(symmetrized(H, "pair cost Hessian")), g_(std::move(g)), c_(c) {
  if (H_.rows() % 2 != 0) throw DimensionMismatch("pair cost Hessian must be 2n x 2n");
  if (g_.size() != H_.rows()) throw DimensionMismatch("pair cost linear term size");
  if (!g_.allFinite() || !std::isfinite(c_)) throw InvalidConfig("pair cost is not finite");
}

PairCost PairCost::zero(int n) {
  return PairCost(Eigen::MatrixXd::Zero(2 * n, 2 * n), Eigen::VectorXd::Zero(2 * n), 0.0);
}

PairCost PairCost::difference(const Eigen::MatrixXd& W) {
  const auto n = W.rows();
  Eigen::MatrixXd H(2 * n, 2 * n);
  H << W, -W, -W, W;
  return PairCost(H, Eigen::VectorXd::Zero(2 * n), 0.0);
}

PairCost PairCost::squared_combination(int n, double weight, double sign) {
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd H(2 * n, 2 * n);
  H << I, sign * I, sign * I, sign * sign * I;
  return PairCost(2.0 * weight * H, Eigen::VectorXd::Zero(2 * n), 0.0);
}

double PairCost::value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd w(2 * dim());
  w << x, y;
  return 0.5 * w.dot(H_ * w) + g_.dot(w) + c_;
}

Eigen::VectorXd PairCost::gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd w(2 * dim());
  w << x, y;
  return H_ * w + g_;
}

bool PairCost::is_zero() const {
  return H_.isZero(0.0) && g_.isZero(0.0) && c_ == 0.0;
}

Certification inspect(const NodeCost& f, const Box& box, double mu, double ell) {
  if (box.dim() != f.dim()) throw DimensionMismatch("node cost and box dimensions differ");
  Certification rep;
  std::tie(rep.min_eigenvalue, rep.max_eigenvalue) = spectrum(f.hessian());
  rep.strongly_convex = mu > 0.0 && rep.min_eigenvalue >= mu - slack(mu);
  rep.smooth = rep.max_eigenvalue <= ell + slack(ell);
  rep.min_global = rep.min_eigenvalue > 0.0
                       ? global_minimum(f.hessian(), f.linear(), f.constant())
                       : -kInf;
  if (rep.min_eigenvalue > 0.0) {
    rep.min_over_box = f.value(node_minimizer(f, box));
  } else {
    BoxQp qp = dense_qp(f.hessian(), f.linear(), f.constant(), box.lower(), box.upper());
    rep.min_over_box = projected_gradient(qp, box.clamp(Eigen::VectorXd::Zero(f.dim())), 1e-10,
                                          100000)
                           .objective;
  }
  rep.nonnegative_on_box = rep.min_over_box >= -kCertifyTolerance;
  rep.nonnegative_globally = rep.min_global >= -kCertifyTolerance;
  return rep;
}

Certification inspect(const PairCost& s, const Box& x_box, const Box& y_box, double ell) {
  const int n = s.dim();
  if (x_box.dim() != n || y_box.dim() != n) {
    throw DimensionMismatch("pair cost and box dimensions differ");
  }
  Certification rep;
  std::tie(rep.min_eigenvalue, rep.max_eigenvalue) = spectrum(s.hessian());
  rep.strongly_convex = rep.min_eigenvalue >= -slack(rep.max_eigenvalue);
  rep.smooth = rep.max_eigenvalue <= ell + slack(ell);
  rep.min_global = rep.strongly_convex ? global_minimum(s.hessian(), s.linear(), s.constant())
                                       : -kInf;
  if (rep.min_global >= -kCertifyTolerance) {
    // Already nonnegative everywhere; locate the box minimum for the report.
    Eigen::VectorXd lo(2 * n), hi(2 * n);
    lo << x_box.lower(), y_box.lower();
    hi << x_box.upper(), y_box.upper();
    BoxQp qp = dense_qp(s.hessian(), s.linear(), s.constant(), lo, hi);
    double pg = projected_gradient(qp, qp.project(Eigen::VectorXd::Zero(2 * n)), 1e-10, 20000)
                    .objective;
    rep.min_over_box = std::max(pg, rep.min_global);
  } else if (rep.strongly_convex) {
    Eigen::VectorXd lo(2 * n), hi(2 * n);
    lo << x_box.lower(), y_box.lower();
    hi << x_box.upper(), y_box.upper();
    BoxQp qp = dense_qp(s.hessian(), s.linear(), s.constant(), lo, hi);
    auto res = projected_gradient(qp, qp.project(Eigen::VectorXd::Zero(2 * n)), 1e-10, 100000);
    rep.min_over_box = (res.objective < -1e12 || !std::isfinite(res.objective)) ? -kInf
                                                                                 : res.objective;
  } else {
    rep.min_over_box = -kInf;
  }
  rep.nonnegative_on_box = rep.min_over_box >= -kCertifyTolerance;
  rep.nonnegative_globally = rep.min_global >= -kCertifyTolerance;
  return rep;
}

Certification certify(const NodeCost& f, const Box& box, double mu, double ell,
                      const std::string& label) {
  Certification rep = inspect(f, box, mu, ell);
  std::ostringstream os;
  os.precision(12);
  if (!rep.strongly_convex) {
    os << label << " is not " << mu << "-strongly convex: smallest Hessian eigenvalue "
       << rep.min_eigenvalue;
    throw NotStronglyConvex(os.str());
  }
  if (!rep.smooth) {
    os << label << " is not " << ell << "-smooth: largest Hessian eigenvalue "
       << rep.max_eigenvalue;
    throw NotSmooth(os.str());
  }
  if (!rep.nonnegative_on_box) {
    os << label << " is negative on its feasible box: minimum " << rep.min_over_box;
    throw NegativeCost(os.str());
  }
  return rep;
}

Certification certify(const PairCost& s, const Box& x_box, const Box& y_box, double ell,
                      const std::string& label) {
  Certification rep = inspect(s, x_box, y_box, ell);
  std::ostringstream os;
  os.precision(12);
  if (!rep.strongly_convex) {
    os << label << " is not convex: smallest Hessian eigenvalue " << rep.min_eigenvalue;
    throw NotStronglyConvex(os.str());
  }
  if (!rep.smooth) {
    os << label << " is not " << ell << "-smooth: largest Hessian eigenvalue "
       << rep.max_eigenvalue;
    throw NotSmooth(os.str());
  }
  if (!rep.nonnegative_on_box) {
    os << label << " is negative on its feasible box: minimum " << rep.min_over_box;
    throw NegativeCost(os.str());
  }
  return rep;
}

Eigen::VectorXd node_minimizer(const NodeCost& f, const Box& box, const SolverSettings& settings) {
  if (box.dim() != f.dim()) throw DimensionMismatch("node cost and box dimensions differ");
  BoxQp qp = dense_qp(f.hessian(), f.linear(), f.constant(), box.lower(), box.upper());
  SolverSettings s = settings;
  s.tolerance = std::min(s.tolerance, 1e-10);
  return solve_box_qp(qp, s).z;
}

}  // namespace netoco
