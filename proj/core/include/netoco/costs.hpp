#pragma once

#include <string>

#include <Eigen/Dense>

#include "netoco/qp.hpp"

namespace netoco {

// Per-coordinate bounds; either side may be infinite.
class Box {
 public:
  Box() = default;
  Box(Eigen::VectorXd lower, Eigen::VectorXd upper);
  static Box unbounded(int n);
  static Box uniform(int n, double lower, double upper);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  bool bounded() const;
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

// 0.5 x'Ax + b'x + c on R^n.
class NodeCost {
 public:
  NodeCost() = default;
  NodeCost(Eigen::MatrixXd A, Eigen::VectorXd b, double c);
  // 0.5 (x - center)' A (x - center) + offset
  static NodeCost centered(const Eigen::MatrixXd& A, const Eigen::VectorXd& center,
                           double offset = 0.0);
  // (mu/2)||x||^2, the cost used beyond the horizon.
  static NodeCost isotropic(int n, double mu);

  int dim() const { return static_cast<int>(b_.size()); }
  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  const Eigen::MatrixXd& hessian() const { return A_; }
  const Eigen::VectorXd& linear() const { return b_; }
  double constant() const { return c_; }

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double c_ = 0.0;
};

// 0.5 w'Hw + g'w + c with w = (x, y) in R^n x R^n.
// Temporal costs take (x_t, x_{t-1}); spatial costs take (x^u, x^v), u < v.
class PairCost {
 public:
  PairCost() = default;
  PairCost(Eigen::MatrixXd H, Eigen::VectorXd g, double c);
  static PairCost zero(int n);
  // 0.5 (x - y)' W (x - y)
  static PairCost difference(const Eigen::MatrixXd& W);
  // weight * ||x + sign * y||^2
  static PairCost squared_combination(int n, double weight, double sign);

  int dim() const { return static_cast<int>(g_.size() / 2); }
  double value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  // Gradient with respect to (x, y), length 2n.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  const Eigen::MatrixXd& hessian() const { return H_; }
  const Eigen::VectorXd& linear() const { return g_; }
  double constant() const { return c_; }
  bool is_zero() const;

  auto hxx() const { return H_.topLeftCorner(dim(), dim()); }
  auto hxy() const { return H_.topRightCorner(dim(), dim()); }
  auto hyx() const { return H_.bottomLeftCorner(dim(), dim()); }
  auto hyy() const { return H_.bottomRightCorner(dim(), dim()); }
  auto gx() const { return g_.head(dim()); }
  auto gy() const { return g_.tail(dim()); }

 private:
  Eigen::MatrixXd H_;
  Eigen::VectorXd g_;
  double c_ = 0.0;
};

struct Certification {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double min_over_box = 0.0;  // -inf when unbounded below
  double min_global = 0.0;    // -inf when unbounded below
  bool strongly_convex = true;
  bool smooth = true;
  bool nonnegative_on_box = true;
  bool nonnegative_globally = true;
  bool accepted() const { return strongly_convex && smooth && nonnegative_on_box; }
};

constexpr double kCertifyTolerance = 1e-9;

// Inspection never throws; certify_* throws NotStronglyConvex, NotSmooth
// or NegativeCost on the first violated clause.
Certification inspect(const NodeCost& f, const Box& box, double mu, double ell);
Certification inspect(const PairCost& s, const Box& x_box, const Box& y_box, double ell);
Certification certify(const NodeCost& f, const Box& box, double mu, double ell,
                      const std::string& label = "node cost");
Certification certify(const PairCost& s, const Box& x_box, const Box& y_box, double ell,
                      const std::string& label = "pair cost");

// Unique minimizer of a strongly convex node cost over a box.
Eigen::VectorXd node_minimizer(const NodeCost& f, const Box& box,
                               const SolverSettings& settings = {});

}  // namespace netoco
