#pragma once

#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace netoco {

// minimize 0.5 z'Qz + q'z + constant  subject to  lower <= z <= upper.
// Q is stored as a full symmetric sparse matrix.
struct BoxQp {
  Eigen::SparseMatrix<double> Q;
  Eigen::VectorXd q;
  double constant = 0.0;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int size() const { return static_cast<int>(q.size()); }
  double objective(const Eigen::VectorXd& z) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& z) const;
  Eigen::VectorXd project(const Eigen::VectorXd& z) const;
};

enum class Backend { ActiveSet, ProjectedGradient };

enum class QpMethod { Direct, ActiveSet, ProjectedGradient };

std::string to_string(Backend b);
std::string to_string(QpMethod m);
Backend backend_from_string(const std::string& s);

struct SolverSettings {
  Backend backend = Backend::ActiveSet;
  double tolerance = 1e-9;
  int max_iterations = 200000;
};

struct QpResult {
  Eigen::VectorXd z;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  QpMethod method = QpMethod::Direct;
};

// ||z - Proj(z - grad)||_2
double kkt_residual(const BoxQp& qp, const Eigen::VectorXd& z);

// Requires Q positive definite on the free variables. Throws SolverDiverged
// when the residual cannot be driven below settings.tolerance.
QpResult solve_box_qp(const BoxQp& qp, const SolverSettings& settings);

// Accelerated projected gradient with adaptive restart; works for
// positive semidefinite Q. Does not throw on non-convergence.
QpResult projected_gradient(const BoxQp& qp, const Eigen::VectorXd& start, double tolerance,
                            int max_iterations);

}  // namespace netoco
