#include "netoco/qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/SparseCholesky>

#include "netoco/error.hpp"

namespace netoco {

double BoxQp::objective(const Eigen::VectorXd& z) const {
  return 0.5 * z.dot(Q * z) + q.dot(z) + constant;
}

Eigen::VectorXd BoxQp::gradient(const Eigen::VectorXd& z) const { return Q * z + q; }

Eigen::VectorXd BoxQp::project(const Eigen::VectorXd& z) const {
  return z.cwiseMax(lower).cwiseMin(upper);
}

std::string to_string(Backend b) {
  return b == Backend::ActiveSet ? "active-set" : "projected-gradient";
}

std::string to_string(QpMethod m) {
  switch (m) {
    case QpMethod::Direct: return "direct";
    case QpMethod::ActiveSet: return "active-set";
    case QpMethod::ProjectedGradient: return "projected-gradient";
  }
  return "unknown";
}

Backend backend_from_string(const std::string& s) {
  if (s == "active-set" || s == "direct") return Backend::ActiveSet;
  if (s == "projected-gradient") return Backend::ProjectedGradient;
  throw InvalidConfig("unknown solver backend '" + s + "'");
}

double kkt_residual(const BoxQp& qp, const Eigen::VectorXd& z) {
  if (qp.size() == 0) return 0.0;
  return (z - qp.project(z - qp.gradient(z))).norm();
}

namespace {

enum Status : char { kFree = 0, kLower = 1, kUpper = 2 };

// Solves the equality-pinned system on the free index set; variables
// marked kLower/kUpper are fixed at their bounds. Returns false if the
// reduced matrix is not positive definite.
bool solve_reduced(const BoxQp& qp, const std::vector<char>& status, Eigen::VectorXd& z) {
  const int m = qp.size();
  std::vector<int> free_index(m, -1);
  int nf = 0;
  for (int i = 0; i < m; ++i) {
    if (status[i] == kLower) z[i] = qp.lower[i];
    if (status[i] == kUpper) z[i] = qp.upper[i];
    if (status[i] == kFree) free_index[i] = nf++;
  }
  if (nf == 0) return true;

  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
  for (int i = 0; i < m; ++i) {
    if (free_index[i] >= 0) rhs[free_index[i]] = -qp.q[i];
  }
  for (int col = 0; col < qp.Q.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(qp.Q, col); it; ++it) {
      int row = static_cast<int>(it.row());
      if (free_index[row] < 0) continue;
      if (free_index[col] >= 0) {
        triplets.emplace_back(free_index[row], free_index[col], it.value());
      } else {
        rhs[free_index[row]] -= it.value() * z[col];
      }
    }
  }
  Eigen::SparseMatrix<double> reduced(nf, nf);
  reduced.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(reduced);
  if (llt.info() != Eigen::Success) return false;
  Eigen::VectorXd sol = llt.solve(rhs);
  if (llt.info() != Eigen::Success || !sol.allFinite()) return false;
  for (int i = 0; i < m; ++i) {
    if (free_index[i] >= 0) z[i] = sol[free_index[i]];
  }
  return true;
}

bool feasible(const BoxQp& qp, const Eigen::VectorXd& z) {
  for (int i = 0; i < qp.size(); ++i) {
    if (z[i] < qp.lower[i] || z[i] > qp.upper[i]) return false;
  }
  return true;
}

// Primal-dual active set (Hintermueller-Ito-Kunisch). Fast on the well
// conditioned problems here; may cycle, in which case we fall back.
bool primal_dual_active_set(const BoxQp& qp, Eigen::VectorXd& z, int& iterations) {
  const int m = qp.size();
  std::vector<char> status(m, kFree);
  for (int i = 0; i < m; ++i) {
    if (z[i] <= qp.lower[i]) status[i] = kLower;
    if (z[i] >= qp.upper[i]) status[i] = kUpper;
  }
  const int cap = 20 + 2 * m;
  for (int it = 0; it < cap; ++it) {
    ++iterations;
    if (!solve_reduced(qp, status, z)) return false;
    Eigen::VectorXd g = qp.gradient(z);
    bool changed = false;
    for (int i = 0; i < m; ++i) {
      char next = status[i];
      if (status[i] == kFree) {
        if (z[i] < qp.lower[i]) next = kLower;
        else if (z[i] > qp.upper[i]) next = kUpper;
      } else if (status[i] == kLower && g[i] < 0.0) {
        next = kFree;
      } else if (status[i] == kUpper && g[i] > 0.0) {
        next = kFree;
      }
      if (next != status[i]) {
        status[i] = next;
        changed = true;
      }
    }
    if (!changed) return true;
  }
  return false;
}

// Classical primal active set from a feasible start; finite termination.
bool primal_active_set(const BoxQp& qp, Eigen::VectorXd& z, int& iterations) {
  const int m = qp.size();
  z = qp.project(z);
  std::vector<char> status(m, kFree);
  for (int i = 0; i < m; ++i) {
    if (z[i] == qp.lower[i]) status[i] = kLower;
    else if (z[i] == qp.upper[i]) status[i] = kUpper;
  }
  const int cap = 50 + 20 * m;
  for (int it = 0; it < cap; ++it) {
    ++iterations;
    Eigen::VectorXd target = z;
    if (!solve_reduced(qp, status, target)) return false;
    Eigen::VectorXd step = target - z;
    if (step.norm() <= 1e-14 * (1.0 + z.norm())) {
      Eigen::VectorXd g = qp.gradient(z);
      int worst = -1;
      double worst_mult = 0.0;
      for (int i = 0; i < m; ++i) {
        double mult = status[i] == kLower ? g[i] : status[i] == kUpper ? -g[i] : 0.0;
        if (mult < worst_mult) {
          worst_mult = mult;
          worst = i;
        }
      }
      if (worst < 0) return true;
      status[worst] = kFree;
      continue;
    }
    double alpha = 1.0;
    int blocking = -1;
    char blocking_status = kFree;
    for (int i = 0; i < m; ++i) {
      if (status[i] != kFree) continue;
      if (step[i] < 0.0 && std::isfinite(qp.lower[i])) {
        double a = (qp.lower[i] - z[i]) / step[i];
        if (a < alpha) {
          alpha = a;
          blocking = i;
          blocking_status = kLower;
        }
      } else if (step[i] > 0.0 && std::isfinite(qp.upper[i])) {
        double a = (qp.upper[i] - z[i]) / step[i];
        if (a < alpha) {
          alpha = a;
          blocking = i;
          blocking_status = kUpper;
        }
      }
    }
    z += std::max(alpha, 0.0) * step;
    if (blocking >= 0) {
      status[blocking] = blocking_status;
      z[blocking] = blocking_status == kLower ? qp.lower[blocking] : qp.upper[blocking];
    }
    z = qp.project(z);
  }
  return false;
}

double gershgorin_bound(const Eigen::SparseMatrix<double>& Q) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(Q.rows());
  for (int col = 0; col < Q.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(Q, col); it; ++it) {
      row_sums[it.row()] += std::abs(it.value());
    }
  }
  return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

}  // namespace

QpResult projected_gradient(const BoxQp& qp, const Eigen::VectorXd& start, double tolerance,
                            int max_iterations) {
  QpResult res;
  res.method = QpMethod::ProjectedGradient;
  res.z = qp.project(start);
  if (qp.size() == 0) {
    res.objective = qp.constant;
    return res;
  }
  double L = gershgorin_bound(qp.Q);
  if (L <= 0.0) L = 1.0;
  const double step = 1.0 / L;
  Eigen::VectorXd x = res.z;
  Eigen::VectorXd y = x;
  double theta = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it + 1;
    Eigen::VectorXd x_next = qp.project(y - step * qp.gradient(y));
    double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    // Restart momentum when it points uphill.
    if ((y - x_next).dot(x_next - x) > 0.0) {
      theta_next = 1.0;
      y = x_next;
    } else {
      y = x_next + ((theta - 1.0) / theta_next) * (x_next - x);
    }
    x = std::move(x_next);
    theta = theta_next;
    if ((it & 15) == 15 || it + 1 == max_iterations) {
      if (!x.allFinite()) break;
      if (kkt_residual(qp, x) <= tolerance) break;
    }
  }
  res.z = x;
  res.objective = qp.objective(x);
  res.kkt_residual = kkt_residual(qp, x);
  return res;
}

QpResult solve_box_qp(const BoxQp& qp, const SolverSettings& settings) {
  QpResult res;
  const int m = qp.size();
  if (m == 0) {
    res.z = Eigen::VectorXd();
    res.objective = qp.constant;
    return res;
  }
  if (settings.backend == Backend::ActiveSet) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
    std::vector<char> none(m, kFree);
    int iterations = 1;
    bool ok = solve_reduced(qp, none, z);
    if (ok && feasible(qp, z)) {
      res.method = QpMethod::Direct;
    } else {
      if (!ok) z = qp.project(Eigen::VectorXd::Zero(m));
      res.method = QpMethod::ActiveSet;
      Eigen::VectorXd start = z;
      ok = primal_dual_active_set(qp, z, iterations);
      if (!ok || !feasible(qp, z)) {
        z = qp.project(start);
        ok = primal_active_set(qp, z, iterations);
      }
    }
    res.z = qp.project(z);
    res.iterations = iterations;
    res.kkt_residual = kkt_residual(qp, res.z);
    if (res.kkt_residual <= settings.tolerance) {
      res.objective = qp.objective(res.z);
      return res;
    }
    QpResult polished = projected_gradient(qp, res.z, settings.tolerance, settings.max_iterations);
    polished.iterations += iterations;
    res = std::move(polished);
  } else {
    res = projected_gradient(qp, qp.project(Eigen::VectorXd::Zero(m)), settings.tolerance,
                             settings.max_iterations);
  }
  if (!(res.kkt_residual <= settings.tolerance)) {
    throw SolverDiverged("box QP residual " + std::to_string(res.kkt_residual) +
                         " above tolerance after " + std::to_string(res.iterations) +
                         " iterations");
  }
  return res;
}

}  // namespace netoco
