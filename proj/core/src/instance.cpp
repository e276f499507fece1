#include "netoco/instance.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "netoco/error.hpp"

namespace netoco {

namespace {

std::string at(int t, int v) {
  return "(t=" + std::to_string(t) + ", v=" + std::to_string(v) + ")";
}

}  // namespace

GlobalAction zero_action(int vertices, int dim) {
  return GlobalAction(vertices, Eigen::VectorXd::Zero(dim));
}

Instance::Instance(InstanceData data) : data_(std::move(data)) {
  const int H = data_.horizon;
  const int V = data_.net.vertex_count();
  const int E = data_.net.edge_count();
  const int n = data_.dim;
  const Constants& k = data_.constants;
  if (H < 1) throw InvalidConfig("horizon must be at least 1");
  if (n < 1) throw InvalidConfig("action dimension must be at least 1");
  if (!(k.mu > 0.0)) throw InvalidConfig("mu must be positive");
  if (k.ell_f < k.mu) throw InvalidConfig("ell_f must be at least mu");
  if (k.ell_T < 0.0 || k.ell_S < 0.0) throw InvalidConfig("ell_T and ell_S must be nonnegative");

  auto check_rows = [&](const auto& rows, int width, const char* what) {
    if (static_cast<int>(rows.size()) != H) {
      throw DimensionMismatch(std::string(what) + " must have H rows");
    }
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != width) {
        throw DimensionMismatch(std::string(what) + " row has wrong length");
      }
    }
  };
  check_rows(data_.node, V, "node costs");
  check_rows(data_.temporal, V, "temporal costs");
  check_rows(data_.spatial, E, "spatial costs");
  check_rows(data_.boxes, V, "boxes");
  if (static_cast<int>(data_.x0.size()) != V) throw DimensionMismatch("x0 must cover every vertex");
  for (const auto& x : data_.x0) {
    if (x.size() != n) throw DimensionMismatch("x0 entry has wrong dimension");
  }

  extension_node_ = NodeCost::isotropic(n, k.mu);
  zero_pair_ = PairCost::zero(n);
  free_box_ = Box::unbounded(n);
  zero_ = Eigen::VectorXd::Zero(n);

  auto& cert = certification_;
  cert.min_node_eigenvalue = std::numeric_limits<double>::infinity();
  cert.min_cost_over_boxes = std::numeric_limits<double>::infinity();
  theta_.assign(H, std::vector<Eigen::VectorXd>(V));
  for (int t = 1; t <= H; ++t) {
    for (int v = 0; v < V; ++v) {
      const Box& b = data_.boxes[t - 1][v];
      if (b.dim() != n) throw DimensionMismatch("box at " + at(t, v) + " has wrong dimension");
      const NodeCost& f = data_.node[t - 1][v];
      if (f.dim() != n) throw DimensionMismatch("node cost at " + at(t, v) + " has wrong dimension");
      Certification c = certify(f, b, k.mu, k.ell_f, "node cost at " + at(t, v));
      cert.min_node_eigenvalue = std::min(cert.min_node_eigenvalue, c.min_eigenvalue);
      cert.max_node_eigenvalue = std::max(cert.max_node_eigenvalue, c.max_eigenvalue);
      cert.min_cost_over_boxes = std::min(cert.min_cost_over_boxes, c.min_over_box);
      cert.nonnegative_globally = cert.nonnegative_globally && c.nonnegative_globally;
      theta_[t - 1][v] = node_minimizer(f, b);

      const PairCost& tc = data_.temporal[t - 1][v];
      if (tc.dim() != n) throw DimensionMismatch("temporal cost at " + at(t, v) + " has wrong dimension");
      const Box& prev_box = t == 1 ? free_box_ : data_.boxes[t - 2][v];
      c = certify(tc, b, prev_box, k.ell_T, "temporal cost at " + at(t, v));
      cert.max_temporal_eigenvalue = std::max(cert.max_temporal_eigenvalue, c.max_eigenvalue);
      cert.min_cost_over_boxes = std::min(cert.min_cost_over_boxes, c.min_over_box);
      cert.nonnegative_globally = cert.nonnegative_globally && c.nonnegative_globally;
    }
    for (int e = 0; e < E; ++e) {
      const PairCost& s = data_.spatial[t - 1][e];
      if (s.dim() != n) throw DimensionMismatch("spatial cost has wrong dimension");
      const Edge& ed = data_.net.edge(e);
      Certification c = certify(s, data_.boxes[t - 1][ed.u], data_.boxes[t - 1][ed.v], k.ell_S,
                                "spatial cost at (t=" + std::to_string(t) + ", edge " +
                                    std::to_string(ed.u) + "-" + std::to_string(ed.v) + ")");
      cert.max_spatial_eigenvalue = std::max(cert.max_spatial_eigenvalue, c.max_eigenvalue);
      cert.min_cost_over_boxes = std::min(cert.min_cost_over_boxes, c.min_over_box);
      cert.nonnegative_globally = cert.nonnegative_globally && c.nonnegative_globally;
    }
  }
}

void Instance::check_time(int t) const {
  if (t < 1) throw InvalidConfig("time index must be at least 1, got " + std::to_string(t));
}

const NodeCost& Instance::node_cost(int t, int v) const {
  check_time(t);
  data_.net.check_vertex(v);
  return t > horizon() ? extension_node_ : data_.node[t - 1][v];
}

const PairCost& Instance::temporal_cost(int t, int v) const {
  check_time(t);
  data_.net.check_vertex(v);
  return t > horizon() ? zero_pair_ : data_.temporal[t - 1][v];
}

const PairCost& Instance::spatial_cost(int t, int e) const {
  check_time(t);
  if (e < 0 || e >= data_.net.edge_count()) throw InvalidConfig("edge index out of range");
  return t > horizon() ? zero_pair_ : data_.spatial[t - 1][e];
}

const Box& Instance::box(int t, int v) const {
  check_time(t);
  data_.net.check_vertex(v);
  return t > horizon() ? free_box_ : data_.boxes[t - 1][v];
}

const Box& Instance::action_box(int t, int v) const {
  return t == 0 ? free_box_ : box(t, v);
}

const Eigen::VectorXd& Instance::theta(int t, int v) const {
  check_time(t);
  data_.net.check_vertex(v);
  return t > horizon() ? zero_ : theta_[t - 1][v];
}

double Instance::hitting_cost(int t, const GlobalAction& x) const {
  double total = 0.0;
  for (int v = 0; v < vertex_count(); ++v) total += node_cost(t, v).value(x[v]);
  if (t <= horizon()) {
    const auto& edges = data_.net.edges();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      total += data_.spatial[t - 1][e].value(x[edges[e].u], x[edges[e].v]);
    }
  }
  return total;
}

double Instance::switching_cost(int t, const GlobalAction& x, const GlobalAction& prev) const {
  if (t > horizon()) return 0.0;
  double total = 0.0;
  for (int v = 0; v < vertex_count(); ++v) total += data_.temporal[t - 1][v].value(x[v], prev[v]);
  return total;
}

bool Instance::decoupled() const {
  for (const auto& row : data_.temporal) {
    for (const auto& c : row) {
      if (!c.is_zero()) return false;
    }
  }
  for (const auto& row : data_.spatial) {
    for (const auto& s : row) {
      if (!s.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace netoco
