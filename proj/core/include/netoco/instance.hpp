#pragma once

#include <vector>

#include <Eigen/Dense>

#include "netoco/costs.hpp"
#include "netoco/graph.hpp"

namespace netoco {

// One action per vertex.
using GlobalAction = std::vector<Eigen::VectorXd>;

struct Constants {
  double mu = 1.0;
  double ell_f = 1.0;
  double ell_T = 0.0;
  double ell_S = 0.0;
};

// Raw instance description. Indices: node/temporal/boxes are [t-1][v],
// spatial is [t-1][e] for t = 1..H.
struct InstanceData {
  Network net;
  int horizon = 0;
  int dim = 1;
  GlobalAction x0;
  std::vector<std::vector<NodeCost>> node;
  std::vector<std::vector<PairCost>> temporal;
  std::vector<std::vector<PairCost>> spatial;
  std::vector<std::vector<Box>> boxes;
  Constants constants;
};

struct InstanceCertification {
  double min_node_eigenvalue = 0.0;
  double max_node_eigenvalue = 0.0;
  double max_temporal_eigenvalue = 0.0;
  double max_spatial_eigenvalue = 0.0;
  double min_cost_over_boxes = 0.0;
  bool nonnegative_globally = true;
};

// Certified, immutable problem instance. Times beyond the horizon follow
// the extension convention: f = (mu/2)||x||^2, c = s = 0, box = R^n.
class Instance {
 public:
  explicit Instance(InstanceData data);

  const InstanceData& data() const { return data_; }
  const Network& network() const { return data_.net; }
  int horizon() const { return data_.horizon; }
  int dim() const { return data_.dim; }
  int vertex_count() const { return data_.net.vertex_count(); }
  const Constants& constants() const { return data_.constants; }
  const GlobalAction& x0() const { return data_.x0; }
  const InstanceCertification& certification() const { return certification_; }

  // t >= 1; t > H yields the extension.
  const NodeCost& node_cost(int t, int v) const;
  const PairCost& temporal_cost(int t, int v) const;
  const PairCost& spatial_cost(int t, int e) const;
  const Box& box(int t, int v) const;
  // Box of the action at time t for t >= 0; time 0 is unconstrained.
  const Box& action_box(int t, int v) const;
  const Eigen::VectorXd& theta(int t, int v) const;

  // f_t(x) = sum_v f_t^v + sum_e s_t^e
  double hitting_cost(int t, const GlobalAction& x) const;
  // c_t(x, prev) = sum_v c_t^v(x^v, prev^v)
  double switching_cost(int t, const GlobalAction& x, const GlobalAction& prev) const;

  // True when every temporal and spatial cost is identically zero.
  bool decoupled() const;

 private:
  void check_time(int t) const;

  InstanceData data_;
  std::vector<std::vector<Eigen::VectorXd>> theta_;
  InstanceCertification certification_;
  NodeCost extension_node_;
  PairCost zero_pair_;
  Box free_box_;
  Eigen::VectorXd zero_;
};

GlobalAction zero_action(int vertices, int dim);

}  // namespace netoco
