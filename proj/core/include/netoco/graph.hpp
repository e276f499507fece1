#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace netoco {

struct Edge {
  int u;
  int v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected, unweighted agent graph with dense vertex ids 0..n-1.
// Edges are stored normalized (u < v) and sorted; hop distances are
// precomputed by BFS from every source.
class Network {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  Network() = default;
  Network(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<int>& neighbors(int v) const;
  // Edge index of {u, v}, or -1.
  int edge_index(int u, int v) const;

  int distance(int u, int v) const;
  int degree(int v) const;
  int max_degree() const { return max_degree_; }
  int min_degree() const;
  int eccentricity(int v) const;
  // Largest finite distance; 0 for a single vertex.
  int diameter() const { return diameter_; }
  bool connected() const;

  // N_v^r, sorted. Empty for r < 0.
  std::vector<int> neighborhood(int v, int r) const;
  // Vertices at distance exactly r, sorted.
  std::vector<int> boundary(int v, int r) const;
  // h(0..r_max), h(g) = max_v |boundary(v, g)|.
  std::vector<int> boundary_growth(int r_max) const;
  // Indices of edges with both endpoints in the sorted set S.
  std::vector<int> edges_within(const std::vector<int>& sorted_vertices) const;

  void check_vertex(int v) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> dist_;
  int max_degree_ = 0;
  int diameter_ = 0;
};

struct SpaceTimeIndex {
  int t;
  int v;
  friend bool operator==(const SpaceTimeIndex&, const SpaceTimeIndex&) = default;
  friend auto operator<=>(const SpaceTimeIndex&, const SpaceTimeIndex&) = default;
};

struct SpaceTimeNeighborhood {
  std::vector<SpaceTimeIndex> interior;  // N^{(k-1, r-1)}
  std::vector<SpaceTimeIndex> boundary;  // N^{(k, r)} minus interior
};

// Both lists are time-major then vertex-major.
SpaceTimeNeighborhood st_neighborhood(const Network& net, int t, int v, int k, int r);

Network path_graph(int n);
Network cycle_graph(int n);
Network grid_graph(int rows, int cols);
Network star_graph(int leaves);
Network complete_graph(int n);
// N blocks of d vertices on a ring, complete bipartite between adjacent
// blocks. Vertex b*d + i is member i of block b.
Network ring_of_blocks(int blocks, int block_size);

}  // namespace netoco
