#include "netoco/graph.hpp"

#include <algorithm>
#include <deque>

#include "netoco/error.hpp"

namespace netoco {

Network::Network(int vertex_count, const std::vector<std::pair<int, int>>& edges)
    : n_(vertex_count) {
  if (n_ <= 0) throw InvalidGraph("vertex count must be positive");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n_) throw InvalidVertex(a);
    if (b < 0 || b >= n_) throw InvalidVertex(b);
    if (a == b) throw InvalidGraph("self-loop at vertex " + std::to_string(a));
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1]) {
      throw InvalidGraph("duplicate edge " + std::to_string(edges_[i].u) + " " +
                         std::to_string(edges_[i].v));
    }
  }

  adjacency_.assign(n_, {});
  incident_.assign(n_, {});
  for (int e = 0; e < edge_count(); ++e) {
    adjacency_[edges_[e].u].push_back(edges_[e].v);
    adjacency_[edges_[e].v].push_back(edges_[e].u);
    incident_[edges_[e].u].push_back(e);
    incident_[edges_[e].v].push_back(e);
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
  for (const auto& a : adjacency_) max_degree_ = std::max<int>(max_degree_, a.size());

  dist_.assign(static_cast<std::size_t>(n_) * n_, kUnreachable);
  std::deque<int> queue;
  for (int s = 0; s < n_; ++s) {
    int* row = &dist_[static_cast<std::size_t>(s) * n_];
    row[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : adjacency_[x]) {
        if (row[y] == kUnreachable) {
          row[y] = row[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (int y = 0; y < n_; ++y) {
      if (row[y] != kUnreachable) diameter_ = std::max(diameter_, row[y]);
    }
  }
}

void Network::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw InvalidVertex(v);
}

const std::vector<int>& Network::neighbors(int v) const {
  check_vertex(v);
  return adjacency_[v];
}

int Network::edge_index(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  for (int e : incident_[u]) {
    if (edges_[e].u == std::min(u, v) && edges_[e].v == std::max(u, v)) return e;
  }
  return -1;
}

int Network::distance(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return dist_[static_cast<std::size_t>(u) * n_ + v];
}

int Network::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

int Network::min_degree() const {
  int m = kUnreachable;
  for (const auto& a : adjacency_) m = std::min<int>(m, a.size());
  return m;
}

int Network::eccentricity(int v) const {
  check_vertex(v);
  int e = 0;
  for (int u = 0; u < n_; ++u) {
    int d = dist_[static_cast<std::size_t>(v) * n_ + u];
    if (d != kUnreachable) e = std::max(e, d);
  }
  return e;
}

bool Network::connected() const {
  return std::none_of(dist_.begin(), dist_.begin() + n_,
                      [](int d) { return d == kUnreachable; });
}

std::vector<int> Network::neighborhood(int v, int r) const {
  check_vertex(v);
  std::vector<int> out;
  if (r < 0) return out;
  for (int u = 0; u < n_; ++u) {
    if (dist_[static_cast<std::size_t>(v) * n_ + u] <= r) out.push_back(u);
  }
  return out;
}

std::vector<int> Network::boundary(int v, int r) const {
  check_vertex(v);
  std::vector<int> out;
  if (r < 0) return out;
  for (int u = 0; u < n_; ++u) {
    if (dist_[static_cast<std::size_t>(v) * n_ + u] == r) out.push_back(u);
  }
  return out;
}

std::vector<int> Network::boundary_growth(int r_max) const {
  std::vector<int> h(std::max(r_max + 1, 0), 0);
  for (int v = 0; v < n_; ++v) {
    std::vector<int> count(h.size(), 0);
    for (int u = 0; u < n_; ++u) {
      int d = dist_[static_cast<std::size_t>(v) * n_ + u];
      if (d <= r_max) ++count[d];
    }
    for (std::size_t g = 0; g < h.size(); ++g) h[g] = std::max(h[g], count[g]);
  }
  return h;
}

std::vector<int> Network::edges_within(const std::vector<int>& sorted_vertices) const {
  std::vector<char> in(n_, 0);
  for (int v : sorted_vertices) {
    check_vertex(v);
    in[v] = 1;
  }
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e) {
    if (in[edges_[e].u] && in[edges_[e].v]) out.push_back(e);
  }
  return out;
}

SpaceTimeNeighborhood st_neighborhood(const Network& net, int t, int v, int k, int r) {
  if (k < 1) throw InvalidConfig("st_neighborhood needs k >= 1");
  if (r < 0) throw InvalidConfig("st_neighborhood needs r >= 0");
  net.check_vertex(v);
  SpaceTimeNeighborhood out;
  std::vector<int> outer = net.neighborhood(v, r);
  for (int tau = t; tau < t + k; ++tau) {
    bool last = tau == t + k - 1;
    for (int u : outer) {
      bool edge = net.distance(v, u) == r;
      if (last || edge) {
        out.boundary.push_back({tau, u});
      } else {
        out.interior.push_back({tau, u});
      }
    }
  }
  return out;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidGraph(what);
}

}  // namespace

Network path_graph(int n) {
  require(n >= 1, "path needs at least one vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Network(n, e);
}

Network cycle_graph(int n) {
  require(n >= 3, "cycle needs at least three vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Network(n, e);
}

Network grid_graph(int rows, int cols) {
  require(rows >= 1 && cols >= 1, "grid needs positive dimensions");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      int v = i * cols + j;
      if (j + 1 < cols) e.emplace_back(v, v + 1);
      if (i + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return Network(rows * cols, e);
}

Network star_graph(int leaves) {
  require(leaves >= 1, "star needs at least one leaf");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Network(leaves + 1, e);
}

Network complete_graph(int n) {
  require(n >= 1, "complete graph needs at least one vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Network(n, e);
}

Network ring_of_blocks(int blocks, int block_size) {
  require(blocks >= 3, "ring of blocks needs N >= 3");
  require(block_size >= 1, "ring of blocks needs d >= 1");
  std::vector<std::pair<int, int>> e;
  for (int b = 0; b < blocks; ++b) {
    int next = (b + 1) % blocks;
    for (int i = 0; i < block_size; ++i) {
      for (int j = 0; j < block_size; ++j) {
        e.emplace_back(b * block_size + i, next * block_size + j);
      }
    }
  }
  return Network(blocks * block_size, e);
}

}  // namespace netoco
