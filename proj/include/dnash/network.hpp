#pragma once

#include <cstddef>
#include <vector>

namespace dnash {

/// Bureau of Public Roads latency J(l) = free_flow * (1 + coefficient * (l / capacity)^power).
struct BprParams {
  double free_flow = 1.0;
  double coefficient = 1.0;
  double capacity = 1.0;
  double power = 1.0;

  /// Throws DomainError unless all parameters are positive and power >= 1.
  void validate() const;
};

double bpr_cost(const BprParams& p, double load);
/// dJ/dl; nondecreasing in the load because power >= 1.
double bpr_derivative(const BprParams& p, double load);
/// Integral of bpr_cost over [0, load], in closed form.
double bpr_integral(const BprParams& p, double load);

struct Edge {
  int tail = 0;
  int head = 0;
};

/// Directed graph with nodes numbered 1..node_count and BPR costs per edge.
/// Edges keep their insertion order; an edge index is its position.
class RoadNetwork {
 public:
  RoadNetwork(int node_count, std::vector<Edge> edges, std::vector<BprParams> bpr);

  int node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<BprParams>& bpr() const noexcept { return bpr_; }
  const BprParams& bpr(std::size_t e) const { return bpr_.at(e); }

  /// Edge indices leaving each node, indexed by node id (entry 0 unused).
  const std::vector<std::vector<std::size_t>>& out_edges() const noexcept { return out_edges_; }

  RoadNetwork with_bpr(std::vector<BprParams> bpr) const;

  /// Nodes reachable from `origin` along directed edges (origin included).
  std::vector<bool> reachable_from(int origin) const;

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<BprParams> bpr_;
  std::vector<std::vector<std::size_t>> out_edges_;
};

/// rows x cols lattice with a pair of opposing edges between neighbours.
/// Node (r, c) has id r * cols + c + 1. All BPR parameters are 1.
RoadNetwork make_grid_network(int rows, int cols);

}  // namespace dnash
