#include "dnash/network.hpp"

#include <cmath>
#include <sstream>

#include "dnash/errors.hpp"

namespace dnash {

void BprParams::validate() const {
  const bool ok = free_flow > 0.0 && coefficient > 0.0 && capacity > 0.0 && power >= 1.0 && std::isfinite(free_flow) &&
                  std::isfinite(coefficient) && std::isfinite(capacity) && std::isfinite(power);
  if (!ok) {
    std::ostringstream msg;
    msg << "invalid BPR parameters (a=" << free_flow << ", b=" << coefficient << ", c=" << capacity
        << ", r=" << power << ")";
    throw DomainError(msg.str());
  }
}

double bpr_cost(const BprParams& p, double load) {
  return p.free_flow * (1.0 + p.coefficient * std::pow(load / p.capacity, p.power));
}

double bpr_derivative(const BprParams& p, double load) {
  return p.free_flow * p.coefficient * p.power * std::pow(load / p.capacity, p.power - 1.0) / p.capacity;
}

double bpr_integral(const BprParams& p, double load) {
  const double r1 = p.power + 1.0;
  return p.free_flow * load + p.free_flow * p.coefficient * load * std::pow(load / p.capacity, p.power) / r1;
}

RoadNetwork::RoadNetwork(int node_count, std::vector<Edge> edges, std::vector<BprParams> bpr)
    : node_count_(node_count), edges_(std::move(edges)), bpr_(std::move(bpr)) {
  if (node_count <= 0) throw DomainError("network needs at least one node");
  if (edges_.size() != bpr_.size()) throw DomainError("edge count and BPR parameter count differ");
  out_edges_.resize(static_cast<std::size_t>(node_count) + 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.tail < 1 || edge.tail > node_count || edge.head < 1 || edge.head > node_count) {
      std::ostringstream msg;
      msg << "edge " << e << " (" << edge.tail << " -> " << edge.head << ") has a node outside [1, " << node_count
          << "]";
      throw DomainError(msg.str());
    }
    if (edge.tail == edge.head) {
      std::ostringstream msg;
      msg << "edge " << e << " is a self-loop at node " << edge.tail;
      throw DomainError(msg.str());
    }
    bpr_[e].validate();
    out_edges_[static_cast<std::size_t>(edge.tail)].push_back(e);
  }
}

RoadNetwork RoadNetwork::with_bpr(std::vector<BprParams> bpr) const { return {node_count_, edges_, std::move(bpr)}; }

std::vector<bool> RoadNetwork::reachable_from(int origin) const {
  std::vector<bool> seen(static_cast<std::size_t>(node_count_) + 1, false);
  if (origin < 1 || origin > node_count_) return seen;
  std::vector<int> stack{origin};
  seen[static_cast<std::size_t>(origin)] = true;
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    for (std::size_t e : out_edges_[static_cast<std::size_t>(node)]) {
      const int head = edges_[e].head;
      if (!seen[static_cast<std::size_t>(head)]) {
        seen[static_cast<std::size_t>(head)] = true;
        stack.push_back(head);
      }
    }
  }
  return seen;
}

RoadNetwork make_grid_network(int rows, int cols) {
  if (rows < 1 || cols < 1) throw DomainError("grid needs positive dimensions");
  std::vector<Edge> edges;
  auto id = [cols](int r, int c) { return r * cols + c + 1; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        edges.push_back({id(r, c), id(r, c + 1)});
        edges.push_back({id(r, c + 1), id(r, c)});
      }
      if (r + 1 < rows) {
        edges.push_back({id(r, c), id(r + 1, c)});
        edges.push_back({id(r + 1, c), id(r, c)});
      }
    }
  }
  std::vector<BprParams> bpr(edges.size());
  return {rows * cols, std::move(edges), std::move(bpr)};
}

}  // namespace dnash
