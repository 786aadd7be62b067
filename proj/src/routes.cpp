#include "dnash/routes.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "dnash/errors.hpp"

namespace dnash {

namespace {

struct Candidate {
  double cost;
  Route route;

  bool operator<(const Candidate& other) const {
    return cost != other.cost ? cost < other.cost : route < other.route;
  }
};

Route trace_back(const RoadNetwork& network, const std::vector<std::size_t>& via, int source, int node) {
  Route route;
  while (node != source) {
    const std::size_t e = via[static_cast<std::size_t>(node)];
    route.push_back(e);
    node = network.edge(e).tail;
  }
  std::reverse(route.begin(), route.end());
  return route;
}

// Whether reaching `head` through `node` and edge `e` gives a smaller edge
// sequence than the label `head` currently holds.
bool lexicographically_before(const RoadNetwork& network, const std::vector<std::size_t>& via, int source, int node,
                              std::size_t e, int head) {
  Route proposed = trace_back(network, via, source, node);
  proposed.push_back(e);
  return proposed < trace_back(network, via, source, head);
}

// Shortest path from `source` to `target` that avoids blocked nodes and edges.
std::optional<Route> shortest_path(const RoadNetwork& network, int source, int target,
                                   const std::vector<bool>& blocked_node, const std::vector<bool>& blocked_edge) {
  const auto n = static_cast<std::size_t>(network.node_count()) + 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> via(n, std::numeric_limits<std::size_t>::max());
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  dist[static_cast<std::size_t>(source)] = 0.0;
  frontier.emplace(0.0, source);
  while (!frontier.empty()) {
    const auto [d, node] = frontier.top();
    frontier.pop();
    if (d > dist[static_cast<std::size_t>(node)]) continue;
    if (node == target) break;
    for (std::size_t e : network.out_edges()[static_cast<std::size_t>(node)]) {
      if (blocked_edge[e]) continue;
      const int head = network.edge(e).head;
      if (blocked_node[static_cast<std::size_t>(head)]) continue;
      const double candidate = d + network.bpr(e).free_flow;
      const double current = dist[static_cast<std::size_t>(head)];
      const bool better = candidate < current ||
                          (candidate == current && lexicographically_before(network, via, source, node, e, head));
      if (better) {
        dist[static_cast<std::size_t>(head)] = candidate;
        via[static_cast<std::size_t>(head)] = e;
        frontier.emplace(candidate, head);
      }
    }
  }
  if (dist[static_cast<std::size_t>(target)] == kInf) return std::nullopt;
  return trace_back(network, via, source, target);
}

}  // namespace

double free_flow_time(const RoadNetwork& network, const Route& route) {
  double total = 0.0;
  for (std::size_t e : route) total += network.bpr(e).free_flow;
  return total;
}

bool is_simple_path(const RoadNetwork& network, const Route& route, int origin, int destination) {
  if (route.empty()) return false;
  std::vector<bool> visited(static_cast<std::size_t>(network.node_count()) + 1, false);
  int at = origin;
  visited[static_cast<std::size_t>(at)] = true;
  for (std::size_t e : route) {
    if (e >= network.edge_count()) return false;
    const Edge& edge = network.edge(e);
    if (edge.tail != at) return false;
    at = edge.head;
    if (visited[static_cast<std::size_t>(at)]) return false;
    visited[static_cast<std::size_t>(at)] = true;
  }
  return at == destination;
}

RouteSet enumerate_routes(const RoadNetwork& network, int origin, int destination, std::size_t count) {
  const int n = network.node_count();
  if (origin < 1 || origin > n || destination < 1 || destination > n) throw DomainError("route endpoint out of range");
  if (origin == destination) throw DomainError("origin and destination coincide");

  RouteSet result;
  if (count == 0) return result;

  std::vector<bool> blocked_node(static_cast<std::size_t>(n) + 1, false);
  std::vector<bool> blocked_edge(network.edge_count(), false);
  auto first = shortest_path(network, origin, destination, blocked_node, blocked_edge);
  if (!first) {
    std::ostringstream msg;
    msg << "node " << destination << " is unreachable from node " << origin;
    throw NoPathError(msg.str());
  }
  result.routes.push_back(std::move(*first));

  std::set<Candidate> candidates;
  while (result.routes.size() < count) {
    const Route& last = result.routes.back();
    for (std::size_t j = 0; j < last.size(); ++j) {
      std::fill(blocked_node.begin(), blocked_node.end(), false);
      std::fill(blocked_edge.begin(), blocked_edge.end(), false);
      const Route root(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(j));
      const int spur = network.edge(last[j]).tail;
      for (const Route& accepted : result.routes) {
        if (accepted.size() > j && std::equal(root.begin(), root.end(), accepted.begin())) {
          blocked_edge[accepted[j]] = true;
        }
      }
      for (std::size_t e : root) blocked_node[static_cast<std::size_t>(network.edge(e).tail)] = true;

      auto tail = shortest_path(network, spur, destination, blocked_node, blocked_edge);
      if (!tail) continue;
      Route route = root;
      route.insert(route.end(), tail->begin(), tail->end());
      if (std::find(result.routes.begin(), result.routes.end(), route) != result.routes.end()) continue;
      const double cost = free_flow_time(network, route);
      candidates.insert({cost, std::move(route)});
    }
    if (candidates.empty()) {
      result.truncated = true;
      break;
    }
    result.routes.push_back(candidates.begin()->route);
    candidates.erase(candidates.begin());
  }
  return result;
}

}  // namespace dnash
