#pragma once

#include <cstddef>
#include <vector>

#include "dnash/network.hpp"

namespace dnash {

/// Edge indices of a directed path, in travel order.
using Route = std::vector<std::size_t>;

struct RouteSet {
  std::vector<Route> routes;
  bool truncated = false;  // fewer simple paths exist than were requested
};

/// Sum of free-flow times along a route.
double free_flow_time(const RoadNetwork& network, const Route& route);

/// True if `route` is a simple directed path from origin to destination.
bool is_simple_path(const RoadNetwork& network, const Route& route, int origin, int destination);

/// The `count` loopless origin-destination paths with the smallest free-flow
/// time (Yen's algorithm). Equal-time paths are ordered by their edge-index
/// sequence. Throws NoPathError when the destination is unreachable.
RouteSet enumerate_routes(const RoadNetwork& network, int origin, int destination, std::size_t count);

}  // namespace dnash
