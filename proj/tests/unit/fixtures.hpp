#pragma once

#include <vector>

#include "dnash/network.hpp"
#include "dnash/routing_game.hpp"

namespace fixture {

/// Diamond 1->2->4 (free flow 1 + 1) and 1->3->4 (1.5 + 1.5).
inline dnash::RoadNetwork diamond() {
  return dnash::RoadNetwork(4, {{1, 2}, {2, 4}, {1, 3}, {3, 4}},
                            {{1.0, 0.15, 60, 4}, {1.0, 0.15, 60, 4}, {1.5, 0.15, 70, 4}, {1.5, 0.15, 70, 4}});
}

/// Two players on the diamond plus a cross edge 2->3:
///   player 0: 1 -> 4 over {0,1} or {2,3}, demand 12
///   player 1: 2 -> 4 over {1} or {4,3}, demand 7
inline dnash::RoutingGame two_player_game() {
  dnash::RoadNetwork net(4, {{1, 2}, {2, 4}, {1, 3}, {3, 4}, {2, 3}},
                         {{2.0, 3.0, 10.0, 1.0}, {2.5, 5.0, 12.0, 1.25}, {2.2, 4.0, 8.0, 1.5}, {2.0, 6.0, 15.0, 1.0},
                          {0.5, 3.5, 9.0, 1.4}});
  std::vector<dnash::PlayerSpec> players = {
      {1, 4, 12.0, {{0, 1}, {2, 3}}},
      {2, 4, 7.0, {{1}, {4, 3}}},
  };
  return dnash::RoutingGame(std::move(net), std::move(players));
}

/// One player with two parallel single-edge routes of identical cost.
inline dnash::RoutingGame symmetric_pair(double demand) {
  dnash::RoadNetwork net(2, {{1, 2}, {1, 2}}, {{2.0, 3.0, 10.0, 2.0}, {2.0, 3.0, 10.0, 2.0}});
  return dnash::RoutingGame(std::move(net), {{1, 2, demand, {{0}, {1}}}});
}

/// One player with two parallel single-edge routes of different cost.
inline dnash::RoutingGame asymmetric_pair(double demand) {
  dnash::RoadNetwork net(2, {{1, 2}, {1, 2}}, {{2.0, 3.0, 10.0, 2.0}, {1.0, 1.0, 4.0, 1.0}});
  return dnash::RoutingGame(std::move(net), {{1, 2, demand, {{0}, {1}}}});
}

}  // namespace fixture
