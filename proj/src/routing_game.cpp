#include "dnash/routing_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dnash/errors.hpp"

namespace dnash {

RoutingGame::RoutingGame(RoadNetwork network, std::vector<PlayerSpec> players)
    : network_(std::move(network)), players_(std::move(players)) {
  spaces_.reserve(players_.size());
  for (std::size_t i = 0; i < players_.size(); ++i) {
    const PlayerSpec& player = players_[i];
    std::ostringstream where;
    where << "player " << i << ": ";
    if (player.routes.empty()) throw DomainError(where.str() + "has no routes");
    if (!(player.demand > 0.0) || !std::isfinite(player.demand)) throw DomainError(where.str() + "demand must be positive");
    for (std::size_t p = 0; p < player.routes.size(); ++p) {
      if (!is_simple_path(network_, player.routes[p], player.origin, player.destination)) {
        throw DomainError(where.str() + "route " + std::to_string(p) + " is not a simple origin-destination path");
      }
      for (std::size_t q = 0; q < p; ++q) {
        if (player.routes[q] == player.routes[p]) {
          throw DomainError(where.str() + "route " + std::to_string(p) + " duplicates route " + std::to_string(q));
        }
      }
    }
    spaces_.emplace_back(player.routes.size(), player.demand);
  }
}

double RoutingGame::total_demand() const noexcept {
  double total = 0.0;
  for (const PlayerSpec& player : players_) total += player.demand;
  return total;
}

void RoutingGame::require_feasible(const JointProfile& profile) const {
  if (profile.size() != players_.size()) throw DomainError("profile has the wrong number of players");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    try {
      spaces_[i].require_contains(profile[i]);
    } catch (const DomainError& err) {
      throw DomainError("player " + std::to_string(i) + ": " + err.what());
    }
  }
}

void RoutingGame::accumulate_loads(const JointProfile& profile, std::vector<double>& loads) const {
  loads.assign(network_.edge_count(), 0.0);
  for (std::size_t i = 0; i < players_.size(); ++i) {
    const auto& routes = players_[i].routes;
    for (std::size_t p = 0; p < routes.size(); ++p) {
      const double mass = profile[i][p];
      for (std::size_t e : routes[p]) loads[e] += mass;
    }
  }
}

void RoutingGame::route_costs(const std::vector<double>& loads, std::size_t player, std::span<double> out) const {
  const auto& routes = players_[player].routes;
  for (std::size_t p = 0; p < routes.size(); ++p) {
    double cost = 0.0;
    for (std::size_t e : routes[p]) cost += bpr_cost(network_.bpr(e), loads[e]);
    out[p] = cost;
  }
}

std::vector<double> RoutingGame::edge_loads(const JointProfile& profile) const {
  require_feasible(profile);
  std::vector<double> loads;
  accumulate_loads(profile, loads);
  return loads;
}

double RoutingGame::potential(const JointProfile& profile) const {
  require_feasible(profile);
  std::vector<double> loads;
  accumulate_loads(profile, loads);
  double value = 0.0;
  for (std::size_t e = 0; e < loads.size(); ++e) value += bpr_integral(network_.bpr(e), loads[e]);
  return value;
}

std::vector<double> RoutingGame::partial_gradient(const JointProfile& profile, std::size_t player) const {
  require_feasible(profile);
  if (player >= players_.size()) throw DomainError("player index out of range");
  std::vector<double> loads;
  accumulate_loads(profile, loads);
  std::vector<double> out(players_[player].routes.size());
  route_costs(loads, player, out);
  return out;
}

void RoutingGame::partial_gradients(const JointProfile& profile, JointProfile& gradients) const {
  require_feasible(profile);
  std::vector<double> loads;
  accumulate_loads(profile, loads);
  // Edge costs are shared by every route through the edge.
  std::vector<double> edge_cost(loads.size());
  for (std::size_t e = 0; e < loads.size(); ++e) edge_cost[e] = bpr_cost(network_.bpr(e), loads[e]);
  gradients.resize(players_.size());
  for (std::size_t i = 0; i < players_.size(); ++i) {
    const auto& routes = players_[i].routes;
    gradients[i].resize(routes.size());
    for (std::size_t p = 0; p < routes.size(); ++p) {
      double cost = 0.0;
      for (std::size_t e : routes[p]) cost += edge_cost[e];
      gradients[i][p] = cost;
    }
  }
}

double RoutingGame::wardrop_gap(const JointProfile& profile, double support_tol) const {
  JointProfile costs;
  partial_gradients(profile, costs);
  double gap = 0.0;
  for (std::size_t i = 0; i < players_.size(); ++i) {
    const double best = *std::min_element(costs[i].begin(), costs[i].end());
    const double threshold = support_tol * players_[i].demand;
    for (std::size_t p = 0; p < costs[i].size(); ++p) {
      if (profile[i][p] > threshold) gap = std::max(gap, costs[i][p] - best);
    }
  }
  return gap;
}

double RoutingGame::frank_wolfe_gap(const JointProfile& profile) const {
  JointProfile costs;
  partial_gradients(profile, costs);
  double gap = 0.0;
  for (std::size_t i = 0; i < players_.size(); ++i) {
    const double best = *std::min_element(costs[i].begin(), costs[i].end());
    for (std::size_t p = 0; p < costs[i].size(); ++p) gap += profile[i][p] * (costs[i][p] - best);
  }
  return gap;
}

double RoutingGame::mean_free_flow_path_cost() const {
  if (players_.empty()) return 0.0;
  double total = 0.0;
  for (const PlayerSpec& player : players_) {
    double best = std::numeric_limits<double>::infinity();
    for (const Route& route : player.routes) best = std::min(best, free_flow_time(network_, route));
    total += best;
  }
  return total / static_cast<double>(players_.size());
}

double analytic_lipschitz_bound(const RoutingGame& game) {
  const RoadNetwork& network = game.network();
  std::vector<double> max_load(network.edge_count(), 0.0);
  std::size_t longest = 0;
  for (const PlayerSpec& player : game.players()) {
    std::vector<bool> touched(network.edge_count(), false);
    for (const Route& route : player.routes) {
      longest = std::max(longest, route.size());
      for (std::size_t e : route) touched[e] = true;
    }
    for (std::size_t e = 0; e < touched.size(); ++e) {
      if (touched[e]) max_load[e] += player.demand;
    }
  }
  double slope = 0.0;
  for (std::size_t e = 0; e < max_load.size(); ++e) {
    slope = std::max(slope, bpr_derivative(network.bpr(e), max_load[e]));
  }
  return static_cast<double>(longest) * slope;
}

SmoothnessBundle estimate_smoothness(const RoutingGame& game, const SmoothnessOptions& options) {
  SmoothnessBundle bundle;
  double mu_star = std::numeric_limits<double>::infinity();
  double widest = 0.0;
  for (const PlayerSpec& player : game.players()) {
    mu_star = std::min(mu_star, 1.0 / (player.demand * player.demand));
    widest = std::max(widest, player.demand);
  }
  bundle.mu_star = mu_star;
  bundle.diameter = 2.0 * widest;

  std::mt19937_64 rng(options.seed);
  JointProfile gx;
  JointProfile gy;
  double sampled = 0.0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    const JointProfile x = random_profile(game, rng);
    const JointProfile y = random_profile(game, rng);
    game.partial_gradients(x, gx);
    game.partial_gradients(y, gy);
    double dual = 0.0;
    double primal = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t p = 0; p < x[i].size(); ++p) {
        dual = std::max(dual, std::abs(gx[i][p] - gy[i][p]));
        primal += std::abs(x[i][p] - y[i][p]);
      }
    }
    if (primal > 0.0) sampled = std::max(sampled, dual / primal);
  }
  const double analytic = analytic_lipschitz_bound(game);
  bundle.lipschitz = sampled > 0.0 ? std::min(2.0 * sampled, analytic) : analytic;
  if (!(bundle.lipschitz > 0.0)) bundle.lipschitz = std::numeric_limits<double>::min();
  return bundle;
}

}  // namespace dnash
