#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dnash/network.hpp"
#include "dnash/potential_game.hpp"
#include "dnash/routes.hpp"
#include "dnash/step_schedule.hpp"

namespace dnash {

struct PlayerSpec {
  int origin = 0;
  int destination = 0;
  double demand = 1.0;
  std::vector<Route> routes;
};

/// Nonatomic congestion game on a road network. Player i splits demand S_i
/// over its routes; edge costs follow the BPR latency of the edge load and the
/// potential is the Beckmann integral sum_e int_0^{l_e} J_e.
class RoutingGame final : public PotentialGame {
 public:
  /// Validates that every route is a simple origin-destination path, that
  /// route lists are nonempty and duplicate-free and that demands are positive.
  RoutingGame(RoadNetwork network, std::vector<PlayerSpec> players);

  const RoadNetwork& network() const noexcept { return network_; }
  const std::vector<PlayerSpec>& players() const noexcept { return players_; }
  double total_demand() const noexcept;

  std::size_t player_count() const override { return players_.size(); }
  const ScaledSimplex& strategy_space(std::size_t player) const override { return spaces_.at(player); }

  /// l_e(x) = sum over players and routes through e of the route mass.
  std::vector<double> edge_loads(const JointProfile& profile) const;
  double potential(const JointProfile& profile) const override;
  /// Route costs J^i_p(x) = sum_{e in p} J_e(l_e(x)) of one player.
  std::vector<double> partial_gradient(const JointProfile& profile, std::size_t player) const;
  void partial_gradients(const JointProfile& profile, JointProfile& gradients) const override;

  /// Largest excess cost max_p (J^i_p - min_q J^i_q) over routes carrying more
  /// than support_tol * S_i. Zero exactly at a Wardrop equilibrium.
  double wardrop_gap(const JointProfile& profile, double support_tol = 1e-6) const;

  /// sum_i sum_p x^i_p (J^i_p - min_q J^i_q). Bounds Phi(x) - min Phi from
  /// above by convexity.
  double frank_wolfe_gap(const JointProfile& profile) const;

  /// Shortest free-flow route time averaged over players.
  double mean_free_flow_path_cost() const;

  void require_feasible(const JointProfile& profile) const;

 private:
  void accumulate_loads(const JointProfile& profile, std::vector<double>& loads) const;
  void route_costs(const std::vector<double>& loads, std::size_t player, std::span<double> out) const;

  RoadNetwork network_;
  std::vector<PlayerSpec> players_;
  std::vector<ScaledSimplex> spaces_;
};

struct SmoothnessOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 20240101;
};

/// L estimated as min(2 * sampled max of |grad(x) - grad(x')|_inf / |x - x'|_1,
/// analytic bound), mu_star = min_i 1 / S_i^2 and diameter = 2 max_i S_i.
///
/// The analytic bound is (longest route length) * max_e J_e'(l_e^max), where
/// l_e^max is the demand of every player with a route through e.
SmoothnessBundle estimate_smoothness(const RoutingGame& game, const SmoothnessOptions& options = {});

double analytic_lipschitz_bound(const RoutingGame& game);

/// Independent draw of a profile from the flat Dirichlet law on each simplex.
template <typename Rng>
JointProfile random_profile(const PotentialGame& game, Rng& rng) {
  JointProfile profile(game.player_count());
  for (std::size_t i = 0; i < profile.size(); ++i) profile[i] = sample_simplex_point(game.strategy_space(i), rng);
  return profile;
}

}  // namespace dnash
