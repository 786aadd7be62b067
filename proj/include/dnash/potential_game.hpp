#pragma once

#include <cstddef>
#include <vector>

#include "dnash/entropy.hpp"

namespace dnash {

/// One strategy vector per player.
using JointProfile = std::vector<std::vector<double>>;

/// Continuous potential game whose strategy sets are scaled simplices.
///
/// Implementations must be safe for concurrent const use: simulations running
/// in parallel share one game.
class PotentialGame {
 public:
  virtual ~PotentialGame() = default;

  virtual std::size_t player_count() const = 0;
  virtual const ScaledSimplex& strategy_space(std::size_t player) const = 0;

  virtual double potential(const JointProfile& profile) const = 0;

  /// Writes grad_{x^i} J_i(x) = grad_{x^i} Phi(x) for every player into
  /// `gradients`, which must already have the profile's shape.
  virtual void partial_gradients(const JointProfile& profile, JointProfile& gradients) const = 0;

  JointProfile zero_profile() const;
  JointProfile uniform_profile() const;
};

}  // namespace dnash
