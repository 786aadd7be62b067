#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dnash/agd.hpp"
#include "dnash/delay.hpp"
#include "dnash/potential_game.hpp"
#include "dnash/step_schedule.hpp"

namespace dnash {

struct TraceRow {
  std::int64_t k = 0;
  double phi = 0.0;                // Phi(y_k)
  double gap = 0.0;                // Phi(y_k) - phi_star
  std::int64_t max_staleness = 0;  // max_i (k - s^i(k))
  double a_k = 0.0;
  double A_k = 0.0;
};

struct SimulationTrace {
  std::vector<TraceRow> rows;
  JointProfile final_average;  // y at the last iteration (empty when horizon = 0)
};

enum class UpdateRule {
  Automatic,        // instantaneous update when the delay model is None
  Instantaneous,    // exact gradient of the current iteration
  FreshestFeedback  // delayed messages, freshest one wins
};

/// What an observer sees after iteration k has been applied.
struct IterationView {
  std::int64_t k;
  const JointProfile& average;        // y_k
  const JointProfile& action;         // x_k
  const JointProfile& gradient;       // exact gradient at x_k
  const JointProfile& next_action;    // x_{k+1}
  const JointProfile& next_gradient;  // exact gradient at x_{k+1}
  const std::vector<std::int64_t>& timestamps;  // s^i(k)
  const StepWeights& weights;
};

struct SimulationConfig {
  StepSchedule schedule;
  DelayModel delay = DelayModel::none();
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  double phi_star = 0.0;
  UpdateRule rule = UpdateRule::Automatic;
  std::optional<JointProfile> start{};  // uniform point of every simplex if empty
  std::function<void(const IterationView&)> observer{};
};

/// Runs every player's update for k = 1..horizon against `game`.
///
/// Each iteration queries the exact joint gradient at x_{k+1} and posts it to
/// every player with an arrival drawn from the delay model. The gradient at
/// x_1 is available immediately. Messages that would arrive after the horizon
/// are never stored.
SimulationTrace run_simulation(const PotentialGame& game, const SimulationConfig& config);

/// True iff s + 1 + D (s + 1)^alpha > k for every player and row, using the
/// stalest player (k - max_staleness) of each row; the left side increases in s.
bool staleness_bound_check(const SimulationTrace& trace, const DelayModel& model);

}  // namespace dnash
