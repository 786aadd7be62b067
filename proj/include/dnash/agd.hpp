#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dnash/delay.hpp"
#include "dnash/entropy.hpp"
#include "dnash/step_schedule.hpp"

namespace dnash {

/// Per-player iterates of the accelerated mirror-descent update.
struct PlayerState {
  std::vector<double> x_next;  // action for the next iteration
  std::vector<double> y;       // weighted average iterate
  std::vector<double> z;       // accumulated dual vector
  std::vector<double> v;       // mirror image of z
  std::vector<double> g_star;  // freshest gradient accepted so far
  std::int64_t s = 0;          // iteration g_star was queried at

  /// State before iteration 1: x_0 = x_1 = `start`, z_0 = grad psi(`start`), y_0 = 0, g_star = `first_gradient` stamped with s = 1.
  static PlayerState initial(std::span<const double> start, std::span<const double> first_gradient,
                             const ScaledSimplex& space);
};

/// Weights of one iteration: a_k, A_{k-1}, A_k, a_{k+1}, A_{k+1}.
struct StepWeights {
  double a = 0.0;
  double sum_prev = 0.0;
  double sum = 0.0;
  double a_next = 0.0;
  double sum_next = 0.0;

  static StepWeights from(const StepCursor& cursor);
  static StepWeights at(const StepSchedule& schedule, std::int64_t k);
};

/// In-place update with gradient `g`:
///   z <- z - a_k g
///   v <- mirror(z)
///   y <- (A_{k-1}/A_k) y + (a_k/A_k) v
///   x_next <- (A_k/A_{k+1}) y + (a_{k+1}/A_{k+1}) v
/// Throws ScheduleError when A_k is not positive.
void apply_update(PlayerState& state, std::span<const double> g, const ScaledSimplex& space, const StepWeights& w);

/// Instantaneous-feedback iteration k with the exact gradient at x_k.
PlayerState alg1_step(PlayerState state, std::span<const double> g_k, const ScaledSimplex& space,
                      const StepSchedule& schedule, std::int64_t k);

/// Keeps the newest message of `inbox` if it is fresher than the cached
/// gradient; older messages are discarded. Returns whether g_star changed.
bool accept_freshest(PlayerState& state, std::vector<FeedbackMessage>& inbox);

/// Delayed-feedback iteration k: accept_freshest, then apply_update with g_star.
PlayerState alg2_step(PlayerState state, std::vector<FeedbackMessage> inbox, const ScaledSimplex& space,
                      const StepSchedule& schedule, std::int64_t k);

}  // namespace dnash
