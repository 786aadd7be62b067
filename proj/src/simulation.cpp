#include "dnash/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "dnash/errors.hpp"

namespace dnash {

JointProfile PotentialGame::zero_profile() const {
  JointProfile profile(player_count());
  for (std::size_t i = 0; i < profile.size(); ++i) profile[i].assign(strategy_space(i).dimension(), 0.0);
  return profile;
}

JointProfile PotentialGame::uniform_profile() const {
  JointProfile profile(player_count());
  for (std::size_t i = 0; i < profile.size(); ++i) profile[i] = strategy_space(i).uniform_point();
  return profile;
}

SimulationTrace run_simulation(const PotentialGame& game, const SimulationConfig& config) {
  SimulationTrace trace;
  if (config.horizon <= 0) return trace;

  const std::size_t players = game.player_count();
  const bool instantaneous =
      config.rule == UpdateRule::Instantaneous ||
      (config.rule == UpdateRule::Automatic && config.delay.kind() == DelayKind::None);

  JointProfile action = config.start ? *config.start : game.uniform_profile();
  if (action.size() != players) throw DomainError("start profile has the wrong number of players");
  JointProfile gradient = game.zero_profile();
  JointProfile next_gradient = game.zero_profile();
  JointProfile next_action = game.zero_profile();
  JointProfile average = game.zero_profile();
  game.partial_gradients(action, gradient);

  std::vector<PlayerState> states;
  states.reserve(players);
  for (std::size_t i = 0; i < players; ++i) {
    states.push_back(PlayerState::initial(action[i], gradient[i], game.strategy_space(i)));
  }

  DelayStreams streams(config.seed, players);
  std::vector<FeedbackQueue> queues(players);
  std::vector<std::int64_t> timestamps(players, 1);
  StepCursor cursor(config.schedule);
  trace.rows.reserve(static_cast<std::size_t>(config.horizon));

  for (std::int64_t k = 1; k <= config.horizon; ++k) {
    cursor.advance();
    const StepWeights weights = StepWeights::from(cursor);
    std::int64_t max_staleness = 0;
    for (std::size_t i = 0; i < players; ++i) {
      PlayerState& state = states[i];
      const ScaledSimplex& space = game.strategy_space(i);
      if (instantaneous) {
        state.s = k;
        apply_update(state, gradient[i], space, weights);
      } else {
        auto inbox = queues[i].deliver(k);
        accept_freshest(state, inbox);
        apply_update(state, state.g_star, space, weights);
      }
      timestamps[i] = state.s;
      max_staleness = std::max(max_staleness, k - state.s);
      std::copy(state.y.begin(), state.y.end(), average[i].begin());
      std::copy(state.x_next.begin(), state.x_next.end(), next_action[i].begin());
    }

    const double phi = game.potential(average);
    game.partial_gradients(next_action, next_gradient);
    trace.rows.push_back({k, phi, phi - config.phi_star, max_staleness, weights.a, weights.sum});

    if (config.observer) {
      config.observer(IterationView{k, average, action, gradient, next_action, next_gradient, timestamps, weights});
    }

    if (!instantaneous) {
      const std::int64_t origin = k + 1;
      for (std::size_t i = 0; i < players; ++i) {
        const std::int64_t arrival = arrival_iteration(config.delay, origin, streams.stream(i));
        if (arrival <= config.horizon) queues[i].push({origin, next_gradient[i], arrival});
      }
    }
    std::swap(action, next_action);
    std::swap(gradient, next_gradient);
  }
  trace.final_average = std::move(average);
  return trace;
}

bool staleness_bound_check(const SimulationTrace& trace, const DelayModel& model) {
  if (model.kind() == DelayKind::None) {
    return std::all_of(trace.rows.begin(), trace.rows.end(), [](const TraceRow& r) { return r.max_staleness == 0; });
  }
  // Stochastic draws are bounded by twice the nominal delay.
  const double scale = model.kind() == DelayKind::StochasticUniform ? 2.0 * model.scale() : model.scale();
  for (const TraceRow& row : trace.rows) {
    const auto next = static_cast<double>(row.k - row.max_staleness + 1);
    if (!(next + scale * std::pow(next, model.exponent()) > static_cast<double>(row.k))) return false;
  }
  return true;
}

}  // namespace dnash
