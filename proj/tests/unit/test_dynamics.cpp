#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dnash/agd.hpp"
#include "dnash/bench.hpp"
#include "dnash/delay.hpp"
#include "dnash/errors.hpp"
#include "dnash/simulation.hpp"
#include "fixtures.hpp"

using namespace dnash;

TEST_CASE("alg1_step hand-evaluated example") {
  ScaledSimplex space(2, 1.0);
  const std::vector<double> x0 = {0.5, 0.5};
  PlayerState state = PlayerState::initial(x0, std::vector<double>{0.0, 0.0}, space);
  const auto z0 = state.z;
  const auto sched = StepSchedule::power(1.0, 0.0);  // a_k = 1
  const std::vector<double> g = {1.0, 0.0};
  const PlayerState next = alg1_step(state, g, space, sched, 1);
  CHECK(next.z[0] == z0[0] - 1.0);
  CHECK(next.z[1] == z0[1]);
  const double e = std::exp(-1.0);
  CHECK(next.y[0] == doctest::Approx(e / (1 + e)).epsilon(1e-14));
  CHECK(next.y[1] == doctest::Approx(1 / (1 + e)).epsilon(1e-14));
  CHECK(next.y[0] == doctest::Approx(0.268941).epsilon(1e-6));
  // A_1 = 1, A_2 = 2: x_2 = (y_1 + v_1) / 2 = y_1.
  CHECK(next.x_next[0] == doctest::Approx(next.y[0]));
  CHECK(next.v == next.y);
}

TEST_CASE("first step ignores the stored average") {
  ScaledSimplex space(3, 4.0);
  PlayerState state = PlayerState::initial(space.uniform_point(), std::vector<double>{1, 2, 3}, space);
  state.y = {100.0, -50.0, 7.0};
  const auto next = alg1_step(state, std::vector<double>{0.3, 0.1, 0.2}, space, StepSchedule::power(0.2, 1.0), 1);
  for (std::size_t p = 0; p < 3; ++p) CHECK(next.y[p] == doctest::Approx(next.v[p]).epsilon(1e-15));
}

TEST_CASE("zero gradients keep every average at the start point") {
  ScaledSimplex space(3, 6.0);
  const std::vector<double> start = {1.0, 2.0, 3.0};
  PlayerState state = PlayerState::initial(start, std::vector<double>(3, 0.0), space);
  const auto sched = StepSchedule::power(0.7, 0.5);
  for (int k = 1; k <= 50; ++k) {
    state = alg1_step(state, std::vector<double>(3, 0.0), space, sched, k);
    for (std::size_t p = 0; p < 3; ++p) {
      CHECK(state.y[p] == doctest::Approx(start[p]).epsilon(1e-12));
      CHECK(state.x_next[p] == doctest::Approx(start[p]).epsilon(1e-12));
    }
  }
}

TEST_CASE("apply_update rejects an empty partial sum") {
  ScaledSimplex space(2, 1.0);
  PlayerState state = PlayerState::initial(space.uniform_point(), std::vector<double>{0, 0}, space);
  StepWeights w;  // all zero
  CHECK_THROWS_AS(apply_update(state, std::vector<double>{1, 0}, space, w), ScheduleError);
  CHECK_THROWS_AS(StepWeights::at(StepSchedule::inverse(1.0), 0), ScheduleError);
}

TEST_CASE("alg2_step message selection") {
  ScaledSimplex space(2, 1.0);
  const auto sched = StepSchedule::power(0.1, 1.0);
  PlayerState state = PlayerState::initial(space.uniform_point(), std::vector<double>{1.0, 2.0}, space);
  state.s = 5;

  SUBCASE("empty inbox keeps the stale gradient") {
    const auto next = alg2_step(state, {}, space, sched, 6);
    CHECK(next.s == 5);
    CHECK(next.g_star == std::vector<double>{1.0, 2.0});
    const auto same = alg1_step(state, state.g_star, space, sched, 6);
    CHECK(next.y == same.y);
  }
  SUBCASE("older message is discarded") {
    const auto next = alg2_step(state, {{3, {9.0, 9.0}, 6}}, space, sched, 6);
    CHECK(next.s == 5);
    CHECK(next.g_star == std::vector<double>{1.0, 2.0});
  }
  SUBCASE("newest of several messages wins") {
    const auto next = alg2_step(state, {{7, {7.0, 7.0}, 8}, {6, {6.0, 6.0}, 8}}, space, sched, 8);
    CHECK(next.s == 7);
    CHECK(next.g_star == std::vector<double>{7.0, 7.0});
  }
}

TEST_CASE("arrival_iteration examples") {
  std::mt19937_64 rng(1);
  CHECK(arrival_iteration(DelayModel::none(), 9, rng) == 9);
  CHECK(arrival_iteration(DelayModel::deterministic_power(3.0, 0.0), 2, rng) == 5);
  CHECK(arrival_iteration(DelayModel::deterministic_power(1.0, 0.5), 4, rng) == 6);
  CHECK(arrival_iteration(DelayModel::deterministic_power(0.1, 1.0), 25, rng) == 28);
  CHECK(arrival_iteration(DelayModel::deterministic_power(0.1, 1.0), 30, rng) == 33);
}

TEST_CASE("stochastic delays have the configured mean and range") {
  DelayStreams streams(99, 3);
  const auto model = DelayModel::stochastic_uniform(2.0, 0.0);
  double total = 0.0;
  const int n = 100000;
  for (int j = 0; j < n; ++j) {
    const auto d = arrival_iteration(model, 10, streams.stream(1)) - 10;
    CHECK(d >= 0);
    CHECK(d <= 4);
    total += static_cast<double>(d);
  }
  const double mean = total / n;
  CHECK(mean >= 2.3);
  CHECK(mean <= 2.7);
}

TEST_CASE("delay substreams depend only on seed and player") {
  DelayStreams a(5, 2);
  DelayStreams b(5, 7);
  const auto model = DelayModel::stochastic_uniform(10.0, 0.5);
  for (int t = 1; t < 100; ++t) {
    CHECK(arrival_iteration(model, t, a.stream(1)) == arrival_iteration(model, t, b.stream(1)));
  }
  DelayStreams c(6, 2);
  int differ = 0;
  for (int t = 1; t < 100; ++t) differ += arrival_iteration(model, t, a.stream(0)) != arrival_iteration(model, t, c.stream(0));
  CHECK(differ > 0);
}

TEST_CASE("feedback queue delivery") {
  FeedbackQueue q;
  q.push({2, {1.0}, 5});
  CHECK(q.deliver(4).empty());
  const auto got = q.deliver(5);
  REQUIRE(got.size() == 1);
  CHECK(got[0].origin == 2);
  CHECK(q.empty());

  q.push({2, {2.0}, 7});
  q.push({4, {4.0}, 7});
  q.push({5, {5.0}, 9});
  auto batch = q.deliver(7);
  CHECK(batch.size() == 2);
  CHECK(q.size() == 1);
  ScaledSimplex space(1, 1.0);
  PlayerState state = PlayerState::initial(std::vector<double>{1.0}, std::vector<double>{0.0}, space);
  CHECK(accept_freshest(state, batch));
  CHECK(state.s == 4);
  CHECK_THROWS_AS(q.push({5, {0.0}, 4}), DomainError);
}

namespace {

// Plain re-implementation of the undelayed method for a routing game, used as
// a reference for run_simulation.
std::vector<double> reference_potentials(const RoutingGame& game, const StepSchedule& sched, int horizon) {
  const std::size_t n = game.player_count();
  JointProfile x = game.uniform_profile();
  JointProfile z(n), y(n), v(n), g;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = game.players()[i].demand;
    for (double xp : x[i]) z[i].push_back((std::log(xp / s) + 1.0) / s);
    y[i].assign(x[i].size(), 0.0);
    v[i].assign(x[i].size(), 0.0);
  }
  game.partial_gradients(x, g);
  std::vector<double> phis;
  double sum_prev = 0.0;
  for (int k = 1; k <= horizon; ++k) {
    const double a = sched.step(k);
    const double sum = sum_prev + a;
    const double a_next = sched.step(k + 1);
    const double sum_next = sum + a_next;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = game.players()[i].demand;
      for (std::size_t p = 0; p < z[i].size(); ++p) z[i][p] -= a * g[i][p];
      const double top = *std::max_element(z[i].begin(), z[i].end());
      double norm = 0.0;
      for (std::size_t p = 0; p < z[i].size(); ++p) {
        v[i][p] = std::exp(s * (z[i][p] - top));
        norm += v[i][p];
      }
      for (std::size_t p = 0; p < z[i].size(); ++p) {
        v[i][p] = s * v[i][p] / norm;
        y[i][p] = (sum_prev / sum) * y[i][p] + (a / sum) * v[i][p];
        x[i][p] = (sum / sum_next) * y[i][p] + (a_next / sum_next) * v[i][p];
      }
    }
    phis.push_back(game.potential(y));
    game.partial_gradients(x, g);
    sum_prev = sum;
  }
  return phis;
}

}  // namespace

TEST_CASE("run_simulation matches a plain reference implementation") {
  const auto game = fixture::two_player_game();
  const auto sched = StepSchedule::power(0.002, 1.0);
  SimulationConfig config{.schedule = sched};
  config.horizon = 300;
  const auto trace = run_simulation(game, config);
  const auto ref = reference_potentials(game, sched, 300);
  REQUIRE(trace.rows.size() == ref.size());
  for (std::size_t j = 0; j < ref.size(); ++j) {
    CHECK(trace.rows[j].k == static_cast<std::int64_t>(j + 1));
    CHECK(trace.rows[j].phi == doctest::Approx(ref[j]).epsilon(1e-11));
  }
}

TEST_CASE("run_simulation basics") {
  const auto game = fixture::two_player_game();
  SimulationConfig config{.schedule = StepSchedule::power(0.002, 1.0)};
  config.horizon = 0;
  CHECK(run_simulation(game, config).rows.empty());

  config.horizon = 200;
  config.delay = DelayModel::stochastic_uniform(3.0, 0.5);
  config.seed = 77;
  config.phi_star = 100.0;
  const auto a = run_simulation(game, config);
  const auto b = run_simulation(game, config);
  CHECK(metrics_csv(a.rows) == metrics_csv(b.rows));
  for (const auto& row : a.rows) CHECK(row.gap == row.phi - 100.0);
  config.seed = 78;
  CHECK(metrics_csv(run_simulation(game, config).rows) != metrics_csv(a.rows));
}

TEST_CASE("zero delay: freshest-feedback rule reproduces the instantaneous rule bitwise") {
  const auto game = fixture::two_player_game();
  SimulationConfig config{.schedule = StepSchedule::power(0.003, 1.0)};
  config.horizon = 100;
  std::vector<JointProfile> instantaneous;
  config.rule = UpdateRule::Instantaneous;
  config.observer = [&](const IterationView& view) { instantaneous.push_back(view.next_action); };
  const auto t1 = run_simulation(game, config);

  std::vector<JointProfile> freshest;
  config.rule = UpdateRule::FreshestFeedback;
  config.observer = [&](const IterationView& view) {
    freshest.push_back(view.next_action);
    for (auto s : view.timestamps) CHECK(s == view.k);
  };
  const auto t2 = run_simulation(game, config);
  CHECK(instantaneous == freshest);
  CHECK(metrics_csv(t1.rows) == metrics_csv(t2.rows));
}

TEST_CASE("iterates stay feasible and timestamps are monotone") {
  const auto game = fixture::two_player_game();
  SimulationConfig config{.schedule = StepSchedule::power(0.002, 0.5)};
  config.horizon = 500;
  config.delay = DelayModel::stochastic_uniform(2.0, 0.6);
  std::vector<std::int64_t> last(game.player_count(), 0);
  int infeasible = 0;
  int regressions = 0;
  config.observer = [&](const IterationView& view) {
    for (std::size_t i = 0; i < game.player_count(); ++i) {
      const auto& space = game.strategy_space(i);
      infeasible += !space.contains(view.average[i]) + !space.contains(view.next_action[i]);
      regressions += view.timestamps[i] < last[i] || view.timestamps[i] > view.k;
      last[i] = view.timestamps[i];
    }
  };
  run_simulation(game, config);
  CHECK(infeasible == 0);
  CHECK(regressions == 0);
}

TEST_CASE("staleness bounds") {
  const auto game = fixture::two_player_game();
  SimulationConfig config{.schedule = StepSchedule::power(0.002, 0.0)};

  config.horizon = 1000;
  config.delay = DelayModel::deterministic_power(3.0, 0.0);
  auto trace = run_simulation(game, config);
  std::int64_t worst = 0;
  for (const auto& row : trace.rows) worst = std::max(worst, row.max_staleness);
  CHECK(worst <= 4);
  CHECK(worst >= 3);
  CHECK(staleness_bound_check(trace, config.delay));

  config.horizon = 10000;
  config.delay = DelayModel::deterministic_power(1.0, 0.5);
  trace = run_simulation(game, config);
  CHECK(staleness_bound_check(trace, config.delay));

  config.horizon = 50;
  config.delay = DelayModel::none();
  trace = run_simulation(game, config);
  for (const auto& row : trace.rows) CHECK(row.max_staleness == 0);
  CHECK(staleness_bound_check(trace, config.delay));

  config.horizon = 3000;
  config.delay = DelayModel::stochastic_uniform(2.0, 0.5);
  CHECK(staleness_bound_check(run_simulation(game, config), config.delay));

  // A trace claiming more staleness than the model permits is rejected.
  SimulationTrace forged;
  forged.rows.push_back({20, 0, 0, 10, 0, 0});
  CHECK_FALSE(staleness_bound_check(forged, DelayModel::deterministic_power(3.0, 0.0)));
}
