#include "dnash/agd.hpp"

#include <algorithm>

#include "dnash/errors.hpp"

namespace dnash {

PlayerState PlayerState::initial(std::span<const double> start, std::span<const double> first_gradient,
                                 const ScaledSimplex& space) {
  space.require_contains(start);
  if (first_gradient.size() != space.dimension()) throw DomainError("gradient dimension mismatch");
  PlayerState state;
  state.x_next.assign(start.begin(), start.end());
  state.y.assign(start.size(), 0.0);
  state.z = entropy_gradient(start, space);
  state.v.assign(start.begin(), start.end());
  state.g_star.assign(first_gradient.begin(), first_gradient.end());
  state.s = 1;
  return state;
}

StepWeights StepWeights::from(const StepCursor& cursor) {
  return {cursor.a(), cursor.sum_prev(), cursor.sum(), cursor.a_next(), cursor.sum_next()};
}

StepWeights StepWeights::at(const StepSchedule& schedule, std::int64_t k) {
  if (k < 1) throw ScheduleError("iteration index must be at least 1");
  StepCursor cursor(schedule);
  while (cursor.k() < k) cursor.advance();
  return from(cursor);
}

void apply_update(PlayerState& state, std::span<const double> g, const ScaledSimplex& space, const StepWeights& w) {
  if (!(w.sum > 0.0) || !(w.sum_next > 0.0)) throw ScheduleError("partial step sum A_k must be positive");
  if (g.size() != state.z.size()) throw DomainError("gradient dimension mismatch");
  for (std::size_t p = 0; p < g.size(); ++p) state.z[p] -= w.a * g[p];
  entropy_mirror_map(state.z, space, state.v);
  const double keep = w.sum_prev / w.sum;
  const double mix = w.a / w.sum;
  const double keep_next = w.sum / w.sum_next;
  const double mix_next = w.a_next / w.sum_next;
  for (std::size_t p = 0; p < g.size(); ++p) {
    state.y[p] = keep * state.y[p] + mix * state.v[p];
    state.x_next[p] = keep_next * state.y[p] + mix_next * state.v[p];
  }
}

PlayerState alg1_step(PlayerState state, std::span<const double> g_k, const ScaledSimplex& space,
                      const StepSchedule& schedule, std::int64_t k) {
  apply_update(state, g_k, space, StepWeights::at(schedule, k));
  return state;
}

bool accept_freshest(PlayerState& state, std::vector<FeedbackMessage>& inbox) {
  if (inbox.empty()) return false;
  auto freshest = std::max_element(inbox.begin(), inbox.end(),
                                   [](const FeedbackMessage& a, const FeedbackMessage& b) { return a.origin < b.origin; });
  if (freshest->origin <= state.s) return false;
  state.s = freshest->origin;
  state.g_star = std::move(freshest->gradient);
  return true;
}

PlayerState alg2_step(PlayerState state, std::vector<FeedbackMessage> inbox, const ScaledSimplex& space,
                      const StepSchedule& schedule, std::int64_t k) {
  accept_freshest(state, inbox);
  apply_update(state, state.g_star, space, StepWeights::at(schedule, k));
  return state;
}

}  // namespace dnash
