#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

namespace dnash {

enum class DelayKind { None, DeterministicPower, StochasticUniform };

/// Feedback delay as a function of the iteration t a gradient was queried at.
///
///   None:                  d_t = 0
///   DeterministicPower:    d_t = D t^alpha for every player
///   StochasticUniform:     d_t ~ U[0, 2 D t^alpha] independently per player
class DelayModel {
 public:
  static DelayModel none();
  static DelayModel deterministic_power(double scale, double exponent);
  static DelayModel stochastic_uniform(double scale, double exponent);

  DelayKind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }
  double exponent() const noexcept { return exponent_; }

  /// D t^alpha; the mean delay for the stochastic kind.
  double nominal_delay(std::int64_t t) const;

  /// Same scale and exponent, with delays drawn uniformly around the same mean.
  DelayModel as_stochastic() const;

  std::string describe() const;

 private:
  DelayModel(DelayKind kind, double scale, double exponent);

  DelayKind kind_;
  double scale_;
  double exponent_;
};

/// Per-player random substreams for delay draws. Player i's stream depends
/// only on (seed, i), so draws do not shift when players are added.
class DelayStreams {
 public:
  DelayStreams(std::uint64_t seed, std::size_t players);

  std::mt19937_64& stream(std::size_t player) { return streams_.at(player); }

 private:
  std::vector<std::mt19937_64> streams_;
};

/// Iteration at which the gradient queried at iteration t reaches the player.
/// None gives t, DeterministicPower t + ceil(D t^alpha), StochasticUniform
/// ceil(t + U) with U ~ U[0, 2 D t^alpha] drawn from `rng`.
std::int64_t arrival_iteration(const DelayModel& model, std::int64_t t, std::mt19937_64& rng);

struct FeedbackMessage {
  std::int64_t origin = 0;  // iteration the gradient was queried at
  std::vector<double> gradient;
  std::int64_t arrival = 0;
};

/// Undelivered messages of one player, ordered by arrival iteration.
class FeedbackQueue {
 public:
  void push(FeedbackMessage message);

  /// Removes and returns every message with arrival <= k.
  std::vector<FeedbackMessage> deliver(std::int64_t k);

  std::size_t size() const noexcept { return heap_.size(); }
  bool empty() const noexcept { return heap_.empty(); }

 private:
  struct LaterArrival {
    bool operator()(const FeedbackMessage& a, const FeedbackMessage& b) const noexcept {
      return a.arrival != b.arrival ? a.arrival > b.arrival : a.origin > b.origin;
    }
  };
  std::priority_queue<FeedbackMessage, std::vector<FeedbackMessage>, LaterArrival> heap_;
};

}  // namespace dnash
