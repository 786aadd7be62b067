#pragma once

#include <cstdint>
#include <string>

namespace dnash {

enum class ScheduleFamily { Power, Inverse, InverseLog };

/// Step sizes a_k (k >= 1) and their partial sums A_k = a_1 + ... + a_k.
///
///   Power(a0, beta):  a_k = a0 * k^beta,  beta in [0, 1]
///   Inverse(a0):      a_k = a0 / k
///   InverseLog(a0):   a_k = a0 / ((k + 1) log(k + 1))
class StepSchedule {
 public:
  static StepSchedule power(double a0, double beta);
  static StepSchedule inverse(double a0);
  static StepSchedule inverse_log(double a0);

  ScheduleFamily family() const noexcept { return family_; }
  double a0() const noexcept { return a0_; }
  double beta() const noexcept { return beta_; }

  /// a_k. Requires k >= 1.
  double step(std::int64_t k) const;
  /// A_k, accumulated as a running sum from A_0 = 0 (O(k)).
  double partial_sum(std::int64_t k) const;

  std::string describe() const;

 private:
  StepSchedule(ScheduleFamily family, double a0, double beta);

  ScheduleFamily family_;
  double a0_;
  double beta_;
};

/// Walks the schedule forward one index at a time, keeping a_k, A_{k-1}, A_k
/// and the one-step lookahead a_{k+1}, A_{k+1} that the update needs.
class StepCursor {
 public:
  explicit StepCursor(const StepSchedule& schedule);

  /// Moves from k to k + 1 (the cursor starts at k = 0).
  void advance();

  std::int64_t k() const noexcept { return k_; }
  double a() const noexcept { return a_; }
  double sum_prev() const noexcept { return sum_prev_; }
  double sum() const noexcept { return sum_; }
  double a_next() const noexcept { return a_next_; }
  double sum_next() const noexcept { return sum_ + a_next_; }

 private:
  StepSchedule schedule_;
  std::int64_t k_ = 0;
  double a_ = 0.0;
  double sum_prev_ = 0.0;
  double sum_ = 0.0;
  double a_next_;
};

/// Constants of a potential game that step sizes have to respect.
struct SmoothnessBundle {
  double lipschitz = 1.0;  // of the potential gradient, primal l1 / dual l-infinity
  double mu_star = 1.0;    // smallest regularizer strong-convexity constant
  double diameter = 1.0;   // of the joint strategy set in the block-max l1 norm
};

/// True iff max_{1<=k<=horizon} a_k^2 / A_k <= mu_star / lipschitz, up to a
/// relative rounding allowance of a few ulps.
bool validate_schedule(const StepSchedule& schedule, const SmoothnessBundle& bundle, std::int64_t horizon);

/// Power(beta) with a0 = mu_star / ((beta + 1) L); valid for every horizon.
StepSchedule default_power_schedule(double beta, const SmoothnessBundle& bundle);

}  // namespace dnash
