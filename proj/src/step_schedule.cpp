#include "dnash/step_schedule.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dnash/errors.hpp"

namespace dnash {

StepSchedule::StepSchedule(ScheduleFamily family, double a0, double beta) : family_(family), a0_(a0), beta_(beta) {
  if (!(a0 > 0.0) || !std::isfinite(a0)) throw ScheduleError("a0 must be positive and finite");
  if (family == ScheduleFamily::Power && !(beta >= 0.0 && beta <= 1.0)) {
    throw ScheduleError("power schedule exponent must lie in [0, 1]");
  }
}

StepSchedule StepSchedule::power(double a0, double beta) { return {ScheduleFamily::Power, a0, beta}; }
StepSchedule StepSchedule::inverse(double a0) { return {ScheduleFamily::Inverse, a0, 0.0}; }
StepSchedule StepSchedule::inverse_log(double a0) { return {ScheduleFamily::InverseLog, a0, 0.0}; }

double StepSchedule::step(std::int64_t k) const {
  if (k < 1) throw ScheduleError("step index must be at least 1");
  const auto kd = static_cast<double>(k);
  switch (family_) {
    case ScheduleFamily::Power:
      return beta_ == 1.0 ? a0_ * kd : a0_ * std::pow(kd, beta_);
    case ScheduleFamily::Inverse:
      return a0_ / kd;
    case ScheduleFamily::InverseLog:
      return a0_ / ((kd + 1.0) * std::log(kd + 1.0));
  }
  return 0.0;
}

double StepSchedule::partial_sum(std::int64_t k) const {
  double sum = 0.0;
  for (std::int64_t t = 1; t <= k; ++t) sum += step(t);
  return sum;
}

std::string StepSchedule::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (family_) {
    case ScheduleFamily::Power:
      out << "power(a0=" << a0_ << ",beta=" << beta_ << ")";
      break;
    case ScheduleFamily::Inverse:
      out << "inverse(a0=" << a0_ << ")";
      break;
    case ScheduleFamily::InverseLog:
      out << "inverse_log(a0=" << a0_ << ")";
      break;
  }
  return out.str();
}

StepCursor::StepCursor(const StepSchedule& schedule) : schedule_(schedule), a_next_(schedule.step(1)) {}

void StepCursor::advance() {
  ++k_;
  a_ = a_next_;
  sum_prev_ = sum_;
  sum_ = sum_prev_ + a_;
  a_next_ = schedule_.step(k_ + 1);
}

bool validate_schedule(const StepSchedule& schedule, const SmoothnessBundle& bundle, std::int64_t horizon) {
  // Schedules sitting exactly on the bound (a0 = mu_star / L at k = 1) must
  // not fail on the rounding of a^2 / A.
  const double limit = bundle.mu_star / bundle.lipschitz * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
  StepCursor cursor(schedule);
  for (std::int64_t k = 1; k <= horizon; ++k) {
    cursor.advance();
    if (cursor.a() * cursor.a() / cursor.sum() > limit) return false;
  }
  return true;
}

StepSchedule default_power_schedule(double beta, const SmoothnessBundle& bundle) {
  return StepSchedule::power(bundle.mu_star / ((beta + 1.0) * bundle.lipschitz), beta);
}

}  // namespace dnash
