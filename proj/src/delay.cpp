#include "dnash/delay.hpp"

#include <cmath>
#include <sstream>

#include "dnash/detail/sampling.hpp"
#include "dnash/entropy.hpp"
#include "dnash/errors.hpp"

namespace dnash {

DelayModel::DelayModel(DelayKind kind, double scale, double exponent)
    : kind_(kind), scale_(scale), exponent_(exponent) {
  if (kind != DelayKind::None) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("delay scale D must be positive");
    if (!(exponent >= 0.0) || !std::isfinite(exponent)) throw DomainError("delay exponent must be nonnegative");
  }
}

DelayModel DelayModel::none() { return {DelayKind::None, 0.0, 0.0}; }

DelayModel DelayModel::deterministic_power(double scale, double exponent) {
  return {DelayKind::DeterministicPower, scale, exponent};
}

DelayModel DelayModel::stochastic_uniform(double scale, double exponent) {
  return {DelayKind::StochasticUniform, scale, exponent};
}

double DelayModel::nominal_delay(std::int64_t t) const {
  if (kind_ == DelayKind::None) return 0.0;
  return scale_ * std::pow(static_cast<double>(t), exponent_);
}

DelayModel DelayModel::as_stochastic() const {
  if (kind_ == DelayKind::None) return *this;
  return stochastic_uniform(scale_, exponent_);
}

std::string DelayModel::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case DelayKind::None:
      out << "none";
      break;
    case DelayKind::DeterministicPower:
      out << "deterministic(D=" << scale_ << ",alpha=" << exponent_ << ")";
      break;
    case DelayKind::StochasticUniform:
      out << "stochastic(D=" << scale_ << ",alpha=" << exponent_ << ")";
      break;
  }
  return out.str();
}

DelayStreams::DelayStreams(std::uint64_t seed, std::size_t players) {
  streams_.reserve(players);
  for (std::size_t i = 0; i < players; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32)};
    streams_.emplace_back(seq);
  }
}

std::int64_t arrival_iteration(const DelayModel& model, std::int64_t t, std::mt19937_64& rng) {
  switch (model.kind()) {
    case DelayKind::None:
      return t;
    case DelayKind::DeterministicPower:
      return t + static_cast<std::int64_t>(std::ceil(model.nominal_delay(t)));
    case DelayKind::StochasticUniform: {
      const double draw = uniform_in(rng, 0.0, 2.0 * model.nominal_delay(t));
      return static_cast<std::int64_t>(std::ceil(static_cast<double>(t) + draw));
    }
  }
  return t;
}

void FeedbackQueue::push(FeedbackMessage message) {
  if (message.arrival < message.origin) throw DomainError("feedback cannot arrive before it is generated");
  heap_.push(std::move(message));
}

std::vector<FeedbackMessage> FeedbackQueue::deliver(std::int64_t k) {
  std::vector<FeedbackMessage> batch;
  while (!heap_.empty() && heap_.top().arrival <= k) {
    // top() is const; the element is popped right after, so moving out is safe.
    batch.push_back(std::move(const_cast<FeedbackMessage&>(heap_.top())));
    heap_.pop();
  }
  return batch;
}

}  // namespace dnash
