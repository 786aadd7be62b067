#include "dnash/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dnash/errors.hpp"

namespace dnash {

namespace {

constexpr double kFlushBelow = 1e-300;

void require_finite(std::span<const double> z) {
  for (std::size_t p = 0; p < z.size(); ++p) {
    if (!std::isfinite(z[p])) {
      std::ostringstream msg;
      msg << "dual vector entry " << p << " is not finite";
      throw DomainError(msg.str());
    }
  }
}

void require_dimension(std::span<const double> v, const ScaledSimplex& space, const char* what) {
  if (v.size() != space.dimension()) {
    std::ostringstream msg;
    msg << what << " has dimension " << v.size() << ", expected " << space.dimension();
    throw DomainError(msg.str());
  }
}

}  // namespace

ScaledSimplex::ScaledSimplex(std::size_t dimension, double scale) : dimension_(dimension), scale_(scale) {
  if (dimension == 0) throw DomainError("simplex dimension must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("simplex scale must be positive and finite");
}

bool ScaledSimplex::contains(std::span<const double> x) const noexcept {
  if (x.size() != dimension_) return false;
  double sum = 0.0;
  for (double v : x) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - scale_) <= tolerance();
}

void ScaledSimplex::require_contains(std::span<const double> x) const {
  require_dimension(x, *this, "point");
  double sum = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!(x[p] >= 0.0) || !std::isfinite(x[p])) {
      std::ostringstream msg;
      msg << "entry " << p << " = " << x[p] << " is not a finite nonnegative number";
      throw DomainError(msg.str());
    }
    sum += x[p];
  }
  if (std::abs(sum - scale_) > tolerance()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << sum << ", expected " << scale_;
    throw DomainError(msg.str());
  }
}

std::vector<double> ScaledSimplex::uniform_point() const {
  return std::vector<double>(dimension_, scale_ / static_cast<double>(dimension_));
}

double entropy_eval(std::span<const double> x, const ScaledSimplex& space) {
  space.require_contains(x);
  const double s = space.scale();
  double value = 0.0;
  for (double v : x) {
    if (v > 0.0) {
      const double u = v / s;
      value += u * std::log(u);
    }
  }
  return value;
}

std::vector<double> entropy_gradient(std::span<const double> x, const ScaledSimplex& space) {
  space.require_contains(x);
  const double s = space.scale();
  std::vector<double> g(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!(x[p] > 0.0)) throw DomainError("entropy gradient is undefined on the simplex boundary");
    g[p] = (std::log(x[p] / s) + 1.0) / s;
  }
  return g;
}

void entropy_mirror_map(std::span<const double> z, const ScaledSimplex& space, std::span<double> out) {
  require_dimension(z, space, "dual vector");
  require_dimension(out, space, "output");
  require_finite(z);
  const double s = space.scale();
  const double zmax = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (std::size_t p = 0; p < z.size(); ++p) {
    out[p] = std::exp(s * (z[p] - zmax));
    total += out[p];
  }
  // The argmax entry contributes exp(0) = 1, so total >= 1.
  double kept = 0.0;
  for (double& v : out) {
    v /= total;
    if (v < kFlushBelow) v = 0.0;
    kept += v;
  }
  for (double& v : out) v = s * (v / kept);
}

std::vector<double> entropy_mirror_map(std::span<const double> z, const ScaledSimplex& space) {
  std::vector<double> out(space.dimension());
  entropy_mirror_map(z, space, out);
  return out;
}

EntropyRegularizer::EntropyRegularizer(ScaledSimplex space)
    : space_(space), mu_(1.0 / (space.scale() * space.scale())) {
  if (space_.dimension() == 1) return;
  std::mt19937_64 rng(0x5eedULL + space_.dimension());
  for (int trial = 0; trial < 32; ++trial) {
    const auto x = sample_simplex_point(space_, rng);
    auto ref = sample_simplex_point(space_, rng);
    if (std::any_of(ref.begin(), ref.end(), [](double v) { return !(v > 0.0); })) continue;
    double l1 = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) l1 += std::abs(x[p] - ref[p]);
    const double lower = 0.5 * mu_ * l1 * l1;
    if (bregman(x, ref) < lower - 1e-12) {
      throw DomainError("sampled Bregman divergence violates the strong convexity lower bound");
    }
  }
}

double EntropyRegularizer::bregman(std::span<const double> x, std::span<const double> x_ref) const {
  space_.require_contains(x);
  space_.require_contains(x_ref);
  const double s = space_.scale();
  // For sum-preserving pairs the linear term of the gradient cancels, leaving
  // the scaled Kullback-Leibler divergence.
  double value = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!(x_ref[p] > 0.0)) throw DomainError("Bregman reference point must be strictly positive");
    if (x[p] > 0.0) value += (x[p] / s) * std::log(x[p] / x_ref[p]);
  }
  double sum_x = 0.0;
  double sum_ref = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    sum_x += x[p];
    sum_ref += x_ref[p];
  }
  value -= (sum_x - sum_ref) / s;
  return std::max(value, 0.0);
}

double bregman(std::span<const double> x, std::span<const double> x_ref, const EntropyRegularizer& reg) {
  return reg.bregman(x, x_ref);
}

}  // namespace dnash
