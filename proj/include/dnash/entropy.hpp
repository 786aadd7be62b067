#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dnash {

/// The set { x >= 0 : sum(x) = scale } in R^dimension. Membership is checked
/// with an absolute tolerance of 1e-9 * scale on the sum.
class ScaledSimplex {
 public:
  ScaledSimplex(std::size_t dimension, double scale);

  std::size_t dimension() const noexcept { return dimension_; }
  double scale() const noexcept { return scale_; }
  double tolerance() const noexcept { return 1e-9 * scale_; }

  bool contains(std::span<const double> x) const noexcept;
  /// Throws DomainError describing the first violated condition.
  void require_contains(std::span<const double> x) const;

  std::vector<double> uniform_point() const;

 private:
  std::size_t dimension_;
  double scale_;
};

/// psi(x) = sum_p (x_p / S) log(x_p / S), with 0 log 0 = 0.
double entropy_eval(std::span<const double> x, const ScaledSimplex& space);

/// Gradient of entropy_eval at a strictly positive point: (log(x_p / S) + 1) / S.
std::vector<double> entropy_gradient(std::span<const double> x, const ScaledSimplex& space);

/// Mirror map: argmax over the simplex of <z, x> - psi(x), which is
/// S * softmax(S z). Uses max-subtraction; entries below 1e-300 are flushed to
/// zero and the remainder renormalized to the scale.
std::vector<double> entropy_mirror_map(std::span<const double> z, const ScaledSimplex& space);
void entropy_mirror_map(std::span<const double> z, const ScaledSimplex& space, std::span<double> out);

/// Scaled negative entropy on a scaled simplex together with its strong
/// convexity constant w.r.t. the l1 norm (1 / S^2).
class EntropyRegularizer {
 public:
  /// Runs a seeded sampled check of D(x, x') >= mu/2 |x - x'|_1^2 and throws
  /// DomainError if it fails.
  explicit EntropyRegularizer(ScaledSimplex space);

  const ScaledSimplex& space() const noexcept { return space_; }
  double strong_convexity() const noexcept { return mu_; }

  double value(std::span<const double> x) const { return entropy_eval(x, space_); }
  double bregman(std::span<const double> x, std::span<const double> x_ref) const;

 private:
  ScaledSimplex space_;
  double mu_;
};

double bregman(std::span<const double> x, std::span<const double> x_ref, const EntropyRegularizer& reg);

/// Draws a point of the simplex from the flat Dirichlet distribution.
template <typename Rng>
std::vector<double> sample_simplex_point(const ScaledSimplex& space, Rng& rng);

}  // namespace dnash

#include "dnash/detail/sampling.hpp"
