#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dnash/entropy.hpp"
#include "dnash/errors.hpp"
#include "dnash/step_schedule.hpp"
#include "oracles.hpp"

using namespace dnash;

namespace {

double objective(const std::vector<double>& z, const std::vector<double>& x, double scale) {
  double value = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    value += z[p] * x[p];
    if (x[p] > 0.0) value -= (x[p] / scale) * std::log(x[p] / scale);
  }
  return value;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) s += std::abs(a[p] - b[p]);
  return s;
}

}  // namespace

TEST_CASE("scaled simplex membership uses a relative tolerance") {
  ScaledSimplex s(2, 10.0);
  CHECK(s.contains(std::vector<double>{4.0, 6.0}));
  CHECK(s.contains(std::vector<double>{4.0, 6.0 + 5e-9}));
  CHECK_FALSE(s.contains(std::vector<double>{4.0, 6.0 + 5e-8}));
  CHECK_FALSE(s.contains(std::vector<double>{-1.0, 11.0}));
  CHECK_FALSE(s.contains(std::vector<double>{10.0}));
  CHECK_THROWS_AS(s.require_contains(std::vector<double>{1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(ScaledSimplex(0, 1.0), DomainError);
  CHECK_THROWS_AS(ScaledSimplex(2, 0.0), DomainError);
}

TEST_CASE("entropy_eval examples") {
  CHECK(entropy_eval(std::vector<double>{0.5, 0.5}, ScaledSimplex(2, 1.0)) == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
  CHECK(entropy_eval(std::vector<double>{1.0, 0.0}, ScaledSimplex(2, 1.0)) == 0.0);
  CHECK(entropy_eval(std::vector<double>{1, 1, 1, 1}, ScaledSimplex(4, 4.0)) == doctest::Approx(-std::log(4.0)).epsilon(1e-14));
  CHECK_THROWS_AS(entropy_eval(std::vector<double>{0.7, 0.7}, ScaledSimplex(2, 1.0)), DomainError);
}

TEST_CASE("entropy_eval is nonpositive and zero only at vertices") {
  std::mt19937_64 rng(3);
  ScaledSimplex s(5, 7.0);
  for (int t = 0; t < 200; ++t) CHECK(entropy_eval(sample_simplex_point(s, rng), s) < 0.0);
  CHECK(entropy_eval(std::vector<double>{0, 0, 7, 0, 0}, s) == 0.0);
}

TEST_CASE("mirror map examples") {
  const auto a = entropy_mirror_map(std::vector<double>{0.0, 0.0}, ScaledSimplex(2, 2.0));
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[1] == doctest::Approx(1.0));

  const auto b = entropy_mirror_map(std::vector<double>{std::log(3.0), 0.0}, ScaledSimplex(2, 1.0));
  CHECK(b[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(0.25).epsilon(1e-14));
  // Grid search of the argmax agrees with the closed form.
  CHECK(oracle::grid_argmax_2(std::log(3.0), 0.0, 1.0, 100000) == doctest::Approx(0.75).epsilon(1e-4));

  for (double c : {-700.0, -3.0, 0.0, 12.5, 800.0}) {
    const auto v = entropy_mirror_map(std::vector<double>{c + std::log(3.0), c}, ScaledSimplex(2, 1.0));
    CHECK(v[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("mirror map rejects non-finite input and stays on the simplex") {
  ScaledSimplex s(3, 5.0);
  CHECK_THROWS_AS(entropy_mirror_map(std::vector<double>{0.0, NAN, 1.0}, s), DomainError);
  CHECK_THROWS_AS(entropy_mirror_map(std::vector<double>{0.0, INFINITY, 1.0}, s), DomainError);
  CHECK_THROWS_AS(entropy_mirror_map(std::vector<double>{0.0, 1.0}, s), DomainError);
  // Extreme spread: tiny entries are flushed and the rest renormalized.
  const auto v = entropy_mirror_map(std::vector<double>{0.0, -1e6, -200.0}, s);
  CHECK(v[1] == 0.0);
  CHECK(s.contains(v));
}

TEST_CASE("mirror map attains the grid maximum of <z, x> - psi(x)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  for (double scale : {1.0, 2.5, 14.0}) {
    ScaledSimplex s(3, scale);
    for (int t = 0; t < 20; ++t) {
      const std::vector<double> z = {entry(rng), entry(rng), entry(rng)};
      const auto x = entropy_mirror_map(z, s);
      const double at_map = objective(z, x, scale);
      double grid_best = -INFINITY;
      const int n = 400;
      for (int j = 0; j <= n; ++j) {
        for (int l = 0; j + l <= n; ++l) {
          const std::vector<double> g = {scale * j / n, scale * l / n, scale * (n - j - l) / n};
          grid_best = std::max(grid_best, objective(z, g, scale));
        }
      }
      CHECK(at_map >= grid_best - 1e-6);
    }
  }
}

TEST_CASE("mirror map inverts the entropy gradient") {
  std::mt19937_64 rng(5);
  ScaledSimplex s(6, 13.0);
  for (int t = 0; t < 50; ++t) {
    const auto x = sample_simplex_point(s, rng);
    const auto back = entropy_mirror_map(entropy_gradient(x, s), s);
    for (std::size_t p = 0; p < x.size(); ++p) CHECK(back[p] == doctest::Approx(x[p]).epsilon(1e-10));
  }
}

TEST_CASE("entropy gradient matches finite differences") {
  ScaledSimplex s(3, 4.0);
  const std::vector<double> x = {1.0, 2.5, 0.5};
  const auto g = entropy_gradient(x, s);
  for (std::size_t p = 0; p < 3; ++p) {
    auto f = [&](double v) {
      double val = 0.0;
      for (std::size_t q = 0; q < 3; ++q) {
        const double u = (q == p ? v : x[q]) / 4.0;
        val += u * std::log(u);
      }
      return val;
    };
    const double h = 1e-6;
    CHECK(g[p] == doctest::Approx((f(x[p] + h) - f(x[p] - h)) / (2 * h)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(entropy_gradient(std::vector<double>{4.0, 0.0, 0.0}, s), DomainError);
}

TEST_CASE("mirror map is 1/mu Lipschitz from l-infinity to l1") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> entry(-20.0, 20.0);
  for (double scale : {1.0, 3.0, 17.0}) {
    ScaledSimplex s(4, scale);
    const double mu = 1.0 / (scale * scale);
    int violations = 0;
    for (int t = 0; t < 2000; ++t) {
      std::vector<double> z(4), w(4);
      for (auto& v : z) v = entry(rng);
      for (auto& v : w) v = entry(rng);
      double dz = 0.0;
      for (int p = 0; p < 4; ++p) dz = std::max(dz, std::abs(z[p] - w[p]));
      if (l1(entropy_mirror_map(z, s), entropy_mirror_map(w, s)) > dz / mu * (1 + 1e-12)) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("bregman examples") {
  EntropyRegularizer reg(ScaledSimplex(2, 1.0));
  CHECK(reg.strong_convexity() == 1.0);
  CHECK(bregman(std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5}, reg) == 0.0);
  CHECK(bregman(std::vector<double>{0.75, 0.25}, std::vector<double>{0.5, 0.5}, reg) ==
        doctest::Approx(0.75 * std::log(1.5) + 0.25 * std::log(0.5)).epsilon(1e-14));
  CHECK(0.75 * std::log(1.5) + 0.25 * std::log(0.5) == doctest::Approx(0.130812).epsilon(1e-6));
  CHECK_THROWS_AS(bregman(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}, reg), DomainError);
}

TEST_CASE("bregman equals the definition and dominates the strong convexity bound") {
  std::mt19937_64 rng(23);
  for (double scale : {1.0, 6.0, 19.5}) {
    ScaledSimplex s(5, scale);
    EntropyRegularizer reg(s);
    CHECK(reg.strong_convexity() == doctest::Approx(1.0 / (scale * scale)));
    for (int t = 0; t < 300; ++t) {
      const auto x = sample_simplex_point(s, rng);
      const auto r = sample_simplex_point(s, rng);
      const auto g = entropy_gradient(r, s);
      double def = entropy_eval(x, s) - entropy_eval(r, s);
      for (std::size_t p = 0; p < x.size(); ++p) def -= g[p] * (x[p] - r[p]);
      const double d = reg.bregman(x, r);
      CHECK(d == doctest::Approx(std::max(def, 0.0)).epsilon(1e-9).scale(1e-12));
      const double dist = l1(x, r);
      CHECK(d >= 0.5 * reg.strong_convexity() * dist * dist - 1e-12);
    }
  }
}

TEST_CASE("schedule examples") {
  CHECK(StepSchedule::power(0.5, 1.0).step(4) == 2.0);
  CHECK(StepSchedule::inverse(1.0).step(4) == 0.25);
  CHECK(StepSchedule::inverse_log(1.0).step(1) == doctest::Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-15));
  CHECK(StepSchedule::inverse_log(1.0).step(1) == doctest::Approx(0.721348).epsilon(1e-6));

  for (const auto& s : {StepSchedule::power(0.5, 1.0), StepSchedule::inverse(1.0), StepSchedule::inverse_log(2.0)}) {
    CHECK(s.partial_sum(0) == 0.0);
  }
  CHECK(StepSchedule::power(0.5, 1.0).partial_sum(4) == 5.0);
  CHECK(StepSchedule::inverse(1.0).partial_sum(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("schedule validation of parameters") {
  CHECK_THROWS_AS(StepSchedule::power(0.0, 1.0), ScheduleError);
  CHECK_THROWS_AS(StepSchedule::power(1.0, 1.5), ScheduleError);
  CHECK_THROWS_AS(StepSchedule::power(1.0, -0.1), ScheduleError);
  CHECK_THROWS_AS(StepSchedule::inverse(-1.0), ScheduleError);
  CHECK_THROWS_AS(StepSchedule::power(1.0, 1.0).step(0), ScheduleError);
}

TEST_CASE("cursor increments match a_k and A_k") {
  for (const auto& s : {StepSchedule::power(0.3, 0.5), StepSchedule::inverse(0.7), StepSchedule::inverse_log(1.1)}) {
    StepCursor cursor(s);
    double prev = 0.0;
    for (int k = 1; k <= 2000; ++k) {
      cursor.advance();
      CHECK(cursor.a() == s.step(k));
      CHECK(cursor.sum_prev() == prev);
      // A_k - A_{k-1} recovers a_k up to the rounding of one addition.
      const double ulp = std::nextafter(cursor.sum(), INFINITY) - cursor.sum();
      CHECK(std::abs((cursor.sum() - cursor.sum_prev()) - cursor.a()) <= ulp);
      CHECK(cursor.a_next() == s.step(k + 1));
      CHECK(cursor.sum_next() == cursor.sum() + cursor.a_next());
      if (k % 250 == 0) CHECK(s.partial_sum(k) == cursor.sum());
      prev = cursor.sum();
    }
  }
  // Exactly representable steps give exact differences.
  StepCursor cursor(StepSchedule::power(0.5, 1.0));
  for (int k = 1; k <= 1000; ++k) {
    cursor.advance();
    CHECK(cursor.sum() - cursor.sum_prev() == cursor.a());
  }
}

TEST_CASE("power partial sums dominate the integral bound") {
  for (double beta : {0.0, 0.3, 0.5, 1.0}) {
    const double a0 = 0.01;
    StepCursor cursor(StepSchedule::power(a0, beta));
    int violations = 0;
    for (int k = 1; k <= 100000; ++k) {
      cursor.advance();
      if (cursor.sum() < a0 * std::pow(k, beta + 1.0) / (beta + 1.0) * (1 - 1e-12)) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("validate_schedule examples") {
  const SmoothnessBundle b{2.0, 0.1, 10.0};
  CHECK(validate_schedule(StepSchedule::power(b.mu_star / (2 * b.lipschitz), 1.0), b, 100000));
  CHECK_FALSE(validate_schedule(StepSchedule::power(10 * b.mu_star / b.lipschitz, 0.0), b, 1));
  CHECK(validate_schedule(StepSchedule::power(b.mu_star / (1.5 * b.lipschitz), 0.5), b, 1000000));
  CHECK(validate_schedule(default_power_schedule(0.0, b), b, 1000));
  CHECK(validate_schedule(StepSchedule::inverse(b.mu_star / b.lipschitz), b, 1000));
  CHECK(validate_schedule(StepSchedule::inverse_log(b.mu_star / b.lipschitz), b, 1000));
  CHECK(default_power_schedule(1.0, b).a0() == doctest::Approx(b.mu_star / (2 * b.lipschitz)));
}
