#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dnash/delay.hpp"
#include "dnash/routing_game.hpp"
#include "dnash/simulation.hpp"
#include "dnash/step_schedule.hpp"

namespace dnash {

struct CaseSpec {
  std::string label;
  DelayModel delay = DelayModel::none();
  StepSchedule schedule = StepSchedule::power(1.0, 1.0);
  std::int64_t horizon = 1;
};

struct SuiteOptions {
  std::int64_t horizon = 100000;
  double undelayed_beta = 1.0;  // Power exponent without delay
  double delayed_beta = 0.0;    // Power exponent for delays growing slower than k
};

/// Schedule matching the growth of the delay: Power for alpha < 1 (beta from
/// `options`, a0 = mu_star / ((beta + 1) L)), Inverse for alpha = 1 and
/// InverseLog for alpha > 1, both with a0 = mu_star / L.
StepSchedule default_schedule(const DelayModel& delay, const SmoothnessBundle& bundle, const SuiteOptions& options);

/// Throws ScheduleError when a Power schedule fails validate_schedule on the
/// case horizon. Inverse and InverseLog are accepted as given.
void require_valid_schedule(const CaseSpec& spec, const SmoothnessBundle& bundle);

/// Deterministic delays:
///   case1  none
///   case2  D = 10, alpha = 0
///   case3  D = 50, alpha = 0
///   case4  D = 1, alpha = 0.3
///   case5  D = 1, alpha = 0.7
///   case6  D = 0.1, alpha = 1
std::vector<CaseSpec> fig1_suite(const SmoothnessBundle& bundle, const SuiteOptions& options = {});
/// fig1_suite with each delay replaced by its stochastic counterpart of equal mean.
std::vector<CaseSpec> fig2_suite(const SmoothnessBundle& bundle, const SuiteOptions& options = {});

struct ReferenceOptimum {
  double phi_star = 0.0;
  double epsilon_oracle = 0.0;
  double wardrop_gap = 0.0;
  double frank_wolfe_gap = 0.0;
  std::int64_t budget = 0;
  JointProfile x_star;  // final average iterate
};

/// Upper bound on Phi(x) - min Phi: wardrop_gap(x) times total demand, plus
/// the excess cost carried by routes below the Wardrop support tolerance.
/// By convexity Phi(x) - Phi(x*) <= <grad Phi(x), x - x*> <= frank_wolfe_gap(x),
/// and every supported route's excess is at most wardrop_gap(x), so the sum
/// dominates the Frank-Wolfe gap.
double oracle_tolerance(const RoutingGame& game, const JointProfile& profile);

/// Runs the undelayed method with Power(beta = 1, a0 = mu_star / (2 L)) for
/// `budget` iterations. phi_star is the smallest Phi(y_k) seen.
ReferenceOptimum estimate_reference_optimum(const RoutingGame& game, std::int64_t budget,
                                            const SmoothnessBundle& bundle);
ReferenceOptimum estimate_reference_optimum(const RoutingGame& game, std::int64_t budget);

struct CaseResult {
  CaseSpec spec;
  std::uint64_t seed = 0;
  SimulationTrace trace;
};

CaseResult run_case(const RoutingGame& game, const CaseSpec& spec, std::uint64_t seed, double phi_star);

/// Runs the cases concurrently; results keep the input order.
std::vector<CaseResult> run_suite(const RoutingGame& game, const std::vector<CaseSpec>& cases, std::uint64_t seed,
                                  double phi_star);

/// Header k,phi,gap,max_staleness,a_k,A_k then one row per iteration. Floats are
/// shortest round-trip decimals, lines end in LF.
std::string metrics_csv(const std::vector<TraceRow>& rows);
void write_metrics_csv(const std::vector<TraceRow>& rows, const std::filesystem::path& path);
/// Throws ParseError with the line number on malformed input.
std::vector<TraceRow> read_metrics_csv(const std::filesystem::path& path);

/// Least-squares slope of log(m_k) against log(k) for k in [k_min, k_max],
/// where m_k = min_{t <= k} gap_t. Points with m_k <= epsilon are dropped.
/// Throws InsufficientDataError when fewer than 10 points remain.
double fit_loglog_slope(const std::vector<TraceRow>& rows, std::int64_t k_min, std::int64_t k_max,
                        double epsilon = 0.0);

}  // namespace dnash
