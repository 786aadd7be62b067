#include "dnash/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <system_error>

#include "dnash/errors.hpp"

namespace dnash {

namespace {

void append_double(std::string& out, double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("failed to format a floating-point value");
  out.append(buf, end);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char* column) {
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw ParseError(line, std::string("bad value in column ") + column + ": '" + std::string(field) + "'");
  }
  return value;
}

constexpr const char* kCsvHeader = "k,phi,gap,max_staleness,a_k,A_k";

}  // namespace

StepSchedule default_schedule(const DelayModel& delay, const SmoothnessBundle& bundle, const SuiteOptions& options) {
  if (delay.kind() == DelayKind::None) return default_power_schedule(options.undelayed_beta, bundle);
  const double alpha = delay.exponent();
  const double a0 = bundle.mu_star / bundle.lipschitz;
  if (alpha < 1.0) return default_power_schedule(options.delayed_beta, bundle);
  if (alpha == 1.0) return StepSchedule::inverse(a0);
  return StepSchedule::inverse_log(a0);
}

void require_valid_schedule(const CaseSpec& spec, const SmoothnessBundle& bundle) {
  if (spec.schedule.family() != ScheduleFamily::Power) return;
  if (!validate_schedule(spec.schedule, bundle, spec.horizon)) {
    throw ScheduleError(spec.label + ": " + spec.schedule.describe() + " violates a_k^2 / A_k <= mu_star / L");
  }
}

std::vector<CaseSpec> fig1_suite(const SmoothnessBundle& bundle, const SuiteOptions& options) {
  const std::vector<std::pair<std::string, DelayModel>> delays = {
      {"case1", DelayModel::none()},
      {"case2", DelayModel::deterministic_power(10.0, 0.0)},
      {"case3", DelayModel::deterministic_power(50.0, 0.0)},
      {"case4", DelayModel::deterministic_power(1.0, 0.3)},
      {"case5", DelayModel::deterministic_power(1.0, 0.7)},
      {"case6", DelayModel::deterministic_power(0.1, 1.0)},
  };
  std::vector<CaseSpec> cases;
  for (const auto& [label, delay] : delays) {
    cases.push_back({label, delay, default_schedule(delay, bundle, options), options.horizon});
  }
  return cases;
}

std::vector<CaseSpec> fig2_suite(const SmoothnessBundle& bundle, const SuiteOptions& options) {
  auto cases = fig1_suite(bundle, options);
  for (CaseSpec& spec : cases) spec.delay = spec.delay.as_stochastic();
  return cases;
}

double oracle_tolerance(const RoutingGame& game, const JointProfile& profile) {
  constexpr double kSupportTol = 1e-6;
  JointProfile costs;
  game.partial_gradients(profile, costs);
  double tail = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const double best = *std::min_element(costs[i].begin(), costs[i].end());
    const double threshold = kSupportTol * game.players()[i].demand;
    for (std::size_t p = 0; p < costs[i].size(); ++p) {
      if (profile[i][p] <= threshold) tail += profile[i][p] * (costs[i][p] - best);
    }
  }
  return game.wardrop_gap(profile, kSupportTol) * game.total_demand() + tail;
}

ReferenceOptimum estimate_reference_optimum(const RoutingGame& game, std::int64_t budget,
                                            const SmoothnessBundle& bundle) {
  if (budget < 1) throw DomainError("oracle budget must be positive");
  SimulationConfig config{.schedule = default_power_schedule(1.0, bundle)};
  config.horizon = budget;
  const SimulationTrace trace = run_simulation(game, config);

  ReferenceOptimum result;
  result.budget = budget;
  result.phi_star = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : trace.rows) result.phi_star = std::min(result.phi_star, row.phi);
  result.x_star = trace.final_average;
  result.wardrop_gap = game.wardrop_gap(result.x_star);
  result.frank_wolfe_gap = game.frank_wolfe_gap(result.x_star);
  result.epsilon_oracle = oracle_tolerance(game, result.x_star);
  return result;
}

ReferenceOptimum estimate_reference_optimum(const RoutingGame& game, std::int64_t budget) {
  return estimate_reference_optimum(game, budget, estimate_smoothness(game));
}

CaseResult run_case(const RoutingGame& game, const CaseSpec& spec, std::uint64_t seed, double phi_star) {
  if (spec.horizon < 0) throw DomainError(spec.label + ": horizon must be nonnegative");
  SimulationConfig config{.schedule = spec.schedule};
  config.delay = spec.delay;
  config.horizon = spec.horizon;
  config.seed = seed;
  config.phi_star = phi_star;
  return {spec, seed, run_simulation(game, config)};
}

std::vector<CaseResult> run_suite(const RoutingGame& game, const std::vector<CaseSpec>& cases, std::uint64_t seed,
                                  double phi_star) {
  std::vector<std::future<CaseResult>> pending;
  pending.reserve(cases.size());
  for (const CaseSpec& spec : cases) {
    pending.push_back(std::async(std::launch::async, [&game, &spec, seed, phi_star] {
      return run_case(game, spec, seed, phi_star);
    }));
  }
  std::vector<CaseResult> results;
  results.reserve(cases.size());
  for (auto& f : pending) results.push_back(f.get());
  return results;
}

std::string metrics_csv(const std::vector<TraceRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  out.reserve(out.size() + rows.size() * 96);
  for (const TraceRow& row : rows) {
    out += std::to_string(row.k);
    out += ',';
    append_double(out, row.phi);
    out += ',';
    append_double(out, row.gap);
    out += ',';
    out += std::to_string(row.max_staleness);
    out += ',';
    append_double(out, row.a_k);
    out += ',';
    append_double(out, row.A_k);
    out += '\n';
  }
  return out;
}

void write_metrics_csv(const std::vector<TraceRow>& rows, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string text = metrics_csv(rows);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

std::vector<TraceRow> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  std::vector<TraceRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError(1, "expected header '" + std::string(kCsvHeader) + "'");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 6) throw ParseError(line_no, "expected 6 fields, found " + std::to_string(fields.size()));
    TraceRow row;
    row.k = parse_field<std::int64_t>(fields[0], line_no, "k");
    row.phi = parse_field<double>(fields[1], line_no, "phi");
    row.gap = parse_field<double>(fields[2], line_no, "gap");
    row.max_staleness = parse_field<std::int64_t>(fields[3], line_no, "max_staleness");
    row.a_k = parse_field<double>(fields[4], line_no, "a_k");
    row.A_k = parse_field<double>(fields[5], line_no, "A_k");
    rows.push_back(row);
  }
  if (line_no == 0) throw ParseError(1, "empty metrics file");
  return rows;
}

double fit_loglog_slope(const std::vector<TraceRow>& rows, std::int64_t k_min, std::int64_t k_max, double epsilon) {
  if (k_min < 1 || k_max <= k_min) throw DomainError("slope window needs 1 <= k_min < k_max");
  std::vector<double> xs;
  std::vector<double> ys;
  double envelope = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : rows) {
    envelope = std::min(envelope, row.gap);
    if (row.k < k_min || row.k > k_max) continue;
    if (!(envelope > epsilon)) continue;
    xs.push_back(std::log(static_cast<double>(row.k)));
    ys.push_back(std::log(envelope));
  }
  if (xs.size() < 10) {
    std::ostringstream msg;
    msg << "only " << xs.size() << " usable points in [" << k_min << ", " << k_max << "]";
    throw InsufficientDataError(msg.str());
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    mx += xs[j];
    my += ys[j];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sxy += (xs[j] - mx) * (ys[j] - my);
    sxx += (xs[j] - mx) * (xs[j] - mx);
  }
  return sxy / sxx;
}

}  // namespace dnash
