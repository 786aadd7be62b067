#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dnash/network.hpp"
#include "dnash/routing_game.hpp"

namespace dnash {

/// Closed interval [lo, hi]; draws land in [lo, hi).
struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct ScenarioConfig {
  std::size_t player_count = 200;
  std::size_t routes_per_player = 20;
  Range free_flow{2.0, 3.0};
  Range coefficient{3.0, 13.0};
  Range capacity{60.0, 80.0};
  Range power{1.0, 1.5};
  Range demand{10.0, 20.0};
  std::uint64_t seed = 0;
  /// Keep the network's own BPR parameters instead of drawing new ones.
  bool native_bpr = false;
};

/// Random routing game on `network`, fully determined by the config:
///   1. BPR parameters (a, b, c, r) drawn per edge in edge-index order,
///   2. per player, a distinct ordered O/D pair with a directed path,
///      its k shortest free-flow routes, then its demand.
/// Throws InfeasibleScenarioError after 10^4 consecutive O/D rejections.
RoutingGame sample_scenario(const RoadNetwork& network, const ScenarioConfig& config);

/// The 5 x 5 grid, 10 players with 5 routes each and the default parameter
/// ranges, seeded with 42. Used by the acceptance suite and the CLI default.
RoutingGame desk_fixture();

inline constexpr int kScenarioSchemaVersion = 1;

/// Versioned JSON document; floats are written as shortest round-trip decimals.
std::string save_scenario(const RoutingGame& game);
/// Throws SchemaError on a version mismatch, a missing field or a wrong type.
RoutingGame load_scenario(const std::string& document);

void save_scenario_file(const RoutingGame& game, const std::filesystem::path& path);
RoutingGame load_scenario_file(const std::filesystem::path& path);

}  // namespace dnash
