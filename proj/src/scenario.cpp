#include "dnash/scenario.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "dnash/detail/sampling.hpp"
#include "dnash/errors.hpp"

namespace dnash {

using nlohmann::json;

namespace {

constexpr int kMaxRejections = 10000;

double draw(std::mt19937_64& rng, const Range& range) { return uniform_in(rng, range.lo, range.hi); }

template <typename T>
T field(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(std::string(where) + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& err) {
    throw SchemaError(std::string(where) + ": field '" + key + "' has the wrong type (" + err.what() + ")");
  }
}

}  // namespace

RoutingGame sample_scenario(const RoadNetwork& network, const ScenarioConfig& config) {
  std::mt19937_64 rng(config.seed);

  std::vector<BprParams> bpr = network.bpr();
  if (!config.native_bpr) {
    for (BprParams& p : bpr) {
      p.free_flow = draw(rng, config.free_flow);
      p.coefficient = draw(rng, config.coefficient);
      p.capacity = draw(rng, config.capacity);
      p.power = draw(rng, config.power);
    }
  }
  RoadNetwork sampled = network.with_bpr(std::move(bpr));

  const int n = sampled.node_count();
  std::vector<std::vector<bool>> reach;
  reach.reserve(static_cast<std::size_t>(n) + 1);
  reach.emplace_back();
  for (int node = 1; node <= n; ++node) reach.push_back(sampled.reachable_from(node));

  std::set<std::pair<int, int>> used;
  std::vector<PlayerSpec> players;
  players.reserve(config.player_count);
  for (std::size_t i = 0; i < config.player_count; ++i) {
    int rejections = 0;
    int origin = 0;
    int destination = 0;
    while (true) {
      origin = 1 + static_cast<int>(uniform01(rng) * n);
      destination = 1 + static_cast<int>(uniform01(rng) * n);
      const bool ok = origin != destination && reach[static_cast<std::size_t>(origin)][static_cast<std::size_t>(destination)] &&
                      !used.contains({origin, destination});
      if (ok) break;
      if (++rejections >= kMaxRejections) {
        throw InfeasibleScenarioError("could not draw O/D pair for player " + std::to_string(i) + " after " +
                                      std::to_string(kMaxRejections) + " rejections");
      }
    }
    used.insert({origin, destination});
    PlayerSpec player;
    player.origin = origin;
    player.destination = destination;
    player.routes = enumerate_routes(sampled, origin, destination, config.routes_per_player).routes;
    player.demand = draw(rng, config.demand);
    players.push_back(std::move(player));
  }
  return {std::move(sampled), std::move(players)};
}

RoutingGame desk_fixture() {
  ScenarioConfig config;
  config.player_count = 10;
  config.routes_per_player = 5;
  config.seed = 42;
  return sample_scenario(make_grid_network(5, 5), config);
}

std::string save_scenario(const RoutingGame& game) {
  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["node_count"] = game.network().node_count();
  json edges = json::array();
  for (std::size_t e = 0; e < game.network().edge_count(); ++e) {
    const Edge& edge = game.network().edge(e);
    const BprParams& p = game.network().bpr(e);
    edges.push_back({{"tail", edge.tail},
                     {"head", edge.head},
                     {"free_flow", p.free_flow},
                     {"coefficient", p.coefficient},
                     {"capacity", p.capacity},
                     {"power", p.power}});
  }
  doc["edges"] = std::move(edges);
  json players = json::array();
  for (const PlayerSpec& player : game.players()) {
    players.push_back({{"origin", player.origin},
                       {"destination", player.destination},
                       {"demand", player.demand},
                       {"routes", player.routes}});
  }
  doc["players"] = std::move(players);
  return doc.dump(1) + "\n";
}

RoutingGame load_scenario(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& err) {
    throw SchemaError(std::string("scenario is not valid JSON: ") + err.what());
  }
  const int version = field<int>(doc, "schema_version", "scenario");
  if (version != kScenarioSchemaVersion) {
    throw SchemaError("unsupported scenario schema_version " + std::to_string(version) + " (expected " +
                      std::to_string(kScenarioSchemaVersion) + ")");
  }
  const int node_count = field<int>(doc, "node_count", "scenario");
  const json edges_doc = field<json>(doc, "edges", "scenario");
  const json players_doc = field<json>(doc, "players", "scenario");
  if (!edges_doc.is_array()) throw SchemaError("scenario: 'edges' must be an array");
  if (!players_doc.is_array()) throw SchemaError("scenario: 'players' must be an array");

  std::vector<Edge> edges;
  std::vector<BprParams> bpr;
  for (const json& e : edges_doc) {
    edges.push_back({field<int>(e, "tail", "edge"), field<int>(e, "head", "edge")});
    bpr.push_back({field<double>(e, "free_flow", "edge"), field<double>(e, "coefficient", "edge"),
                   field<double>(e, "capacity", "edge"), field<double>(e, "power", "edge")});
  }
  std::vector<PlayerSpec> players;
  for (const json& p : players_doc) {
    PlayerSpec player;
    player.origin = field<int>(p, "origin", "player");
    player.destination = field<int>(p, "destination", "player");
    player.demand = field<double>(p, "demand", "player");
    player.routes = field<std::vector<Route>>(p, "routes", "player");
    players.push_back(std::move(player));
  }
  return {RoadNetwork(node_count, std::move(edges), std::move(bpr)), std::move(players)};
}

void save_scenario_file(const RoutingGame& game, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << save_scenario(game);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

RoutingGame load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

}  // namespace dnash
