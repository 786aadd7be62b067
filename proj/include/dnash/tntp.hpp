#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "dnash/network.hpp"

namespace dnash {

struct TntpLink {
  int init_node = 0;
  int term_node = 0;
  double capacity = 0.0;
  double length = 0.0;
  double free_flow_time = 0.0;
  double b = 0.0;
  double power = 0.0;
  double speed = 0.0;
  double toll = 0.0;
  int link_type = 0;
};

struct TntpNetwork {
  int zone_count = 0;
  int node_count = 0;
  int first_thru_node = 0;
  int declared_link_count = 0;
  std::vector<TntpLink> links;

  /// Topology with the file's edge order. With `native_bpr` the BPR
  /// parameters come from the free-flow time, B, capacity and power columns;
  /// otherwise every parameter is 1 (to be overwritten by scenario sampling).
  RoadNetwork to_road_network(bool native_bpr = false) const;
};

/// Parses a TransportationNetworks `*_net.tntp` file: `<KEY> value` metadata
/// up to `<END OF METADATA>`, `~` comments, then one whitespace-separated link
/// row per line terminated by `;`.
///
/// Throws ParseError (with the line number) on a malformed row or missing
/// metadata and CountMismatchError when the link count disagrees with
/// `<NUMBER OF LINKS>`.
TntpNetwork parse_tntp(std::istream& in);
TntpNetwork parse_tntp_text(std::string_view text);
TntpNetwork parse_tntp_file(const std::filesystem::path& path);

}  // namespace dnash
