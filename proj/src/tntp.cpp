#include "dnash/tntp.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "dnash/errors.hpp"

namespace dnash {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = s.size();
    fields.push_back(s.substr(start, end - start));
    pos = end;
  }
  return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

int parse_int_field(std::string_view text, std::size_t line, const char* name) {
  if (auto v = parse_number<int>(text)) return *v;
  // Some files write integer columns as "1.0".
  if (auto d = parse_number<double>(text); d && *d == static_cast<int>(*d)) return static_cast<int>(*d);
  throw ParseError(line, std::string("field '") + name + "' is not an integer: '" + std::string(text) + "'");
}

double parse_real_field(std::string_view text, std::size_t line, const char* name) {
  if (auto v = parse_number<double>(text)) return *v;
  throw ParseError(line, std::string("field '") + name + "' is not a number: '" + std::string(text) + "'");
}

}  // namespace

RoadNetwork TntpNetwork::to_road_network(bool native_bpr) const {
  std::vector<Edge> edges;
  std::vector<BprParams> bpr;
  edges.reserve(links.size());
  bpr.reserve(links.size());
  for (const TntpLink& link : links) {
    edges.push_back({link.init_node, link.term_node});
    if (native_bpr) {
      bpr.push_back({link.free_flow_time, link.b, link.capacity, link.power});
    } else {
      bpr.emplace_back();
    }
  }
  return {node_count, std::move(edges), std::move(bpr)};
}

TntpNetwork parse_tntp(std::istream& in) {
  TntpNetwork net;
  bool in_metadata = true;
  bool saw_nodes = false;
  bool saw_links = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto tilde = text.find('~'); tilde != std::string_view::npos) text = text.substr(0, tilde);
    text = trim(text);
    if (text.empty()) continue;

    if (in_metadata) {
      if (text.front() != '<') throw ParseError(line, "expected a <KEY> metadata line before <END OF METADATA>");
      const auto close = text.find('>');
      if (close == std::string_view::npos) throw ParseError(line, "unterminated metadata key");
      const std::string_view key = text.substr(1, close - 1);
      const std::string_view value = trim(text.substr(close + 1));
      if (key == "END OF METADATA") {
        in_metadata = false;
        if (!saw_nodes) throw ParseError(line, "missing <NUMBER OF NODES>");
        if (!saw_links) throw ParseError(line, "missing <NUMBER OF LINKS>");
      } else if (key == "NUMBER OF ZONES") {
        net.zone_count = parse_int_field(value, line, "NUMBER OF ZONES");
      } else if (key == "NUMBER OF NODES") {
        net.node_count = parse_int_field(value, line, "NUMBER OF NODES");
        saw_nodes = true;
      } else if (key == "FIRST THRU NODE") {
        net.first_thru_node = parse_int_field(value, line, "FIRST THRU NODE");
      } else if (key == "NUMBER OF LINKS") {
        net.declared_link_count = parse_int_field(value, line, "NUMBER OF LINKS");
        saw_links = true;
      }
      continue;
    }

    if (text.back() == ';') text = trim(text.substr(0, text.size() - 1));
    const auto fields = split_fields(text);
    if (fields.size() != 10) {
      throw ParseError(line, "link row has " + std::to_string(fields.size()) + " fields, expected 10");
    }
    TntpLink link;
    link.init_node = parse_int_field(fields[0], line, "init_node");
    link.term_node = parse_int_field(fields[1], line, "term_node");
    link.capacity = parse_real_field(fields[2], line, "capacity");
    link.length = parse_real_field(fields[3], line, "length");
    link.free_flow_time = parse_real_field(fields[4], line, "free_flow_time");
    link.b = parse_real_field(fields[5], line, "b");
    link.power = parse_real_field(fields[6], line, "power");
    link.speed = parse_real_field(fields[7], line, "speed");
    link.toll = parse_real_field(fields[8], line, "toll");
    link.link_type = parse_int_field(fields[9], line, "link_type");
    for (int node : {link.init_node, link.term_node}) {
      if (node < 1 || node > net.node_count) {
        throw ParseError(line, "node " + std::to_string(node) + " outside [1, " + std::to_string(net.node_count) + "]");
      }
    }
    net.links.push_back(link);
  }
  if (in_metadata) throw ParseError(line, "missing <END OF METADATA>");
  if (static_cast<std::size_t>(net.declared_link_count) != net.links.size()) {
    throw CountMismatchError("declared " + std::to_string(net.declared_link_count) + " links but parsed " +
                             std::to_string(net.links.size()));
  }
  return net;
}

TntpNetwork parse_tntp_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tntp(in);
}

TntpNetwork parse_tntp_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_tntp(in);
}

}  // namespace dnash
