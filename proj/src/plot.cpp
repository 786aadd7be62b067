#include "dnash/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dnash/errors.hpp"

namespace dnash {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;
constexpr int kBucketsPerDecade = 200;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                                "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Point {
  std::int64_t k;
  double gap;
};

std::vector<Point> thin(const std::vector<TraceRow>& rows) {
  std::vector<Point> points;
  long last_bucket = -1;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const TraceRow& row = rows[j];
    if (!(row.gap > 0.0) || !std::isfinite(row.gap) || row.k < 1) continue;
    const long bucket = static_cast<long>(std::floor(std::log10(static_cast<double>(row.k)) * kBucketsPerDecade));
    if (bucket != last_bucket || j + 1 == rows.size()) {
      points.push_back({row.k, row.gap});
      last_bucket = bucket;
    }
  }
  return points;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series) {
  if (series.empty()) throw DomainError("nothing to plot");
  std::vector<std::vector<Point>> thinned;
  std::int64_t k_max = 1;
  double g_min = std::numeric_limits<double>::infinity();
  double g_max = 0.0;
  for (const PlotSeries& s : series) {
    thinned.push_back(thin(s.rows));
    for (const Point& p : thinned.back()) {
      k_max = std::max(k_max, p.k);
      g_min = std::min(g_min, p.gap);
      g_max = std::max(g_max, p.gap);
    }
  }
  if (!(g_max > 0.0)) {
    g_min = 1.0;
    g_max = 10.0;
  }
  const int x_decades = std::max(1, static_cast<int>(std::ceil(std::log10(static_cast<double>(k_max)) - 1e-12)));
  const int y_lo = static_cast<int>(std::floor(std::log10(g_min)));
  const int y_hi = std::max(y_lo + 1, static_cast<int>(std::ceil(std::log10(g_max))));

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double k) { return kLeft + plot_w * std::log10(k) / x_decades; };
  auto py = [&](double g) { return kTop + plot_h * (y_hi - std::log10(g)) / (y_hi - y_lo); };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int d = 0; d <= x_decades; ++d) {
    const double x = px(std::pow(10.0, d));
    svg << "<line class=\"xtick\" data-k=\"1e" << d << "\" x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 20 << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = y_lo; d <= y_hi; ++d) {
    const double y = py(std::pow(10.0, d));
    svg << "<line class=\"ytick\" x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">k</text>\n";
  svg << "<text x=\"15\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << kTop + plot_h / 2 << ")\">Phi(y_k) - phi*</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (const Point& p : thinned[s]) svg << px(static_cast<double>(p.k)) << ',' << py(p.gap) << ' ';
    svg << "\"/>\n";
    const double ly = kTop + 15 + 18 * static_cast<double>(s);
    const double lx = kLeft + plot_w + 10;
    svg << "<g class=\"legend\"><line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << lx + 25 << "\" y=\"" << ly + 4 << "\">"
        << escape_xml(series[s].label) << "</text></g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::filesystem::path emit_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path) {
  const std::string svg = render_svg(series);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << svg;
  if (!out) throw std::runtime_error("failed writing " + path.string());

  std::filesystem::path data_path = path;
  data_path.replace_extension(".csv");
  std::ofstream data(data_path, std::ios::binary);
  if (!data) throw std::runtime_error("cannot open " + data_path.string() + " for writing");
  data << "label,k,gap\n";
  for (const PlotSeries& s : series) {
    for (const Point& p : thin(s.rows)) data << s.label << ',' << p.k << ',' << shortest(p.gap) << '\n';
  }
  if (!data) throw std::runtime_error("failed writing " + data_path.string());
  return data_path;
}

}  // namespace dnash
