#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dnash/simulation.hpp"

namespace dnash {

struct PlotSeries {
  std::string label;
  std::vector<TraceRow> rows;
};

/// Log-log SVG of gap against k with one polyline per series and a legend in
/// input order. The x axis has ticks at every decade 10^0 .. 10^ceil(log10 k_max).
/// Rows with a nonpositive gap cannot be drawn on a log axis and are skipped.
/// Long series are thinned to log-spaced k before drawing.
std::string render_svg(const std::vector<PlotSeries>& series);

/// Writes render_svg to `path` and the plotted points (label,k,gap) to the
/// same path with a .csv extension. Returns the CSV path.
std::filesystem::path emit_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path);

}  // namespace dnash
