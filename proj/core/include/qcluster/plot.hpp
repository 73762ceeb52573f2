#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qcluster {

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool mark_start = false;  // filled dot at the first point
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 480;
  std::vector<ChartSeries> series;
};

/// Polyline chart with labeled axes, ticks and a legend. Output depends only
/// on the spec (fixed formatting, no timestamps), so equal input gives
/// byte-identical SVG.
std::string render_svg(const ChartSpec& spec);

}  // namespace qcluster
