#pragma once

#include <string>
#include <vector>

namespace helix {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line plot (fixed palette, linear axes, simple ticks).
/// Series longer than ~2000 points are decimated for the polyline only.
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series,
                             int width = 720, int height = 480);

}  // namespace helix
