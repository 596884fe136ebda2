#include "helix/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace helix {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

std::string tick_label(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series, int width, int height) {
  const double ml = 64, mr = 18, mt = 36, mb = 46;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;

  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.pad();
  yr.pad();

  auto px = [&](double x) { return ml + pw * (x - xr.lo) / (xr.hi - xr.lo); };
  auto py = [&](double y) { return mt + ph * (1.0 - (y - yr.lo) / (yr.hi - yr.lo)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

  // axes box and ticks
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int n_ticks = 5;
  for (int i = 0; i <= n_ticks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / n_ticks;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / n_ticks;
    svg << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(fx) << "\" y2=\""
        << mt + ph + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 17
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << tick_label(fx) << "</text>\n";
    svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
        << py(fy) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 7 << "\" y=\"" << py(fy) + 3
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << tick_label(fy) << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
      << "</text>\n";
  svg << "<text x=\"14\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 14 " << mt + ph / 2 << ")\">" << y_label << "</text>\n";

  // series polylines and legend
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const std::size_t n = std::min(ser.x.size(), ser.y.size());
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; i += stride) {
      if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) continue;
      svg << px(ser.x[i]) << "," << py(ser.y[i]) << " ";
    }
    svg << "\"/>\n";
    const double ly = mt + 14 + 14 * static_cast<double>(s);
    svg << "<line x1=\"" << ml + pw - 110 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 90
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw - 85 << "\" y=\"" << ly + 3
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << ser.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace helix
