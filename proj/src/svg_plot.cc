#include "tvgame/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tvgame {
namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 40.0;
constexpr double kLegendHeight = 18.0;

const char* const kPalette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b",
                                "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                                "#ff7f0e", "#aec7e8", "#98df8a", "#c5b0d5"};
constexpr const char* kEmphasis = "#d62728";

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Fix() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) hi = lo + 1.0;
  }
};

}  // namespace

std::string RenderSvg(const std::string& title,
                      const std::vector<PlotPanel>& panels) {
  std::size_t max_series = 0;
  for (const PlotPanel& p : panels) max_series = std::max(max_series, p.series.size());
  const double legend = kLegendHeight * static_cast<double>(max_series);
  const double width = kPanelWidth * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  const double height = kPanelHeight + legend + 12.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width)
      << "\" height=\"" << Num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << Num(width / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
      << Escape(title) << "</text>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel& panel = panels[p];
    const double ox = kPanelWidth * static_cast<double>(p);
    const double left = ox + kMarginLeft;
    const double right = ox + kPanelWidth - kMarginRight;
    const double top = kMarginTop;
    const double bottom = kPanelHeight - kMarginBottom;

    Range xr, yr;
    for (const PlotSeries& s : panel.series) {
      for (double t : s.t) xr.Add(t);
      for (double v : s.values) yr.Add(v);
    }
    xr.Fix();
    yr.Fix();
    auto sx = [&](double t) { return left + (t - xr.lo) / (xr.hi - xr.lo) * (right - left); };
    auto sy = [&](double v) { return bottom - (v - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

    svg << "<g>\n<text x=\"" << Num((left + right) / 2) << "\" y=\"" << Num(top - 10)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << Escape(panel.title) << "</text>\n";
    svg << "<rect x=\"" << Num(left) << "\" y=\"" << Num(top) << "\" width=\""
        << Num(right - left) << "\" height=\"" << Num(bottom - top)
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double fy = yr.lo + (yr.hi - yr.lo) * k / 4.0;
      const double fx = xr.lo + (xr.hi - xr.lo) * k / 4.0;
      svg << "<line x1=\"" << Num(left) << "\" y1=\"" << Num(sy(fy)) << "\" x2=\""
          << Num(right) << "\" y2=\"" << Num(sy(fy)) << "\" stroke=\"#eee\"/>\n";
      svg << "<text x=\"" << Num(left - 4) << "\" y=\"" << Num(sy(fy) + 4)
          << "\" text-anchor=\"end\">" << Tick(fy) << "</text>\n";
      svg << "<text x=\"" << Num(sx(fx)) << "\" y=\"" << Num(bottom + 14)
          << "\" text-anchor=\"middle\">" << Tick(fx) << "</text>\n";
    }
    svg << "<text x=\"" << Num((left + right) / 2) << "\" y=\"" << Num(bottom + 30)
        << "\" text-anchor=\"middle\">round t</text>\n";

    // Plain series first so emphasized ones sit on top.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t s = 0; s < panel.series.size(); ++s) {
        const PlotSeries& series = panel.series[s];
        if (series.emphasized != (pass == 1)) continue;
        const char* color = series.emphasized ? kEmphasis : kPalette[s % std::size(kPalette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
            << (series.emphasized ? "2.5" : "1.2") << "\" points=\"";
        const std::size_t n = std::min(series.t.size(), series.values.size());
        for (std::size_t i = 0; i < n; ++i) {
          if (!std::isfinite(series.values[i])) continue;
          svg << Num(sx(series.t[i])) << ',' << Num(sy(series.values[i])) << ' ';
        }
        svg << "\"/>\n";
      }
    }
    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const PlotSeries& series = panel.series[s];
      const char* color = series.emphasized ? kEmphasis : kPalette[s % std::size(kPalette)];
      const double ly = kPanelHeight + kLegendHeight * static_cast<double>(s);
      svg << "<line x1=\"" << Num(left) << "\" y1=\"" << Num(ly) << "\" x2=\""
          << Num(left + 18) << "\" y2=\"" << Num(ly) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
      svg << "<text x=\"" << Num(left + 24) << "\" y=\"" << Num(ly + 4) << "\">"
          << Escape(series.label) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tvgame
