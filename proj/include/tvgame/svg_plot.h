#ifndef TVGAME_SVG_PLOT_H_
#define TVGAME_SVG_PLOT_H_

#include <string>
#include <vector>

namespace tvgame {

struct PlotSeries {
  std::string label;
  std::vector<double> t;
  std::vector<double> values;
  bool emphasized = false;  // drawn thicker and on top
};

struct PlotPanel {
  std::string title;  // also the y-axis label
  std::vector<PlotSeries> series;
};

// Self-contained SVG with the panels side by side, linear axes, x = round.
// Output depends only on the inputs (fixed number formatting).
std::string RenderSvg(const std::string& title,
                      const std::vector<PlotPanel>& panels);

}  // namespace tvgame

#endif  // TVGAME_SVG_PLOT_H_
