#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "align/experiments.hpp"

namespace align {

// Minimal self-contained SVG scatter of a grid sweep: one dot per cell,
// colored by classification, with total-correlation level-set polylines
// overlaid. No charting dependency.
struct GridPlotOptions {
  int width = 640;
  int height = 640;
  std::vector<double> level_curves;  // rho_T values to overlay
  std::string title;
};

struct GridPoint {
  double rho_e = 0;
  double rho_h = 0;
  Classification classification = Classification::Invalid;
  std::string label;  // optional annotation (e.g. mean node count)
};

void write_grid_svg(std::ostream& out, const std::vector<GridPoint>& points,
                    const GridPlotOptions& opts);

}  // namespace align
