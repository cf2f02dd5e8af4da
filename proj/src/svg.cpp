#include "align/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace align {

namespace {

const char* dot_color(Classification c) {
  switch (c) {
    case Classification::Green: return "#2ca02c";
    case Classification::Yellow: return "#e6c700";
    case Classification::Red: return "#d62728";
    default: return "#999999";
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_grid_svg(std::ostream& out, const std::vector<GridPoint>& points,
                    const GridPlotOptions& opts) {
  double max_e = 1e-9, max_h = 1e-9;
  for (const GridPoint& p : points) {
    max_e = std::max(max_e, p.rho_e);
    max_h = std::max(max_h, p.rho_h);
  }
  max_e *= 1.05;
  max_h *= 1.05;

  const double ml = 60, mr = 20, mt = opts.title.empty() ? 20 : 44, mb = 50;
  const double pw = opts.width - ml - mr, ph = opts.height - mt - mb;
  auto sx = [&](double rho_e) { return ml + rho_e / max_e * pw; };
  auto sy = [&](double rho_h) { return mt + ph - rho_h / max_h * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
      << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width << " "
      << opts.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    out << "<text x=\"" << opts.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << opts.title << "</text>\n";

  // axes with a few ticks
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double fe = max_e * t / 4, fh = max_h * t / 4;
    out << "<text x=\"" << sx(fe) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(fe) << "</text>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << sy(fh) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(fh) << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt + ph + 38
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
         "edge correlation</text>\n";
  out << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">heterogeneity correlation"
      << "</text>\n";

  // total-correlation level sets
  for (double c : opts.level_curves) {
    LevelSet ls = level_set_curve(c, 200);
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (auto [re, rh] : ls.points) {
      if (re > max_e || rh > max_h) continue;
      if (!first) out << " ";
      out << num(sx(re)) << "," << num(sy(rh));
      first = false;
    }
    out << "\"/>\n";
  }

  for (const GridPoint& p : points) {
    out << "<circle cx=\"" << num(sx(p.rho_e)) << "\" cy=\"" << num(sy(p.rho_h))
        << "\" r=\"4\" fill=\"" << dot_color(p.classification) << "\"/>\n";
    if (!p.label.empty())
      out << "<text x=\"" << num(sx(p.rho_e)) << "\" y=\"" << num(sy(p.rho_h) - 7)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
          << p.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace align
