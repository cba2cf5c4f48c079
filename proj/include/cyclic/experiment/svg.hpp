#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclic {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct PlotPanel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<PlotSeries> series;
};

/// Standalone SVG with the panels stacked vertically. Non-finite points are
/// skipped.
void write_svg(std::ostream& os, const std::vector<PlotPanel>& panels);

}  // namespace cyclic
