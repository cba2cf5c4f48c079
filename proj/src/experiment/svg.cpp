#include "cyclic/experiment/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace cyclic {

namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 300.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 45.0;
constexpr int kTicks = 5;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void draw_panel(std::ostream& os, const PlotPanel& p, double y0) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : p.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const double w = kWidth - kLeft - kRight;
  const double h = kPanelHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * w; };
  auto py = [&](double y) { return y0 + kTop + h - (y - ymin) / (ymax - ymin) * h; };

  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << y0 + 20
     << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(p.title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << y0 + kTop << "\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int t = 0; t <= kTicks; ++t) {
    const double fx = xmin + (xmax - xmin) * t / kTicks;
    const double fy = ymin + (ymax - ymin) * t / kTicks;
    os << "<text x=\"" << px(fx) << "\" y=\"" << y0 + kTop + h + 15
       << "\" text-anchor=\"middle\" font-size=\"10\">" << num(fx) << "</text>\n";
    os << "<text x=\"" << kLeft - 5 << "\" y=\"" << py(fy) + 3
       << "\" text-anchor=\"end\" font-size=\"10\">" << num(fy) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + w / 2 << "\" y=\"" << y0 + kPanelHeight - 8
     << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.xlabel) << "</text>\n";
  os << "<text transform=\"translate(14," << y0 + kTop + h / 2
     << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.ylabel)
     << "</text>\n";

  double legend_y = y0 + kTop + 14;
  for (const auto& s : p.series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kLeft + w - 5 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" fill=\""
       << s.color << "\" font-size=\"11\">" << escape(s.name) << "</text>\n";
    legend_y += 14;
  }
}

}  // namespace

void write_svg(std::ostream& os, const std::vector<PlotPanel>& panels) {
  const double height = kPanelHeight * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << kWidth << ' ' << height << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(os, panels[i], kPanelHeight * static_cast<double>(i));
  }
  os << "</svg>\n";
}

}  // namespace cyclic
