#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gammareg::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 320.0;
constexpr double kLeft = 80.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double decade) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(decade));
  return buf;
}

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

}  // namespace

std::string loglog_svg(const std::vector<Panel>& panels) {
  std::ostringstream svg;
  const double height = kPanelHeight * static_cast<double>(panels.size());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
      << "\" height=\"" << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double y0 = kPanelHeight * static_cast<double>(p);
    double lx0 = std::numeric_limits<double>::infinity(), lx1 = -lx0;
    double ly0 = lx0, ly1 = -lx0;
    for (const auto& s : panel.series) {
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        if (!(s.xs[i] > 0.0 && s.ys[i] > 0.0)) continue;
        lx0 = std::min(lx0, std::log10(s.xs[i]));
        lx1 = std::max(lx1, std::log10(s.xs[i]));
        ly0 = std::min(ly0, std::log10(s.ys[i]));
        ly1 = std::max(ly1, std::log10(s.ys[i]));
      }
    }
    if (!std::isfinite(lx0)) {
      lx0 = ly0 = 0.0;
      lx1 = ly1 = 1.0;
    }
    lx0 = std::floor(lx0);
    lx1 = std::max(std::ceil(lx1), lx0 + 1.0);
    ly0 = std::floor(ly0);
    ly1 = std::max(std::ceil(ly1), ly0 + 1.0);

    const double px0 = kLeft, px1 = kWidth - kRight;
    const double py0 = y0 + kPanelHeight - kBottom, py1 = y0 + kTop;
    auto sx = [&](double lx) { return px0 + (lx - lx0) / (lx1 - lx0) * (px1 - px0); };
    auto sy = [&](double ly) { return py0 + (ly - ly0) / (ly1 - ly0) * (py1 - py0); };

    svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(y0 + 22)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(panel.title) << "</text>\n";
    svg << "<rect x=\"" << num(px0) << "\" y=\"" << num(py1) << "\" width=\""
        << num(px1 - px0) << "\" height=\"" << num(py0 - py1)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double d = lx0; d <= lx1 + 1e-9; d += 1.0) {
      svg << "<line x1=\"" << num(sx(d)) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(sx(d))
          << "\" y2=\"" << num(py1) << "\" stroke=\"#ddd\"/>\n";
      svg << "<text x=\"" << num(sx(d)) << "\" y=\"" << num(py0 + 16)
          << "\" text-anchor=\"middle\">" << tick(d) << "</text>\n";
    }
    for (double d = ly0; d <= ly1 + 1e-9; d += 1.0) {
      svg << "<line x1=\"" << num(px0) << "\" y1=\"" << num(sy(d)) << "\" x2=\"" << num(px1)
          << "\" y2=\"" << num(sy(d)) << "\" stroke=\"#ddd\"/>\n";
      svg << "<text x=\"" << num(px0 - 6) << "\" y=\"" << num(sy(d) + 4)
          << "\" text-anchor=\"end\">" << tick(d) << "</text>\n";
    }
    svg << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << num(py0 + 36)
        << "\" text-anchor=\"middle\">" << escape(panel.x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << num((py0 + py1) / 2) << "\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 18 " << num((py0 + py1) / 2) << ")\">"
        << escape(panel.y_label) << "</text>\n";

    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const Series& series = panel.series[s];
      const char* color = kColors[s % 4];
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < series.xs.size(); ++i) {
        if (!(series.xs[i] > 0.0 && series.ys[i] > 0.0)) continue;
        svg << num(sx(std::log10(series.xs[i]))) << ',' << num(sy(std::log10(series.ys[i])))
            << ' ';
      }
      svg << "\"/>\n";
      svg << "<text x=\"" << num(px0 + 10) << "\" y=\"" << num(py1 + 16 + 14 * static_cast<double>(s))
          << "\" fill=\"" << color << "\">" << escape(series.label) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gammareg::cli
