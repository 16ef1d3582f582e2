#pragma once

#include <string>
#include <vector>

namespace gammareg::cli {

struct Series {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Self-contained SVG with one log-log panel per entry, stacked vertically.
// Non-positive points are skipped.
std::string loglog_svg(const std::vector<Panel>& panels);

}  // namespace gammareg::cli
