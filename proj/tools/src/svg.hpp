#pragma once

#include <string>
#include <utility>
#include <vector>

namespace umbilic::cli {

// Minimal SVG canvas with a data-space viewport (y up).
class SvgPlot {
 public:
  SvgPlot(double xmin, double xmax, double ymin, double ymax, int width = 640, int height = 640);

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double stroke = 1.0, bool dashed = false);
  void dot(double x, double y, double radius, const std::string& color);
  void label(double x, double y, const std::string& text, int size = 12);
  void axes_box();

  std::string str() const;

 private:
  double sx(double x) const;
  double sy(double y) const;

  double xmin_, xmax_, ymin_, ymax_;
  int width_, height_;
  std::string body_;
};

}  // namespace umbilic::cli
