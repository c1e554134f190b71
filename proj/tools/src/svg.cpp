#include "svg.hpp"

#include <fmt/format.h>

namespace umbilic::cli {

namespace {
constexpr double kMargin = 30.0;
}

SvgPlot::SvgPlot(double xmin, double xmax, double ymin, double ymax, int width, int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width), height_(height) {}

double SvgPlot::sx(double x) const {
  return kMargin + (x - xmin_) / (xmax_ - xmin_) * (width_ - 2 * kMargin);
}

double SvgPlot::sy(double y) const {
  return height_ - kMargin - (y - ymin_) / (ymax_ - ymin_) * (height_ - 2 * kMargin);
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                       double stroke, bool dashed) {
  if (pts.size() < 2) return;
  std::string d;
  for (const auto& [x, y] : pts) d += fmt::format("{:.2f},{:.2f} ", sx(x), sy(y));
  body_ += fmt::format(
      "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{} points=\"{}\"/>\n", color,
      stroke, dashed ? " stroke-dasharray=\"6,4\"" : "", d);
}

void SvgPlot::dot(double x, double y, double radius, const std::string& color) {
  body_ += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{}\" fill=\"{}\"/>\n", sx(x), sy(y),
                       radius, color);
}

void SvgPlot::label(double x, double y, const std::string& text, int size) {
  body_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"{}\" font-family=\"sans-serif\">{}</text>\n",
                       sx(x), sy(y), size, text);
}

void SvgPlot::axes_box() {
  body_ += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"#888\"/>\n",
      kMargin, kMargin, width_ - 2 * kMargin, height_ - 2 * kMargin);
}

std::string SvgPlot::str() const {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
      width_, height_, width_, height_, body_);
}

}  // namespace umbilic::cli
