#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "umbilic/chart.hpp"

namespace umbilic {

// Printed series against finite differences of the chart.

struct CoefficientPair {
  std::string_view name;
  int order;  // expected order of series - numeric in v
  double series;
  double numeric;
};

inline constexpr int kComparedCoefficients = 11;

/// E, F, G, e, f, g, H, K, L, M, N at (u, v), series and numeric side by side.
std::array<CoefficientPair, kComparedCoefficients> compare_series(const UmbilicSurfaceSpec& spec,
                                                                  double u, double v);

/// Least-squares slope of log y against log x, ignoring points with y <= floor.
/// Returns +infinity when fewer than two points stay above the floor.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    double floor = 1e-14);

/// n points geometrically spaced on [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, int n);

struct OrderLaw {
  std::string_view name;
  int order;
  double slope;
  bool passes;  // slope >= order - 0.5
};

std::array<OrderLaw, kComparedCoefficients> order_law(const UmbilicSurfaceSpec& spec, double u,
                                                      const std::vector<double>& v_grid);

}  // namespace umbilic
