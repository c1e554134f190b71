#include "umbilic/verify.hpp"

#include <cmath>
#include <limits>

#include "umbilic/errors.hpp"
#include "umbilic/lineode.hpp"

namespace umbilic {

std::array<CoefficientPair, kComparedCoefficients> compare_series(const UmbilicSurfaceSpec& spec,
                                                                  double u, double v) {
  const FundamentalForms s = forms_series(spec, u, v);
  const FundamentalForms n = forms_numeric(spec, u, v);
  const auto [H, K] = hk_series(spec, u, v);
  const LineODECoeffs ls = ode_coeffs_series(spec, u, v);
  const LineODECoeffs ln = ode_coeffs(n);
  return {{{"E", 4, s.E, n.E},
           {"F", 4, s.F, n.F},
           {"G", 4, s.G, n.G},
           {"e", 4, s.e, n.e},
           {"f", 4, s.f, n.f},
           {"g", 4, s.g, n.g},
           {"H", 3, H, n.H},
           {"K", 3, K, n.K},
           {"L", 4, ls.L, ln.L},
           {"M", 4, ls.M, ln.M},
           {"N", 4, ls.N, ln.N}}};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  if (x.size() != y.size()) throw InvalidArgument("loglog_slope: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > floor) || !(x[i] > 0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::infinity();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0) || !(hi > lo)) throw InvalidArgument("geometric_grid: bad range");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

std::array<OrderLaw, kComparedCoefficients> order_law(const UmbilicSurfaceSpec& spec, double u,
                                                      const std::vector<double>& v_grid) {
  std::array<std::vector<double>, kComparedCoefficients> err;
  std::array<CoefficientPair, kComparedCoefficients> last{};
  for (double v : v_grid) {
    last = compare_series(spec, u, v);
    for (int i = 0; i < kComparedCoefficients; ++i) {
      err[i].push_back(std::abs(last[i].series - last[i].numeric));
    }
  }
  std::array<OrderLaw, kComparedCoefficients> out{};
  for (int i = 0; i < kComparedCoefficients; ++i) {
    const double slope = loglog_slope(v_grid, err[i]);
    out[i] = {last[i].name, last[i].order, slope, slope >= last[i].order - 0.5};
  }
  return out;
}

}  // namespace umbilic
