#pragma once

// Random surfaces shared by the unit tests and the acceptance suite.

#include <numbers>
#include <random>
#include <vector>

#include "umbilic/chart.hpp"

namespace umbilic::testing {

inline std::vector<double> uniform_coeffs(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> c(static_cast<std::size_t>(n));
  for (auto& x : c) x = d(rng);
  return c;
}

/// Open chart on u in [-0.5, 0.5] with cubic profiles of moderate size.
inline UmbilicSurfaceSpec random_open_spec(std::mt19937_64& rng) {
  SurfaceProfiles p;
  auto kc = uniform_coeffs(rng, 4, 0.8);
  kc[0] += 1.0;
  p.k = ScalarProfile::polynomial(kc);
  p.kg = ScalarProfile::polynomial(uniform_coeffs(rng, 4, 0.6));
  p.a = ScalarProfile::polynomial(uniform_coeffs(rng, 4, 1.0));
  p.b = ScalarProfile::polynomial(uniform_coeffs(rng, 3, 1.0));
  SurfaceOptions opt;
  opt.u_begin = -0.5;
  return make_surface(1.0, std::move(p), opt);
}

/// Closed chart with constant k and a > 0 (return-map hypotheses).
inline UmbilicSurfaceSpec random_holonomy_spec(std::mt19937_64& rng) {
  const double l = 2 * std::numbers::pi;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SurfaceProfiles p;
  p.k = ScalarProfile::constant(unit(rng) < 0.5 ? 0.0 : 0.5 + unit(rng));
  auto kg = uniform_coeffs(rng, 5, 0.7);
  kg[0] += 1.0;
  p.kg = ScalarProfile::fourier(l, kg);
  auto a = uniform_coeffs(rng, 5, 0.4);
  a[0] = 2.0 + unit(rng);
  p.a = ScalarProfile::fourier(l, a);
  p.b = ScalarProfile::fourier(l, uniform_coeffs(rng, 3, 0.5));
  SurfaceOptions opt;
  opt.closed = true;
  return make_surface(l, std::move(p), opt);
}

}  // namespace umbilic::testing
