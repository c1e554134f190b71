#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace umbilic {

template <std::size_t N>
using State = std::array<double, N>;

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
  State<N> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// One classical 4th-order Runge-Kutta step.
template <std::size_t N, class Rhs>
State<N> rk4_step(Rhs&& rhs, double t, const State<N>& y, double h) {
  const State<N> k1 = rhs(t, y);
  const State<N> k2 = rhs(t + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k1}}));
  const State<N> k3 = rhs(t + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k2}}));
  const State<N> k4 = rhs(t + h, detail::axpy<N>(y, h, {{1.0, &k3}}));
  State<N> out = y;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

struct AdaptiveOptions {
  double abs_tol = 1e-8;
  double rel_tol = 0.0;
  double initial_step = 1e-2;
  double min_step = 1e-14;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 1'000'000;
};

enum class IntegrationStatus { reached_end, stopped_by_observer, step_underflow, step_budget };

template <std::size_t N>
struct IntegrationResult {
  double t;
  State<N> y;
  IntegrationStatus status;
  long steps;
};

/// Dormand-Prince 5(4) integration of y' = rhs(t, y) from t0 to t1 (either
/// direction). After every accepted step `observer(t, y)` is called; returning
/// false stops the integration at that step.
template <std::size_t N, class Rhs, class Observer>
IntegrationResult<N> integrate_dopri5(Rhs&& rhs, double t0, State<N> y, double t1,
                                      const AdaptiveOptions& opt, Observer&& observer) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // b - b* (difference between the 5th- and embedded 4th-order weights)
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double t = t0;
  double h = std::min(std::abs(opt.initial_step), std::abs(t1 - t0));
  long steps = 0;
  if (h == 0.0) return {t, y, IntegrationStatus::reached_end, 0};

  State<N> k1 = rhs(t, y);
  while (true) {
    if (steps >= opt.max_steps) return {t, y, IntegrationStatus::step_budget, steps};
    const double remaining = std::abs(t1 - t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double hs = dir * h;
    const State<N> k2 = rhs(t + c2 * hs, detail::axpy<N>(y, hs, {{a21, &k1}}));
    const State<N> k3 = rhs(t + c3 * hs, detail::axpy<N>(y, hs, {{a31, &k1}, {a32, &k2}}));
    const State<N> k4 =
        rhs(t + c4 * hs, detail::axpy<N>(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<N> k5 = rhs(
        t + c5 * hs, detail::axpy<N>(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<N> k6 = rhs(t + hs, detail::axpy<N>(y, hs,
                                                    {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                                     {a64, &k4}, {a65, &k5}}));
    const State<N> y_new = detail::axpy<N>(
        y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State<N> k7 = rhs(t + hs, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei =
          hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(ei) / scale);
    }

    if (err <= 1.0 || h <= opt.min_step) {
      if (err > 1.0) return {t, y, IntegrationStatus::step_underflow, steps};
      t = last ? t1 : t + hs;
      y = y_new;
      k1 = k7;
      ++steps;
      if (!observer(t, y)) return {t, y, IntegrationStatus::stopped_by_observer, steps};
      if (last) return {t, y, IntegrationStatus::reached_end, steps};
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(h * factor, opt.max_step);
    h = std::max(h, opt.min_step);
  }
}

template <std::size_t N, class Rhs>
IntegrationResult<N> integrate_dopri5(Rhs&& rhs, double t0, State<N> y, double t1,
                                      const AdaptiveOptions& opt) {
  return integrate_dopri5<N>(std::forward<Rhs>(rhs), t0, y, t1, opt,
                             [](double, const State<N>&) { return true; });
}

}  // namespace umbilic
