#pragma once

#include <cmath>

namespace umbilic {

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// The interval is pre-split into `pieces` panels so periodic integrands whose
/// coarse samples happen to agree are not accepted prematurely.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10, int pieces = 16,
                        int max_depth = 40) {
  if (a == b) return 0.0;
  double total = 0.0;
  const double width = (b - a) / pieces;
  const double panel_tol = tol / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + width * i;
    const double hi = i + 1 == pieces ? b : a + width * (i + 1);
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += detail::simpson_recurse(f, lo, hi, flo, fm, fhi, whole, panel_tol, max_depth);
  }
  return total;
}

}  // namespace umbilic
