#include "umbilic/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "umbilic/errors.hpp"
#include "umbilic/detail/local_chart.hpp"

namespace umbilic {

bool UmbilicSurfaceSpec::in_domain(double u) const {
  if (closed) return true;
  const double slack = 1e-12 * std::max(1.0, std::abs(l));
  return u >= u_begin - slack && u <= u_end() + slack;
}

double sup_abs_k(const ScalarProfile& k, double u_begin, double l) {
  constexpr int kSamples = 4096;
  double sup = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    sup = std::max(sup, std::abs(k(u_begin + l * i / kSamples)));
  }
  return sup;
}

UmbilicSurfaceSpec make_surface(double l, SurfaceProfiles profiles, const SurfaceOptions& opt) {
  if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("surface needs a finite l > 0");
  if (opt.closed) {
    const std::pair<const char*, const ScalarProfile*> named[] = {
        {"k", &profiles.k}, {"k_g", &profiles.kg}, {"a", &profiles.a}, {"b", &profiles.b}};
    for (const auto& [name, p] : named) {
      if (!p->is_periodic_with(l)) {
        throw InvalidArgument(std::string("closed surface: profile '") + name +
                              "' is not periodic with period l");
      }
    }
  }

  UmbilicSurfaceSpec spec;
  spec.l = l;
  spec.closed = opt.closed;
  spec.u_begin = opt.u_begin;
  spec.frame = integrate_darboux_frame(profiles.k, profiles.kg, l, opt.frame_step, opt.u_begin);
  spec.frame.closed = opt.closed;
  spec.v_max = opt.v_max ? *opt.v_max
                         : 0.5 / std::max(1.0, sup_abs_k(profiles.k, opt.u_begin, l));
  if (!(spec.v_max > 0.0)) throw InvalidArgument("strip half-width must be positive");
  spec.k = std::move(profiles.k);
  spec.kg = std::move(profiles.kg);
  spec.a = std::move(profiles.a);
  spec.b = std::move(profiles.b);
  return spec;
}

namespace detail {

LocalChart::LocalChart(const UmbilicSurfaceSpec& spec, double u0, const Mat3L& frame0)
    : spec_(spec), u0_(u0) {
  // X' = X Omega with Omega = [[0,-kg,-k],[kg,0,0],[k,0,0]] (columns T, S, N).
  std::array<Mat3L, 4> omega;
  for (int j = 0; j < 4; ++j) {
    const real k = spec.k.eval(u0, j);
    const real g = spec.kg.eval(u0, j);
    omega[j] << 0, -g, -k, g, 0, 0, k, 0, 0;
  }
  static constexpr int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  X_[0] = frame0;
  for (int n = 0; n < 4; ++n) {
    Mat3L next = Mat3L::Zero();
    for (int j = 0; j <= n; ++j) next += binom[n][j] * X_[n - j] * omega[j];
    X_[n + 1] = next;
  }
}

LocalChart::Slice LocalChart::slice(real s) const {
  Slice out;
  // Frame: Taylor through s^4; curve: through s^5 (c^(n) = X^(n-1) e1).
  Mat3L X = Mat3L::Zero();
  Vec3L dc = Vec3L::Zero();
  real power = 1;
  real factorial = 1;
  for (int n = 0; n <= 4; ++n) {
    X += (power / factorial) * X_[n];
    const real next_power = power * s;
    const real next_factorial = factorial * (n + 1);
    dc += (next_power / next_factorial) * X_[n].col(0);
    power = next_power;
    factorial = next_factorial;
  }
  out.dc = dc;
  out.S = X.col(1);
  out.N = X.col(2);
  const double u = u0_ + static_cast<double>(s);
  out.k = spec_.k(u);
  out.a = spec_.a(u);
  out.b = spec_.b(u);
  return out;
}

Vec3L LocalChart::point(const Slice& sl, real v) {
  const real height = v * v * (sl.k / 2 + v * (sl.a / 6 + v * sl.b / 24));
  return sl.dc + v * sl.S + height * sl.N;
}

ChartDerivatives LocalChart::derivatives(real s0, real v, const FiniteDifferenceOptions& opt) const {
  auto at_step = [&](real h) {
    const Slice mid = slice(s0), fwd = slice(s0 + h), bwd = slice(s0 - h);
    const Vec3L p00 = point(mid, v);
    const Vec3L pp0 = point(fwd, v), pm0 = point(bwd, v);
    const Vec3L p0p = point(mid, v + h), p0m = point(mid, v - h);
    const Vec3L ppp = point(fwd, v + h), ppm = point(fwd, v - h);
    const Vec3L pmp = point(bwd, v + h), pmm = point(bwd, v - h);
    ChartDerivatives d;
    d.au = (pp0 - pm0) / (2 * h);
    d.av = (p0p - p0m) / (2 * h);
    d.auu = (pp0 - 2 * p00 + pm0) / (h * h);
    d.avv = (p0p - 2 * p00 + p0m) / (h * h);
    d.auv = (ppp - ppm - pmp + pmm) / (4 * h * h);
    return d;
  };
  const real h = opt.h;
  ChartDerivatives coarse = at_step(h);
  if (!opt.richardson) return coarse;
  const ChartDerivatives fine = at_step(h / 2);
  auto extrapolate = [](const Vec3L& c, const Vec3L& f) -> Vec3L { return (4 * f - c) / 3; };
  return {extrapolate(coarse.au, fine.au), extrapolate(coarse.av, fine.av),
          extrapolate(coarse.auu, fine.auu), extrapolate(coarse.auv, fine.auv),
          extrapolate(coarse.avv, fine.avv)};
}

FundamentalForms forms_from_derivatives(const ChartDerivatives& d) {
  const Vec3L n_raw = d.au.cross(d.av);
  const real n_norm = n_raw.norm();
  if (!(n_norm > 0)) throw DegenerateChart("chart is singular (alpha_u x alpha_v = 0)");
  const Vec3L n = n_raw / n_norm;
  return complete_forms_ld(d.au.dot(d.au), d.au.dot(d.av), d.av.dot(d.av), d.auu.dot(n),
                           d.auv.dot(n), d.avv.dot(n));
}

FundamentalForms complete_forms_ld(real E, real F, real G, real e, real f, real g) {
  const real W = E * G - F * F;
  if (!(E > 0) || !(G > 0) || !(W > 0)) {
    throw DegenerateChart("degenerate first fundamental form (EG - F^2 <= 0)");
  }
  const real H = (E * g - 2 * F * f + G * e) / (2 * W);
  const real K = (e * g - f * f) / W;
  // H^2 - K = (M^2 - 4LN) / (4 W^2): no cancellation at umbilics.
  const real L = F * g - G * f;
  const real M = E * g - G * e;
  const real N = E * f - F * e;
  const real disc = std::max<real>(M * M - 4 * L * N, 0);
  const real spread = std::sqrt(disc) / W;
  FundamentalForms out;
  out.E = static_cast<double>(E);
  out.F = static_cast<double>(F);
  out.G = static_cast<double>(G);
  out.e = static_cast<double>(e);
  out.f = static_cast<double>(f);
  out.g = static_cast<double>(g);
  out.H = static_cast<double>(H);
  out.K = static_cast<double>(K);
  out.k1 = static_cast<double>(H - spread / 2);
  out.k2 = static_cast<double>(H + spread / 2);
  return out;
}

}  // namespace detail

FundamentalForms complete_forms(double E, double F, double G, double e, double f, double g) {
  return detail::complete_forms_ld(E, F, G, e, f, g);
}

namespace {

void check_strip(const UmbilicSurfaceSpec& spec, double u, double v) {
  if (!(std::abs(v) <= spec.v_max)) {
    throw OutOfStrip("v = " + std::to_string(v) + " outside strip |v| <= " +
                     std::to_string(spec.v_max));
  }
  if (!spec.in_domain(u)) {
    throw OutOfStrip("u = " + std::to_string(u) + " outside the curve's domain");
  }
}

struct Anchored {
  detail::LocalChart chart;
  double s;
  Vec3 c;
};

// Chart anchored at the stored frame sample nearest to u.
Anchored anchored_chart(const UmbilicSurfaceSpec& spec, double u) {
  double x = u;
  if (spec.closed) {
    x = spec.u_begin + std::fmod(u - spec.u_begin, spec.l);
    if (x < spec.u_begin) x += spec.l;
  }
  const FrameSample& anchor = spec.frame.nearest(x);
  detail::Mat3L frame;
  frame.col(0) = anchor.T.cast<detail::real>();
  frame.col(1) = anchor.S.cast<detail::real>();
  frame.col(2) = anchor.N.cast<detail::real>();
  // Profiles are evaluated at the caller's u (periodic profiles don't care).
  const double anchor_u = anchor.u + (u - x);
  return {detail::LocalChart(spec, anchor_u, frame), u - anchor_u, anchor.c};
}

}  // namespace

Vec3 eval_chart(const UmbilicSurfaceSpec& spec, double u, double v) {
  check_strip(spec, u, v);
  const Anchored a = anchored_chart(spec, u);
  const detail::Vec3L offset = detail::LocalChart::point(a.chart.slice(a.s), v);
  return a.c + offset.cast<double>();
}

Vec3 surface_normal(const UmbilicSurfaceSpec& spec, double u, double v) {
  check_strip(spec, u, v);
  const Anchored a = anchored_chart(spec, u);
  const detail::ChartDerivatives d = a.chart.derivatives(a.s, v, {});
  return d.au.cross(d.av).normalized().cast<double>();
}

FundamentalForms forms_numeric(const UmbilicSurfaceSpec& spec, double u, double v,
                               const FiniteDifferenceOptions& opt) {
  if (!(opt.h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  // E..g are invariant under rigid motions, so the stencil is evaluated on a
  // chart anchored at u itself with the identity frame.
  const detail::LocalChart chart(spec, u, detail::Mat3L::Identity());
  return detail::forms_from_derivatives(chart.derivatives(0, v, opt));
}

FundamentalForms forms_series(const UmbilicSurfaceSpec& spec, double u, double v) {
  const double k = spec.k(u), k1 = spec.k.eval(u, 1), k2 = spec.k.eval(u, 2);
  const double g = spec.kg(u), g1 = spec.kg.eval(u, 1);
  const double a = spec.a(u), a1 = spec.a.eval(u, 1), a2 = spec.a.eval(u, 2);
  const double b = spec.b(u), b1 = spec.b.eval(u, 1);
  const double v2 = v * v, v3 = v2 * v;

  const double E = 1 - 2 * g * v + (g * g - k * k) * v2 + (6 * g * k * k - 2 * k * a) / 6 * v3;
  const double F = 0.5 * k1 * k * v3;
  const double G = 1 + k * k * v2 + k * a * v3;
  const double e = k - 2 * g * k * v + 0.5 * (2 * k * g * g - g * a - 2 * k * k * k + k2) * v2 +
                   (a2 + g * (9 * k * k * k - b) + (3 * g * g - k * k) * a + 3 * k1 * (g1 + k * k)) /
                       6 * v3;
  const double f = k1 * v + 0.5 * (g * k1 + a1) * v2 + (g * a1 + 3 * k1 * g * g + b1) / 6 * v3;
  const double gg = k + a * v + 0.5 * (b - k * k * k) * v2 - 0.5 * k * k * (a - k1) * v3;
  return complete_forms(E, F, G, e, f, gg);
}

std::pair<double, double> hk_series(const UmbilicSurfaceSpec& spec, double u, double v) {
  const double k = spec.k(u), k2 = spec.k.eval(u, 2);
  const double g = spec.kg(u), a = spec.a(u), b = spec.b(u);
  const double H = k + 0.5 * a * v + 0.25 * (b + k2 - 3 * k * k * k - g * a) * v * v;
  const double K = k * k + k * a * v +
                   0.5 * (-g * k * a - 3 * k * k * k * k + k * k2 + k * b - 2 * k2) * v * v;
  return {H, K};
}

std::pair<Vec3, Vec3> focal_sheets(const FundamentalForms& forms, const Vec3& base, const Vec3& N) {
  constexpr double kZero = 1e-12;
  const bool first_infinite = std::abs(forms.k1) <= kZero;
  const bool second_infinite = std::abs(forms.k2) <= kZero;
  if (first_infinite && second_infinite) throw InfiniteFocalRadius("k1,k2");
  if (first_infinite) throw InfiniteFocalRadius("k1");
  if (second_infinite) throw InfiniteFocalRadius("k2");
  return {base + N / forms.k1, base + N / forms.k2};
}

}  // namespace umbilic
