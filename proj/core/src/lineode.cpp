#include "umbilic/lineode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "umbilic/errors.hpp"
#include "umbilic/ode.hpp"

namespace umbilic {

LineODECoeffs ode_coeffs(const FundamentalForms& f) {
  return {f.F * f.g - f.G * f.f, f.E * f.g - f.G * f.e, f.E * f.f - f.F * f.e,
          CoeffSource::numeric};
}

LineODECoeffs ode_coeffs_numeric(const UmbilicSurfaceSpec& spec, double u, double v) {
  return ode_coeffs(forms_numeric(spec, u, v));
}

namespace {

struct Jet {
  double k, k1, k2, g, g1, a, a1, a2, b, b1;
};

Jet jet_at(const UmbilicSurfaceSpec& spec, double u) {
  return {spec.k(u),     spec.k.eval(u, 1), spec.k.eval(u, 2), spec.kg(u), spec.kg.eval(u, 1),
          spec.a(u),     spec.a.eval(u, 1), spec.a.eval(u, 2), spec.b(u),  spec.b.eval(u, 1)};
}

// Coefficients of v, v^2, v^3 in L, M, N.
struct SeriesTerms {
  std::array<double, 3> L, M, N;
};

SeriesTerms series_terms(const Jet& j) {
  const double k3 = j.k * j.k * j.k;
  SeriesTerms t;
  t.L = {-j.k1, -0.5 * (j.g * j.k1 + j.a1),
         -(j.g * j.a1 + 3 * j.k1 * j.g * j.g + j.b1 + 3 * j.k * j.k * j.k1) / 6};
  t.M = {j.a, 0.5 * (j.b - 3 * k3 - j.k2 - 3 * j.g * j.a),
         (15 * k3 * j.g - 3 * j.g1 * j.k1 + (3 * j.g * j.g - 16 * j.k * j.k) * j.a - j.a2 -
          5 * j.g * j.b) /
             6};
  t.N = {j.k1, 0.5 * (j.a1 - 3 * j.g * j.k1),
         (3 * j.k1 * j.g * j.g - 9 * j.k * j.k * j.k1 - 5 * j.g * j.a1 + j.b1) / 6};
  return t;
}

double poly(const std::array<double, 3>& c, double v) { return v * (c[0] + v * (c[1] + v * c[2])); }
double divided(const std::array<double, 3>& c, double v) { return c[0] + v * (c[1] + v * c[2]); }

}  // namespace

LineODECoeffs ode_coeffs_series(const UmbilicSurfaceSpec& spec, double u, double v) {
  const SeriesTerms t = series_terms(jet_at(spec, u));
  return {poly(t.L, v), poly(t.M, v), poly(t.N, v), CoeffSource::series};
}

LineODECoeffs reduced_coeffs_series(const UmbilicSurfaceSpec& spec, double u, double v) {
  const SeriesTerms t = series_terms(jet_at(spec, u));
  return {divided(t.L, v), divided(t.M, v), divided(t.N, v), CoeffSource::series};
}

double reduced_equation(const UmbilicSurfaceSpec& spec, double u, double v, double p) {
  return reduced_coeffs_series(spec, u, v).eval_p(p);
}

LineODECoeffs reduced_coeffs_numeric(const UmbilicSurfaceSpec& spec, double u, double v) {
  auto quotient = [&](double x) {
    const LineODECoeffs c = ode_coeffs_numeric(spec, u, x);
    return std::array<double, 3>{c.L / x, c.M / x, c.N / x};
  };
  if (std::abs(v) >= kReducedBand) {
    const auto q = quotient(v);
    return {q[0], q[1], q[2], CoeffSource::numeric};
  }
  constexpr double d = kReducedBand;
  const std::array<double, 5> nodes{-2 * d, -d, 0.0, d, 2 * d};
  std::array<std::array<double, 3>, 5> values;
  const double k1 = spec.k.eval(u, 1);
  for (int i = 0; i < 5; ++i) {
    values[i] = i == 2 ? std::array<double, 3>{-k1, spec.a(u), k1} : quotient(nodes[i]);
  }
  std::array<double, 3> out{0, 0, 0};
  for (int i = 0; i < 5; ++i) {
    double w = 1.0;
    for (int j = 0; j < 5; ++j) {
      if (j != i) w *= (v - nodes[j]) / (nodes[i] - nodes[j]);
    }
    for (int c = 0; c < 3; ++c) out[c] += w * values[i][c];
  }
  return {out[0], out[1], out[2], CoeffSource::numeric};
}

namespace {

// Roots of a x^2 + b x + c with |a| >= |c| > 0 or a != 0; stable form.
std::pair<double, double> quadratic_roots(double a, double b, double c, double disc) {
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q == 0.0) return {0.0, 0.0};
  return {q / a, c / q};
}

Eigen::Vector2d unit(double x, double y) { return Eigen::Vector2d(x, y).normalized(); }

double slope_of(const Eigen::Vector2d& w) {
  if (w.x() == 0.0) return w.y() >= 0 ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
  return w.y() / w.x();
}

}  // namespace

PrincipalDirections principal_directions(const LineODECoeffs& c) {
  constexpr double kZero = 1e-12;
  if (std::abs(c.L) < kZero && std::abs(c.M) < kZero && std::abs(c.N) < kZero) {
    throw UmbilicDegeneracy("principal directions undefined: L, M, N all vanish");
  }
  const double disc = c.discriminant();
  if (disc < -1e-10) throw InconsistentCoefficients("M^2 - 4LN < 0");

  PrincipalDirections out;
  Eigen::Vector2d a, b;
  if (c.L == 0.0 && c.N == 0.0) {
    a = {1.0, 0.0};
    b = {0.0, 1.0};
  } else if (std::abs(c.L) >= std::abs(c.N)) {
    const auto [p1, p2] = quadratic_roots(c.L, c.M, c.N, disc);
    a = unit(1.0, p1);
    b = unit(1.0, p2);
  } else {
    out.q_chart = true;
    const auto [q1, q2] = quadratic_roots(c.N, c.M, c.L, disc);
    a = unit(q1, 1.0);
    b = unit(q2, 1.0);
  }
  if (slope_of(a) > slope_of(b)) std::swap(a, b);
  out.w1 = a;
  out.w2 = b;
  out.p1 = slope_of(a);
  out.p2 = slope_of(b);
  return out;
}

double normal_curvature(const FundamentalForms& f, const Eigen::Vector2d& w) {
  const double du = w.x(), dv = w.y();
  const double second = f.e * du * du + 2 * f.f * du * dv + f.g * dv * dv;
  const double first = f.E * du * du + 2 * f.F * du * dv + f.G * dv * dv;
  return second / first;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::step_budget: return "step-budget";
    case Termination::strip_exit: return "strip-exit";
    case Termination::umbilic_hit: return "umbilic-hit";
    case Termination::discriminant_degeneracy: return "discriminant-degeneracy";
  }
  return "unknown";
}

namespace {

constexpr double kUmbilicHit = 1e-10;

bool inside(const UmbilicSurfaceSpec& spec, double u, double v) {
  return std::abs(v) <= spec.v_max && spec.in_domain(u);
}

double max_abs(const LineODECoeffs& c) {
  return std::max({std::abs(c.L), std::abs(c.M), std::abs(c.N)});
}

// Of the two principal directions, the one closest to `ref` with matching orientation.
Eigen::Vector2d follow(const PrincipalDirections& d, const Eigen::Vector2d& ref) {
  const double d1 = d.w1.dot(ref), d2 = d.w2.dot(ref);
  const Eigen::Vector2d& w = std::abs(d1) >= std::abs(d2) ? d.w1 : d.w2;
  return w.dot(ref) < 0 ? Eigen::Vector2d(-w) : w;
}

// Point where the one-step RK4 arc from `from` (at time t) leaves the strip;
// bisection on the step length, `h` being a step that ends outside.
template <class Rhs>
ChartPoint clip_to_strip(const UmbilicSurfaceSpec& spec, Rhs& rhs, double t, ChartPoint from,
                         double h) {
  const State<2> y0{from.u, from.v};
  double lo = 0.0, hi = 1.0;
  State<2> best = y0;
  for (int i = 0; i < 50; ++i) {
    const double mid = 0.5 * (lo + hi);
    const State<2> y = rk4_step<2>(rhs, t, y0, mid * h);
    if (inside(spec, y[0], y[1])) {
      lo = mid;
      best = y;
    } else {
      hi = mid;
    }
  }
  return {best[0], best[1]};
}

}  // namespace

Trajectory integrate_principal_line(const UmbilicSurfaceSpec& spec, ChartPoint start, int foliation,
                                    const LineOptions& opt) {
  if (foliation != 1 && foliation != 2) throw InvalidArgument("foliation must be 1 or 2");
  if (!(opt.ds > 0.0)) throw InvalidArgument("ds must be positive");
  if (!inside(spec, start.u, start.v)) throw OutOfStrip("start point outside the strip");

  const LineODECoeffs red0 = reduced_coeffs_numeric(spec, start.u, start.v);
  if (max_abs(red0) < kUmbilicHit) {
    throw AmbiguousStart(
        "direction field undetermined at the start (umbilic point); classify it with the "
        "blow-up analysis instead");
  }
  const PrincipalDirections dirs0 = principal_directions(red0);

  // Label the foliation by principal curvature; on the umbilic curve itself use
  // a nearby point on the v > 0 side.
  Eigen::Vector2d w0;
  {
    FundamentalForms forms = forms_numeric(spec, start.u, start.v);
    PrincipalDirections dirs = dirs0;
    if (forms.k2 - forms.k1 < 1e-8) {
      const double off = start.v + 1e-3 <= spec.v_max ? start.v + 1e-3 : start.v - 1e-3;
      forms = forms_numeric(spec, start.u, off);
      dirs = principal_directions(reduced_coeffs_numeric(spec, start.u, off));
    }
    const bool first_smaller = normal_curvature(forms, dirs.w1) <= normal_curvature(forms, dirs.w2);
    const Eigen::Vector2d labelled = (foliation == 1) == first_smaller ? dirs.w1 : dirs.w2;
    w0 = follow(dirs0, labelled);
    if (w0.x() < 0 || (w0.x() == 0 && w0.y() < 0)) w0 = -w0;
    if (opt.reverse) w0 = -w0;
  }

  Trajectory traj;
  traj.foliation = foliation;
  traj.points.push_back(start);

  Eigen::Vector2d ref = w0;
  Eigen::Vector2d last = w0;
  std::optional<Termination> stop;

  auto rhs = [&](double, const State<2>& y) {
    const FundamentalForms forms = forms_numeric(spec, y[0], y[1]);
    const LineODECoeffs red = reduced_coeffs_numeric(spec, y[0], y[1]);
    const Eigen::Vector2d w = follow(principal_directions(red), ref);
    last = w;
    const double metric =
        std::sqrt(forms.E * w.x() * w.x() + 2 * forms.F * w.x() * w.y() + forms.G * w.y() * w.y());
    return State<2>{w.x() / metric, w.y() / metric};
  };

  AdaptiveOptions ode;
  ode.abs_tol = opt.tol;
  ode.initial_step = opt.ds;
  ode.max_step = opt.ds;
  ode.max_steps = 100000;

  State<2> y{start.u, start.v};
  double s = 0.0;
  for (long step = 0; step < opt.max_steps && !stop; ++step) {
    ChartPoint previous{y[0], y[1]};
    double previous_t = s;
    auto observer = [&](double tt, const State<2>& z) {
      if (!inside(spec, z[0], z[1])) {
        stop = Termination::strip_exit;
        return false;
      }
      const LineODECoeffs red = reduced_coeffs_numeric(spec, z[0], z[1]);
      if (max_abs(red) < kUmbilicHit) {
        stop = Termination::umbilic_hit;
        return false;
      }
      if (red.discriminant() <= 1e-14 * max_abs(red) * max_abs(red)) {
        stop = Termination::discriminant_degeneracy;
        return false;
      }
      ref = last;
      previous = {z[0], z[1]};
      previous_t = tt;
      return true;
    };
    try {
      const auto result = integrate_dopri5<2>(rhs, s, y, s + opt.ds, ode, observer);
      if (stop == Termination::strip_exit) {
        traj.points.push_back(clip_to_strip(spec, rhs, previous_t, previous, result.t - previous_t));
        break;
      }
      if (result.status == IntegrationStatus::step_budget ||
          result.status == IntegrationStatus::step_underflow) {
        stop = Termination::discriminant_degeneracy;
      }
      y = result.y;
      s = result.t;
      traj.points.push_back({y[0], y[1]});
    } catch (const UmbilicDegeneracy&) {
      stop = Termination::umbilic_hit;
      traj.points.push_back(previous);
    } catch (const InconsistentCoefficients&) {
      stop = Termination::discriminant_degeneracy;
      traj.points.push_back(previous);
    }
  }
  traj.terminated_by = stop.value_or(Termination::step_budget);
  // A stop at an accepted point repeats the last output point; drop duplicates.
  if (traj.points.size() >= 2) {
    const ChartPoint& a = traj.points[traj.points.size() - 1];
    const ChartPoint& b = traj.points[traj.points.size() - 2];
    if (a.u == b.u && a.v == b.v) traj.points.pop_back();
  }
  return traj;
}

std::vector<ChartPoint> integrate_graph(const UmbilicSurfaceSpec& spec, ChartPoint start,
                                        GraphChart chart, double slope_hint, double end,
                                        double step, double tol) {
  if (!(step > 0.0)) throw InvalidArgument("graph step must be positive");
  const bool p_chart = chart == GraphChart::p;
  auto slopes = [&](double u, double v) {
    const PrincipalDirections d = principal_directions(reduced_coeffs_numeric(spec, u, v));
    auto s = [&](const Eigen::Vector2d& w) {
      const double num = p_chart ? w.y() : w.x();
      const double den = p_chart ? w.x() : w.y();
      return den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
    };
    return std::pair{s(d.w1), s(d.w2)};
  };
  double ref = slope_hint;
  double last = slope_hint;
  auto rhs = [&](double t, const State<1>& y) {
    const double u = p_chart ? t : y[0];
    const double v = p_chart ? y[0] : t;
    const auto [s1, s2] = slopes(u, v);
    last = std::abs(s1 - ref) <= std::abs(s2 - ref) ? s1 : s2;
    return State<1>{last};
  };

  const double t0 = p_chart ? start.u : start.v;
  const double dir = end >= t0 ? 1.0 : -1.0;
  AdaptiveOptions ode;
  ode.abs_tol = tol;
  ode.initial_step = step;
  ode.max_step = step;

  std::vector<ChartPoint> out{start};
  State<1> y{p_chart ? start.v : start.u};
  double t = t0;
  bool left = false;
  auto observer = [&](double tt, const State<1>& z) {
    const double u = p_chart ? tt : z[0];
    const double v = p_chart ? z[0] : tt;
    if (!inside(spec, u, v)) {
      left = true;
      return false;
    }
    ref = last;
    return true;
  };
  try {
    while (dir * (end - t) > 1e-15 * std::max(1.0, std::abs(end)) && !left) {
      const double target = dir * (end - t) > step ? t + dir * step : end;
      const auto r = integrate_dopri5<1>(rhs, t, y, target, ode, observer);
      if (left || r.status != IntegrationStatus::reached_end) break;
      t = r.t;
      y = r.y;
      out.push_back(p_chart ? ChartPoint{t, y[0]} : ChartPoint{y[0], t});
    }
  } catch (const UmbilicDegeneracy&) {
  } catch (const InconsistentCoefficients&) {
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& lines) {
  out << "foliation,index,u,v\n";
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.points.size(); ++i) {
      out << fmt::format("{},{},{:.12g},{:.12g}\n", line.foliation, i, line.points[i].u,
                         line.points[i].v);
    }
  }
}

}  // namespace umbilic
