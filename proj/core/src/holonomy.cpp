#include "umbilic/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "umbilic/errors.hpp"
#include "umbilic/lineode.hpp"
#include "umbilic/ode.hpp"
#include "umbilic/quadrature.hpp"

namespace umbilic {

std::string_view to_string(Spiral s) {
  switch (s) {
    case Spiral::toward: return "toward";
    case Spiral::away: return "away";
    case Spiral::none_at_second_order: return "none-at-second-order";
  }
  return "unknown";
}

void require_constant_k_positive_a(const UmbilicSurfaceSpec& spec) {
  constexpr int kSamples = 1024;
  for (int i = 0; i <= kSamples; ++i) {
    const double u = spec.u_begin + spec.l * i / kSamples;
    if (std::abs(spec.k.eval(u, 1)) > 1e-12) {
      throw HypothesisViolation("k is not constant along the curve (k'(" + std::to_string(u) +
                                ") != 0)");
    }
    if (!(spec.a(u) > 0.0)) {
      throw HypothesisViolation("a(u) <= 0 at u = " + std::to_string(u));
    }
  }
}

double first_variation(const UmbilicSurfaceSpec& spec, double u) {
  require_constant_k_positive_a(spec);
  const double au = spec.a(u);
  if (!(au > 0.0)) throw HypothesisViolation("a(u) <= 0 at u = " + std::to_string(u));
  return std::sqrt(spec.a(spec.u_begin) / au);
}

namespace {

struct Sources {
  const UmbilicSurfaceSpec& spec;
  double a0;

  // S(u) with a q' + a' q / 2 = S.
  double source(double u) const {
    const double a = spec.a(u), da = spec.a.eval(u, 1);
    const double k = spec.k(u), k3 = k * k * k;
    const double b = spec.b(u), db = spec.b.eval(u, 1);
    return 0.5 * a0 * da * b / (a * a) - 1.5 * a0 * da * k3 / (a * a) +
           a0 * da * spec.kg(u) / (6 * a) - a0 * db / (3 * a);
  }

  // Integrand of the closed form.
  double closed_integrand(double u) const {
    const double a = spec.a(u), da = spec.a.eval(u, 1);
    const double k = spec.k(u);
    const double b = spec.b(u), db = spec.b.eval(u, 1);
    const double s = std::sqrt(a);
    return da * (3 * b - 9 * k * k * k) / (a * a * s) + (da * spec.kg(u) - 2 * db) / (a * s);
  }
};

}  // namespace

std::vector<SecondVariationSample> second_variation_ode(const UmbilicSurfaceSpec& spec,
                                                        const std::vector<double>& u_grid) {
  require_constant_k_positive_a(spec);
  if (!std::is_sorted(u_grid.begin(), u_grid.end())) {
    throw InvalidArgument("second_variation_ode: u grid must be ascending");
  }
  const Sources src{spec, spec.a(spec.u_begin)};
  auto rhs = [&](double u, const State<1>& q) {
    return State<1>{(src.source(u) - 0.5 * spec.a.eval(u, 1) * q[0]) / spec.a(u)};
  };
  auto integrand = [&](double u) { return src.closed_integrand(u); };

  AdaptiveOptions ode;
  ode.abs_tol = 1e-13;
  ode.initial_step = 1e-3;

  std::vector<SecondVariationSample> out;
  out.reserve(u_grid.size());
  double u = spec.u_begin;
  State<1> q{0.0};
  double integral = 0.0;
  for (double target : u_grid) {
    if (target < spec.u_begin) throw InvalidArgument("second_variation_ode: u before the curve start");
    if (target > u) {
      q = integrate_dopri5<1>(rhs, u, q, target, ode).y;
      integral += adaptive_simpson(integrand, u, target, 1e-13);
      u = target;
    }
    out.push_back({target, q[0], src.a0 / 6 / std::sqrt(spec.a(target)) * integral});
  }
  return out;
}

ReturnMapReport return_map_analytic(const UmbilicSurfaceSpec& spec, double none_tol) {
  if (!spec.closed) throw HypothesisViolation("return map needs a closed curve of umbilics");
  require_constant_k_positive_a(spec);
  ReturnMapReport rep;
  rep.a0 = spec.a(spec.u_begin);
  rep.pi_prime = 1.0;
  auto integrand = [&](double u) {
    const double a = spec.a(u);
    return spec.kg(u) * spec.a.eval(u, 1) / (a * std::sqrt(a));
  };
  rep.spiral_integral = adaptive_simpson(integrand, spec.u_begin, spec.u_end(), 1e-10);
  rep.pi_second_analytic = std::sqrt(rep.a0) / 6 * rep.spiral_integral;
  // pi(v0) = v0 + pi'' v0^2 / 2: pi'' < 0 pulls v > 0 leaves back toward v = 0.
  if (std::abs(rep.pi_second_analytic) < none_tol) {
    rep.spiral = Spiral::none_at_second_order;
  } else {
    rep.spiral = rep.pi_second_analytic < 0 ? Spiral::toward : Spiral::away;
  }
  return rep;
}

ReturnMapReport return_map_numeric(const UmbilicSurfaceSpec& spec, const ReturnMapOptions& opt) {
  ReturnMapReport rep = return_map_analytic(spec, opt.none_tol);
  if (opt.v0_grid.size() < 2) throw InvalidArgument("return map fit needs at least two v0 values");

  const double u_end = spec.u_end();
  const double step = spec.l / 200;
  double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
  for (double v0 : opt.v0_grid) {
    if (!(v0 > 0.0)) throw InvalidArgument("return map v0 values must be positive");
    if (v0 > spec.v_max) throw V0TooLarge(v0, "v0 = " + std::to_string(v0) + " outside the strip");
    const auto path = integrate_graph(spec, {spec.u_begin, v0}, GraphChart::p, 0.0, u_end, step,
                                      opt.tol);
    if (std::abs(path.back().u - u_end) > 1e-9 * std::max(1.0, std::abs(u_end))) {
      throw V0TooLarge(v0, "trajectory from v0 = " + std::to_string(v0) +
                               " left the strip before completing one period");
    }
    const double pi = path.back().v;
    rep.samples.push_back({v0, pi});
    // Weighted least squares for pi = alpha v0 + beta v0^2, weights 1/v0^2.
    const double w = 1 / (v0 * v0);
    const double x1 = v0, x2 = v0 * v0;
    s00 += w * x1 * x1;
    s01 += w * x1 * x2;
    s11 += w * x2 * x2;
    r0 += w * x1 * pi;
    r1 += w * x2 * pi;
  }
  const double det = s00 * s11 - s01 * s01;
  const double alpha = (r0 * s11 - r1 * s01) / det;
  const double beta = (s00 * r1 - s01 * r0) / det;
  rep.pi_prime_numeric = alpha;
  rep.pi_second_numeric = 2 * beta;
  rep.relative_error = std::abs(rep.pi_second_analytic) >= opt.none_tol
                           ? std::abs(rep.pi_second_numeric - rep.pi_second_analytic) /
                                 std::abs(rep.pi_second_analytic)
                           : std::abs(rep.pi_second_numeric);
  return rep;
}

}  // namespace umbilic
