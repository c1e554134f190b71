#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "random_spec.hpp"
#include "umbilic/chart.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/verify.hpp"

using namespace umbilic;
using umbilic::testing::random_open_spec;

namespace {

UmbilicSurfaceSpec simple(double k, double kg, double a, double b, double v_max = 0.4) {
  SurfaceOptions opt;
  opt.u_begin = -1.0;
  opt.v_max = v_max;
  return make_surface(2.0,
                      {ScalarProfile::constant(k), ScalarProfile::constant(kg),
                       ScalarProfile::constant(a), ScalarProfile::constant(b)},
                      opt);
}

UmbilicSurfaceSpec cubic_spec() {
  SurfaceOptions opt;
  opt.u_begin = -0.5;
  return make_surface(1.0, {ScalarProfile::polynomial({1.0, 0.3, -0.4, 0.2}),
                            ScalarProfile::polynomial({0.2, 0.1}),
                            ScalarProfile::polynomial({0.7, -0.3, 0.5}),
                            ScalarProfile::polynomial({0.4, 0.2})},
                      opt);
}

double umbilic_gap(const UmbilicSurfaceSpec& s, double h) {
  FiniteDifferenceOptions fd{h, false};
  double worst = 0;
  for (int i = 0; i <= 20; ++i) {
    const double u = s.u_begin + 0.05 + 0.9 * s.l * i / 20.0;
    const auto f = forms_numeric(s, u, 0.0, fd);
    worst = std::max(worst, f.k2 - f.k1);
  }
  return worst;
}

}  // namespace

TEST_SUITE("chart") {

TEST_CASE("chart examples") {
  auto s = simple(1.0, 0.0, 0.0, 0.0, 2.0);
  CHECK((eval_chart(s, 0.3, 0.0) - s.frame.nearest(0.3).c).norm() < 1e-6);

  // k = 1, k_g = 0 with the frame anchored at u = 0
  SurfaceOptions at0;
  at0.v_max = 2.0;
  auto bend = make_surface(1.0, {ScalarProfile::constant(1.0), ScalarProfile::constant(0.0),
                                 ScalarProfile::constant(0.0), ScalarProfile::constant(0.0)},
                           at0);
  CHECK((eval_chart(bend, 0.0, 1.0) - Vec3(0, 1, 0.5)).norm() < 1e-12);

  auto cubic = make_surface(1.0, {ScalarProfile::constant(0.0), ScalarProfile::constant(0.0),
                                  ScalarProfile::constant(6.0), ScalarProfile::constant(0.0)},
                            at0);
  CHECK((eval_chart(cubic, 0.0, 1.0) - Vec3(0, 1, 1)).norm() < 1e-12);
}

TEST_CASE("strip and domain are enforced") {
  auto s = simple(1.0, 0.2, 0.5, 0.0);
  CHECK_THROWS_AS(eval_chart(s, 0.0, 0.41), OutOfStrip);
  CHECK_THROWS_AS(eval_chart(s, 1.5, 0.0), OutOfStrip);
  CHECK_NOTHROW(eval_chart(s, 0.0, -0.4));

  auto dflt = make_surface(1.0, {ScalarProfile::constant(4.0), ScalarProfile::constant(0.0),
                                 ScalarProfile::constant(0.0), ScalarProfile::constant(0.0)});
  CHECK(dflt.v_max == doctest::Approx(0.125));
}

TEST_CASE("closed surfaces need l-periodic profiles") {
  SurfaceOptions opt;
  opt.closed = true;
  const double l = 2 * std::numbers::pi;
  auto periodic = ScalarProfile::fourier(l, {1.0, 0.2});
  SurfaceProfiles good{periodic, periodic, periodic, ScalarProfile::constant(0.0)};
  CHECK_NOTHROW(make_surface(l, good, opt));
  SurfaceProfiles bad{periodic, ScalarProfile::polynomial({0.0, 1.0}), periodic, periodic};
  CHECK_THROWS_AS(make_surface(l, bad, opt), InvalidArgument);
}

TEST_CASE("on the curve the forms are those of an umbilic") {
  auto s = cubic_spec();
  for (double u : {-0.3, 0.0, 0.25}) {
    const auto f = forms_numeric(s, u, 0.0);
    const double k = s.k(u);
    CHECK(f.E == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(f.F) < 1e-8);
    CHECK(f.G == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(f.e == doctest::Approx(k).epsilon(1e-8));
    CHECK(std::abs(f.f) < 1e-8);
    CHECK(f.g == doctest::Approx(k).epsilon(1e-8));
    CHECK(f.H == doctest::Approx(k).epsilon(1e-8));
    CHECK(f.K == doctest::Approx(k * k).epsilon(1e-8));
    CHECK(f.k2 - f.k1 < 1e-6);

    const auto r = forms_series(s, u, 0.0);
    CHECK(r.E == 1.0);
    CHECK(r.F == 0.0);
    CHECK(r.e == k);
    CHECK(r.g == k);
    const auto [H, K] = hk_series(s, u, 0.0);
    CHECK(H == k);
    CHECK(K == k * k);
  }
}

TEST_CASE("flat strip series and vanishing F when k' = 0") {
  auto flat = simple(0.0, 0.0, 0.0, 0.0);
  const auto f = forms_series(flat, 0.1, 0.3);
  CHECK(f.E == 1.0);
  CHECK(f.F == 0.0);
  CHECK(f.G == 1.0);
  auto sph = simple(1.3, 0.4, 0.7, 0.2);
  CHECK(forms_series(sph, 0.1, 0.3).F == 0.0);
}

TEST_CASE("H - k is second order in v when a = 0") {
  auto s = simple(1.0, 0.3, 0.0, 0.5);
  const auto vs = geometric_grid(1e-3, 1e-2, 5);
  std::vector<double> d;
  for (double v : vs) d.push_back(std::abs(forms_numeric(s, 0.0, v).H - 1.0));
  CHECK(loglog_slope(vs, d) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("umbilic gap on v = 0 shrinks like h^2") {
  auto s = cubic_spec();
  const double coarse = umbilic_gap(s, 1e-3);
  const double fine = umbilic_gap(s, 5e-4);
  CHECK(coarse < 1e-5);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("forms invariants at 1000 random points over 10 random specs") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const auto s = random_open_spec(rng);
    for (int j = 0; j < 100; ++j) {
      const double u = 0.45 * unit(rng);
      const double v = s.v_max * unit(rng);
      const auto f = forms_numeric(s, u, v);
      REQUIRE(f.E > 0);
      REQUIRE(f.G > 0);
      REQUIRE(f.E * f.G - f.F * f.F > 0);
      const double W2 = f.E * f.G - f.F * f.F;
      CHECK(f.H == doctest::Approx((f.E * f.g - 2 * f.F * f.f + f.G * f.e) / (2 * W2)));
      CHECK(f.K == doctest::Approx((f.e * f.g - f.f * f.f) / W2));
      CHECK(std::abs(f.k1 + f.k2 - 2 * f.H) < 1e-10);
      CHECK(std::abs(f.k1 * f.k2 - f.K) < 1e-10);
      CHECK(f.H * f.H - f.K >= -1e-12);
      CHECK(f.k1 <= f.k2);
    }
  }
}

TEST_CASE("complete_forms clamps roundoff-negative H^2 - K") {
  const auto f = complete_forms(1, 0, 1, 2, 0, 2);
  CHECK(f.k1 == 2.0);
  CHECK(f.k2 == 2.0);
}

TEST_CASE("surface normal matches the frame normal on the curve") {
  auto s = cubic_spec();
  const Vec3 n = surface_normal(s, 0.2, 0.0);
  CHECK((n - s.frame.nearest(0.2).N).norm() < 1e-3);  // nearest sample is within 5e-4 in u
  CHECK(std::abs(n.norm() - 1.0) < 1e-14);
}

TEST_CASE("order law: six coefficients of the first and second forms") {
  auto s = cubic_spec();
  const auto grid = geometric_grid(1e-3, 1e-1, 9);
  for (const auto& law : order_law(s, 0.1, grid)) {
    const std::string name(law.name);
    CAPTURE(name);
    CAPTURE(law.slope);
    if (name == "e" || name == "g" || name == "K") {
      CHECK_FALSE(law.passes);
    } else {
      CHECK(law.passes);
    }
  }
}

TEST_CASE("the finite-difference oracle pins down the mismatched terms") {
  // numeric - series = -k^2 (a + k')/2 v^3 for e and g, and (k'' - k'^2) v^2 for K.
  auto s = cubic_spec();
  const double u = 0.1, v = 1e-3;
  const double k = s.k(u), k1 = s.k.eval(u, 1), k2 = s.k.eval(u, 2), a = s.a(u);
  const auto n = forms_numeric(s, u, v);
  const auto r = forms_series(s, u, v);
  const double cubic = -0.5 * k * k * (a + k1);
  CHECK((n.e - r.e) / (v * v * v) == doctest::Approx(cubic).epsilon(5e-3));
  CHECK((n.g - r.g) / (v * v * v) == doctest::Approx(cubic).epsilon(5e-3));
  const double K_printed = hk_series(s, u, v).second;
  CHECK((n.K - K_printed) / (v * v) == doctest::Approx(k2 - k1 * k1).epsilon(5e-3));
}

TEST_CASE("focal sheets") {
  const auto f = complete_forms(1, 0, 1, 1, 0, 2);
  const auto [p1, p2] = focal_sheets(f, Vec3::Zero(), Vec3::UnitZ());
  CHECK((p1 - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK((p2 - Vec3(0, 0, 0.5)).norm() < 1e-15);

  auto s = simple(1.0, 0.2, 0.3, 0.0);
  const auto on = forms_numeric(s, 0.0, 0.0);
  const Vec3 c = eval_chart(s, 0.0, 0.0);
  const Vec3 N = surface_normal(s, 0.0, 0.0);
  const auto [q1, q2] = focal_sheets(on, c, N);
  CHECK((q1 - q2).norm() < 1e-6);
  CHECK((q1 - (c + N)).norm() < 1e-6);

  auto planar = simple(0.0, 0.5, 0.0, 0.0);
  const auto fp = forms_numeric(planar, 0.0, 0.0);
  try {
    focal_sheets(fp, Vec3::Zero(), Vec3::UnitZ());
    FAIL("expected InfiniteFocalRadius");
  } catch (const InfiniteFocalRadius& e) {
    CHECK(e.sheets() == "k1,k2");
  }
  try {
    focal_sheets(complete_forms(1, 0, 1, 0, 0, 1), Vec3::Zero(), Vec3::UnitZ());
    FAIL("expected InfiniteFocalRadius");
  } catch (const InfiniteFocalRadius& e) {
    CHECK(e.sheets() == "k1");
  }
}

}  // TEST_SUITE
