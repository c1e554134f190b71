#include <cmath>
#include <numbers>

#include "doctest.h"
#include "umbilic/blowup.hpp"
#include "umbilic/portrait.hpp"

using namespace umbilic;

namespace {

void check_census(const PortraitCensus& c, int separatrices, int hyperbolic, int parabolic) {
  REQUIRE(c.conclusive);
  for (const auto& f : c.foliation) {
    CHECK(f.separatrices == separatrices);
    CHECK(f.hyperbolic_sectors == hyperbolic);
    CHECK(f.parabolic_sectors == parabolic);
  }
}

}  // namespace

TEST_SUITE("portrait") {

TEST_CASE("D3 jet: three separatrices and three hyperbolic sectors") {
  const auto c = phase_portrait_oracle(LinearJet::darboux(1, 0));
  check_census(c, 3, 3, 0);
  REQUIRE(c.verdict.has_value());
  CHECK(*c.verdict == Verdict::D3);
  CHECK(c.index == doctest::Approx(-0.5));
}

TEST_CASE("(3, 1): two separatrices, one hyperbolic and one parabolic sector") {
  const auto c = phase_portrait_oracle(LinearJet::darboux(3, 1));
  check_census(c, 2, 1, 1);
  REQUIRE(c.verdict.has_value());
  CHECK(*c.verdict == Verdict::D2);
  CHECK(*c.verdict == classify_darboux(3, 1).verdict);
  CHECK(c.index == doctest::Approx(0.5));
}

TEST_CASE("(0.5, 5): one separatrix, one hyperbolic sector") {
  const auto c = phase_portrait_oracle(LinearJet::darboux(0.5, 5));
  check_census(c, 1, 1, 0);
  REQUIRE(c.verdict.has_value());
  CHECK(*c.verdict == Verdict::D1);
  CHECK(c.index == doctest::Approx(0.5));
}

TEST_CASE("oracle agrees with the census at scattered points") {
  for (auto [A, B] : {std::pair{-2.0, 1.0}, {2.0, -1.5}, {-1.0, -2.5}, {2.5, 2.0}, {-2.5, -1.0}}) {
    CAPTURE(A);
    CAPTURE(B);
    const auto c = phase_portrait_oracle(LinearJet::darboux(A, B));
    const auto rep = classify_darboux(A, B);
    if (c.conclusive && c.verdict) CHECK(*c.verdict == rep.verdict);
    CHECK(c.index == doctest::Approx(rep.index));
  }
}

TEST_CASE("separatrices are transversal to the curve of umbilics") {
  for (auto [A, B] : {std::pair{1.0, 0.0}, {3.0, 1.0}, {0.5, 5.0}, {-2.0, 1.0}}) {
    const auto c = phase_portrait_oracle(LinearJet::darboux(A, B));
    for (const auto& f : c.foliation) {
      for (const auto& ray : f.rays) {
        if (ray.kind != RayKind::separatrix) continue;
        CHECK(std::abs(std::sin(ray.phi)) > 1e-3);  // not along v = 0
        CHECK(std::abs(std::cos(ray.phi)) > 1e-3);  // not along u = 0
      }
    }
  }
}

TEST_CASE("separatrix directions are real roots of R") {
  const double A = 3, B = 1;
  const auto roots = roots_R(A, B);
  const auto c = phase_portrait_oracle(LinearJet::darboux(A, B));
  for (const auto& f : c.foliation) {
    for (const auto& ray : f.rays) {
      double best = 1e9;
      for (double p : roots.real) best = std::min(best, std::abs(std::atan(ray.slope) - std::atan(p)));
      CHECK(best < 1e-3);
    }
  }
}

TEST_CASE("a = 0 jet is D3") {
  const auto c = phase_portrait_oracle(LinearJet::a_zero(0.625));
  check_census(c, 3, 3, 0);
  REQUIRE(c.verdict.has_value());
  CHECK(*c.verdict == Verdict::D3);
}

TEST_CASE("too short a fan leaves the census inconclusive") {
  OracleOptions opt;
  opt.rho_span = 0.05;
  const auto c = phase_portrait_oracle(LinearJet::darboux(3, 1), opt);
  CHECK_FALSE(c.conclusive);
  CHECK_FALSE(c.verdict.has_value());
}

}  // TEST_SUITE
