// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "random_spec.hpp"
#include "umbilic/blowup.hpp"
#include "umbilic/curvebuild.hpp"
#include "umbilic/holonomy.hpp"
#include "umbilic/lineode.hpp"
#include "umbilic/portrait.hpp"
#include "umbilic/verify.hpp"

using namespace umbilic;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double draw_away_from_zero(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::bernoulli_distribution sign(0.5);
  return sign(rng) ? mag(rng) : -mag(rng);
}

double max_umbilic_gap(const UmbilicSurfaceSpec& s, const FiniteDifferenceOptions& fd) {
  double worst = 0;
  for (int i = 0; i <= 40; ++i) {
    const double u = s.u_begin + s.l * (0.02 + 0.96 * i / 40.0);
    const auto f = forms_numeric(s, u, 0.0, fd);
    worst = std::max(worst, std::abs(f.k2 - f.k1));
  }
  return worst;
}

Outcome umbilic_line() {
  std::mt19937_64 rng(101);
  double worst = 0, min_ratio = 1e9, max_ratio = 0;
  for (int i = 0; i < 10; ++i) {
    const auto s = umbilic::testing::random_open_spec(rng);
    worst = std::max(worst, max_umbilic_gap(s, {1e-4, true}));
    const double coarse = max_umbilic_gap(s, {1e-4, false});
    const double fine = max_umbilic_gap(s, {5e-5, false});
    min_ratio = std::min(min_ratio, coarse / fine);
    max_ratio = std::max(max_ratio, coarse / fine);
  }
  const bool pass = worst < 1e-6 && min_ratio > 3.0 && max_ratio < 5.0;
  return {pass, format("max |k2-k1| = %.2e at h = 1e-4; plain-stencil ratio h/(h/2) in [%.2f, %.2f]",
                       worst, min_ratio, max_ratio)};
}

// Terms the finite-difference oracle adds to the printed series (numeric - series).
double oracle_correction(const UmbilicSurfaceSpec& s, std::string_view name, double u, double v) {
  const double k = s.k(u), k1 = s.k.eval(u, 1), k2 = s.k.eval(u, 2), a = s.a(u);
  if (name == "e" || name == "g") return -0.5 * k * k * (a + k1) * v * v * v;
  if (name == "K") return (k2 - k1 * k1) * v * v;
  return 0.0;
}

Outcome order_law_check() {
  std::mt19937_64 rng(202);
  const auto grid = geometric_grid(1e-3, 1e-1, 9);
  std::map<std::string, int> flagged;
  bool pass = true;
  std::string failures;
  for (int i = 0; i < 5; ++i) {
    const auto s = umbilic::testing::random_open_spec(rng);
    const double u = 0.1;
    std::vector<std::vector<double>> raw(kComparedCoefficients), fixed(kComparedCoefficients);
    std::array<CoefficientPair, kComparedCoefficients> last{};
    for (double v : grid) {
      last = compare_series(s, u, v);
      for (int c = 0; c < kComparedCoefficients; ++c) {
        const double d = last[c].numeric - last[c].series;
        raw[c].push_back(std::abs(d));
        fixed[c].push_back(std::abs(d - oracle_correction(s, last[c].name, u, v)));
      }
    }
    for (int c = 0; c < kComparedCoefficients; ++c) {
      const std::string name(last[c].name);
      const double need = last[c].order - 0.5;
      if (loglog_slope(grid, raw[c]) >= need) continue;
      flagged[name]++;
      const double corrected = loglog_slope(grid, fixed[c]);
      const bool explained = (name == "e" || name == "g" || name == "K") && corrected >= need;
      if (!explained) {
        pass = false;
        failures += format(" %s(spec %d, corrected slope %.2f)", name.c_str(), i, corrected);
      }
    }
  }
  std::string names;
  for (const auto& [name, count] : flagged) names += format(" %s(%d/5)", name.c_str(), count);
  if (names.empty()) names = " none";
  std::string detail = "flagged:" + names + "; every flagged term restores its order with the oracle's coefficient";
  if (!pass) detail = "unexplained:" + failures + "; flagged:" + names;
  return {pass, detail};
}

Outcome transversal_roots() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> da(-2.0, 2.0);
  double worst_root = 0, worst_product = 0;
  for (int i = 0; i < 100; ++i) {
    const double kp = draw_away_from_zero(rng, 0.05, 2.0), a = da(rng);
    SurfaceOptions opt;
    opt.u_begin = -0.5;
    const auto s = make_surface(1.0, {ScalarProfile::polynomial({1.0, kp}), ScalarProfile::constant(0.3),
                                      ScalarProfile::constant(a), ScalarProfile::constant(0.0)},
                                opt);
    const auto d = principal_directions(reduced_coeffs_numeric(s, 0.2, 0.0));
    const double root = std::sqrt(a * a + 4 * kp * kp);
    double lo = (a - root) / (2 * kp), hi = (a + root) / (2 * kp);
    if (lo > hi) std::swap(lo, hi);
    worst_root = std::max({worst_root, std::abs(d.p1 - lo) / std::max(1.0, std::abs(lo)),
                           std::abs(d.p2 - hi) / std::max(1.0, std::abs(hi))});
    worst_product = std::max(worst_product, std::abs(d.p1 * d.p2 + 1));
  }
  return {worst_root < 1e-10 && worst_product < 1e-10,
          format("100 pairs: max root error %.1e, max |p+ p- + 1| = %.1e", worst_root, worst_product)};
}

Outcome quadratic_contact() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> small(-0.5, 0.5);
  double worst = 0;
  for (int i = 0; i < 5; ++i) {
    const double k2 = draw_away_from_zero(rng, 0.5, 2.0), a0 = draw_away_from_zero(rng, 0.5, 2.0);
    SurfaceOptions opt;
    opt.u_begin = -0.5;
    opt.v_max = 0.2;
    const auto s = make_surface(
        1.0,
        {ScalarProfile::polynomial({1.0, 0.0, k2 / 2, small(rng)}), ScalarProfile::constant(small(rng)),
         ScalarProfile::polynomial({a0, small(rng)}), ScalarProfile::constant(small(rng))},
        opt);
    std::vector<ChartPoint> pts = integrate_graph(s, {0.0, 0.0}, GraphChart::p, 0.0, 0.04, 0.002);
    const auto left = integrate_graph(s, {0.0, 0.0}, GraphChart::p, 0.0, -0.04, 0.002);
    pts.insert(pts.end(), left.begin() + 1, left.end());
    Eigen::MatrixXd X(pts.size(), 3);
    Eigen::VectorXd y(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double u = pts[j].u;
      X.row(j) << u * u, u * u * u, u * u * u * u;
      y(j) = pts[j].v;
    }
    const double fitted = X.colPivHouseholderQr().solve(y)(0);
    const double expected = -k2 / (2 * a0);
    worst = std::max(worst, std::abs(fitted - expected) / std::abs(expected));
  }
  return {worst < 0.02, format("5 tangential scenarios: max relative deviation %.2e", worst)};
}

Outcome lambda2_is_R_prime() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = d(rng), A = d(rng), B = d(rng);
    worst = std::max(worst, std::abs(eigenvalues_at(p, A, B).lambda2 - cubic_R(A, B).derivative(p)));
  }
  return {worst < 1e-12, format("100 triples: max |lambda2 - R'| = %.1e", worst)};
}

UmbilicSurfaceSpec darboux_surface(double A, double B) {
  // a = u (a' = 1), k = 1 + k'' u^2 / 2
  const double k2 = -A / 2;
  const double b0 = B + 3 + k2;
  SurfaceOptions opt;
  opt.u_begin = -0.5;
  return make_surface(1.0, {ScalarProfile::polynomial({1.0, 0.0, k2 / 2}), ScalarProfile::constant(0.2),
                            ScalarProfile::polynomial({0.0, 1.0}), ScalarProfile::constant(b0)},
                      opt);
}

Outcome concordance() {
  struct Cell {
    int count = 0;
    std::map<Verdict, int> census;
    Verdict printed = Verdict::degenerate;
  };
  std::map<std::pair<int, int>, Cell> table;
  int cells = 0, conclusive = 0, agree = 0;
  std::string mismatches;
  for (int i = 0; i < 13; ++i) {
    for (int j = 0; j < 13; ++j) {
      const double A = -3 + 0.5 * i, B = -3 + 0.5 * j;
      const auto dd = delta_Delta(A, B);
      if (std::abs(dd.Delta) < 0.1 || std::abs(dd.delta) < 0.1) continue;
      ++cells;
      const auto rep = classify_point(darboux_surface(A, B), 0.0);
      const auto oracle = phase_portrait_oracle(rep.jet);
      auto& cell = table[{dd.Delta > 0 ? 1 : -1, dd.delta > 0 ? 1 : -1}];
      cell.count++;
      cell.census[rep.verdict]++;
      cell.printed = rep.paper_verdict;
      if (!oracle.conclusive || !oracle.verdict) continue;
      ++conclusive;
      // A = 0 makes k constant: the point is then an a = 0 point, whose
      // three-saddle census the oracle reports as plain D3.
      const Verdict census = rep.verdict == Verdict::a_zero_D3 ? Verdict::D3 : rep.verdict;
      if (*oracle.verdict == census) {
        ++agree;
      } else {
        mismatches += format(" (%.1f,%.1f)", A, B);
      }
    }
  }
  std::printf("  contingency table (sign Delta, sign delta) -> census verdicts | printed table\n");
  for (const auto& [signs, cell] : table) {
    std::string census;
    for (const auto& [v, n] : cell.census) census += format(" %s:%d", std::string(to_string(v)).c_str(), n);
    std::printf("    Delta %c0, delta %c0: %3d cells ->%s | printed %s\n", signs.first > 0 ? '>' : '<',
                signs.second > 0 ? '>' : '<', cell.count, census.c_str(),
                std::string(to_string(cell.printed)).c_str());
  }
  const bool pass = conclusive > 0 && agree == conclusive;
  std::string detail = format("%d cells, %d conclusive, %d agree with the oracle", cells, conclusive, agree);
  if (!mismatches.empty()) detail += "; mismatches:" + mismatches;
  return {pass, detail};
}

Outcome a_zero() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  bool pass = true;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const auto rep = a_zero_blowup(d(rng));
    pass = pass && rep.singularities.size() == 3 && rep.verdict == Verdict::a_zero_D3;
    for (const auto& s : rep.singularities) {
      pass = pass && s.kind == SingularityKind::saddle;
      if (s.p == 0.0) {
        pass = pass && s.lambda1 * s.lambda2 == -6.0;
      } else {
        worst = std::max({worst, std::abs(s.lambda1 + 1 + s.p * s.p), std::abs(s.lambda2 - 3 - s.p * s.p)});
      }
    }
  }
  pass = pass && worst < 1e-9;
  return {pass, format("20 values of a1: 3 saddles each, max eigenvalue error %.1e, lambda1 lambda2 = -6 at p = 0", worst)};
}

UmbilicSurfaceSpec holonomy_surface(ScalarProfile kg) {
  SurfaceOptions opt;
  opt.closed = true;
  return make_surface(kTwoPi, {ScalarProfile::constant(0.0), std::move(kg),
                               ScalarProfile::fourier(kTwoPi, {2.0, 0.0, 1.0}), ScalarProfile::constant(0.0)},
                      opt);
}

Outcome return_map() {
  const auto flat = return_map_numeric(holonomy_surface(ScalarProfile::constant(1.0)));
  const auto spiral = return_map_numeric(holonomy_surface(ScalarProfile::fourier(kTwoPi, {0.0, 1.0})));
  const double rel = std::abs(spiral.pi_second_numeric - spiral.pi_second_analytic) /
                     std::abs(spiral.pi_second_analytic);
  const double slope = std::max(std::abs(flat.pi_prime_numeric - 1), std::abs(spiral.pi_prime_numeric - 1));
  const bool pass = std::abs(flat.pi_second_numeric) < 1e-3 && rel < 0.05 && slope < 1e-4;
  return {pass, format("k_g const: pi'' = %.1e; cos/sin: pi'' = %.6f vs %.6f (rel %.2e); max |pi' - 1| = %.1e",
                       flat.pi_second_numeric, spiral.pi_second_numeric, spiral.pi_second_analytic, rel, slope)};
}

Outcome second_variation() {
  std::mt19937_64 rng(707);
  std::vector<double> grid;
  for (int i = 0; i <= 32; ++i) grid.push_back(kTwoPi * i / 32);
  double worst = 0;
  for (int i = 0; i < 5; ++i) {
    const auto q = second_variation_ode(umbilic::testing::random_holonomy_spec(rng), grid);
    double scale = 0, diff = 0;
    for (const auto& x : q) {
      scale = std::max(scale, std::abs(x.q_closed));
      diff = std::max(diff, std::abs(x.q_ode - x.q_closed));
    }
    worst = std::max(worst, diff / scale);
  }
  return {worst < 1e-6, format("5 random scenarios: max relative difference %.1e", worst)};
}

Outcome closure() {
  const auto zero = closure_check(ScalarProfile::constant(0.0), 4.0);
  const auto full = closure_check(ScalarProfile::constant(1.0), kTwoPi);
  const auto open = closure_check(ScalarProfile::constant(1.0), 1.0);
  double monodromy = 0;
  for (const auto* r : {&zero, &full, &open}) {
    monodromy = std::max(monodromy, std::abs(wrap_angle(r->frame_monodromy_angle - r->residual)));
  }
  const bool pass = zero.passes && std::abs(zero.residual) < 1e-12 && full.passes &&
                    std::abs(full.residual) < 1e-9 && !open.passes && monodromy < 1e-6;
  return {pass, format("residuals %.1e, %.1e, %.3f (fails); max |monodromy - residual| = %.1e",
                       zero.residual, full.residual, open.residual, monodromy)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"umbilic-line property", umbilic_line},
      {"series order law", order_law_check},
      {"transversal-case roots", transversal_roots},
      {"quadratic contact", quadratic_contact},
      {"lambda2 = R'", lambda2_is_R_prime},
      {"classification oracle concordance", concordance},
      {"a = 0 blow-up", a_zero},
      {"return map", return_map},
      {"second-variation cross-check", second_variation},
      {"closure", closure},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
