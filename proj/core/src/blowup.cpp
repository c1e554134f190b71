#include "umbilic/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(PointCase c) {
  switch (c) {
    case PointCase::transversal: return "transversal";
    case PointCase::tangential: return "tangential";
    case PointCase::darboux_like: return "darboux_like";
    case PointCase::a_zero: return "a_zero";
    case PointCase::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string_view to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::saddle: return "saddle";
    case SingularityKind::node: return "node";
    case SingularityKind::nonhyperbolic: return "nonhyperbolic";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::transversal: return "transversal";
    case Verdict::tangential: return "tangential";
    case Verdict::D1: return "D1";
    case Verdict::D2: return "D2";
    case Verdict::D3: return "D3";
    case Verdict::a_zero_D3: return "a_zero_D3";
    case Verdict::degenerate: return "degenerate";
  }
  return "unknown";
}

DeltaPair delta_Delta(double A, double B) {
  const double A2 = A * A, B2 = B * B;
  const double Delta = -4 * A2 * A2 + 12 * B * A2 * A - (36 + 12 * B2) * A2 +
                       (4 * B2 * B + 72 * B) * A - 9 * B2 - 108;
  return {Delta, 2 - A * B};
}

LocalInvariants local_invariants(const UmbilicSurfaceSpec& spec, double u0, double tol) {
  LocalInvariants inv;
  inv.u0 = u0;
  inv.kprime = spec.k.eval(u0, 1);
  inv.ksecond = spec.k.eval(u0, 2);
  inv.a0 = spec.a(u0);
  inv.aprime = spec.a.eval(u0, 1);
  inv.b0 = spec.b(u0);
  inv.k0 = spec.k(u0);
  inv.kg0 = spec.kg(u0);

  const double k3 = inv.k0 * inv.k0 * inv.k0;
  if (std::abs(inv.kprime) > tol) {
    inv.point_case = PointCase::transversal;
  } else if (std::abs(inv.ksecond) > tol && std::abs(inv.a0) > tol) {
    inv.point_case = PointCase::tangential;
  } else if (std::abs(inv.a0) <= tol && std::abs(inv.aprime * inv.ksecond) > tol * tol) {
    inv.point_case = PointCase::darboux_like;
    inv.A = -2 * inv.ksecond / inv.aprime;
    inv.B = (inv.b0 - 3 * k3 - inv.ksecond) / inv.aprime;
    const DeltaPair d = delta_Delta(inv.A, inv.B);
    inv.Delta = d.Delta;
    inv.delta = d.delta;
  } else if (spec.k.is_constant() && std::abs(inv.a0) <= tol && std::abs(inv.aprime) > tol) {
    inv.point_case = PointCase::a_zero;
    inv.a1 = (inv.b0 - 3 * k3) / inv.aprime;
  } else {
    inv.point_case = PointCase::degenerate;
  }
  return inv;
}

Cubic cubic_R(double A, double B) { return {{-A, -3.0, A - B}}; }

CubicRoots solve_cubic(const Cubic& cubic) {
  using cd = std::complex<double>;
  const double a = cubic.c[2], b = cubic.c[1], c = cubic.c[0];
  // Depressed cubic t^3 + P t + Q with p = t - a/3.
  const double shift = a / 3;
  const double P = b - a * a / 3;
  const double Q = 2 * a * a * a / 27 - a * b / 3 + c;
  const double disc = Q * Q / 4 + P * P * P / 27;

  CubicRoots out;
  std::vector<double> real;
  if (disc < 0) {
    const double m = 2 * std::sqrt(-P / 3);
    const double arg = std::clamp(3 * Q / (P * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) real.push_back(m * std::cos(theta - 2 * std::numbers::pi * k / 3) - shift);
  } else {
    const double sq = std::sqrt(disc);
    const double t = std::cbrt(-Q / 2 + sq) + std::cbrt(-Q / 2 - sq);
    real.push_back(t - shift);
  }

  auto polish = [&](double p) {
    for (int it = 0; it < 50; ++it) {
      const double d = cubic.derivative(p);
      if (d == 0.0) break;
      const double step = cubic(p) / d;
      p -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(p))) break;
    }
    return p;
  };
  for (double& p : real) p = polish(p);
  std::sort(real.begin(), real.end());

  if (real.size() == 3) {
    out.all = {cd(real[0]), cd(real[1]), cd(real[2])};
  } else {
    // Deflate: p^2 + (a + r) p + (b + r (a + r)).
    const double r = real[0];
    const double e1 = a + r;
    const double e0 = b + r * e1;
    const cd s = std::sqrt(cd(e1 * e1 - 4 * e0));
    out.all = {cd(r), (-e1 + s) / 2.0, (-e1 - s) / 2.0};
  }
  out.real = std::move(real);
  return out;
}

CubicRoots roots_R(double A, double B) {
  CubicRoots r = solve_cubic(cubic_R(A, B));
  r.multiple_root_warning = std::abs(delta_Delta(A, B).Delta) < 1e-9;
  return r;
}

EigenPair eigenvalues_at(double p, double A, double B) {
  return {2 + (B - 2 * A) * p - 2 * p * p, 3 * p * p + 2 * (A - B) * p - 3};
}

std::array<double, 4> LinearJet::lift_polynomial() const {
  return {nu, mu + nv, lu + mv, lv};
}

namespace {

constexpr double kHyperbolic = 1e-9;

SingularityKind kind_of(double l1, double l2) {
  if (std::abs(l1) < kHyperbolic || std::abs(l2) < kHyperbolic) return SingularityKind::nonhyperbolic;
  return l1 * l2 < 0 ? SingularityKind::saddle : SingularityKind::node;
}

Verdict census_verdict(int saddles, int nodes, int nonhyperbolic, Verdict three_saddles) {
  if (nonhyperbolic > 0) return Verdict::degenerate;
  if (saddles == 1 && nodes == 0) return Verdict::D1;
  if (saddles == 2 && nodes == 1) return Verdict::D2;
  if (saddles == 3 && nodes == 0) return three_saddles;
  return Verdict::degenerate;
}

}  // namespace

JetCensus classify_jet(const LinearJet& jet) {
  if (std::abs(jet.lv) < 1e-14) {
    throw InvalidArgument("linear jet with lv = 0 has a singular point at p = infinity");
  }
  const auto poly = jet.lift_polynomial();
  const Cubic monic{{poly[0] / poly[3], poly[1] / poly[3], poly[2] / poly[3]}};
  const CubicRoots roots = solve_cubic(monic);

  JetCensus out;
  for (double p : roots.real) {
    BlowUpSingularity s;
    s.p = p;
    // Lie-Cartan lift X = (F_p, p F_p, -(F_u + p F_v)) linearised at (0, 0, p).
    s.lambda1 = (2 * jet.lu * p + jet.mu) + p * (2 * jet.lv * p + jet.mv);
    s.lambda2 = -((3 * poly[3] * p + 2 * poly[2]) * p + poly[1]);
    s.kind = kind_of(s.lambda1, s.lambda2);
    switch (s.kind) {
      case SingularityKind::saddle: ++out.saddles; break;
      case SingularityKind::node: ++out.nodes; break;
      case SingularityKind::nonhyperbolic: ++out.nonhyperbolic; break;
    }
    out.singularities.push_back(s);
  }
  out.verdict = census_verdict(out.saddles, out.nodes, out.nonhyperbolic, Verdict::D3);
  return out;
}

Verdict paper_verdict(double Delta, double delta) {
  if (delta > 0) return Verdict::D3;
  if (delta < 0 && Delta < 0) return Verdict::D1;
  if (delta < 0 && Delta > 0) return Verdict::D2;
  return Verdict::degenerate;
}

double index_from_delta(double delta) {
  if (delta < 0) return 0.5;
  if (delta > 0) return -0.5;
  return 0.0;
}

ClassificationReport classify_darboux(double A, double B) {
  ClassificationReport rep;
  rep.invariants.point_case = PointCase::darboux_like;
  rep.invariants.A = A;
  rep.invariants.B = B;
  const DeltaPair d = delta_Delta(A, B);
  rep.invariants.Delta = d.Delta;
  rep.invariants.delta = d.delta;
  rep.jet = LinearJet::darboux(A, B);

  const CubicRoots roots = roots_R(A, B);
  if (roots.multiple_root_warning) rep.diagnostics.push_back("|Delta| < 1e-9: R may have a multiple root");
  int saddles = 0, nodes = 0, nonhyp = 0;
  for (double p : roots.real) {
    const EigenPair e = eigenvalues_at(p, A, B);
    const BlowUpSingularity s{p, e.lambda1, e.lambda2, kind_of(e.lambda1, e.lambda2)};
    saddles += s.kind == SingularityKind::saddle;
    nodes += s.kind == SingularityKind::node;
    nonhyp += s.kind == SingularityKind::nonhyperbolic;
    rep.singularities.push_back(s);
  }
  if (nonhyp > 0) rep.diagnostics.push_back("nonhyperbolic singular point on the projective line");
  rep.verdict = census_verdict(saddles, nodes, nonhyp, Verdict::D3);
  if (rep.verdict == Verdict::degenerate && nonhyp == 0) {
    rep.diagnostics.push_back("unexpected singularity census: " + std::to_string(saddles) +
                              " saddle(s), " + std::to_string(nodes) + " node(s)");
  }
  rep.paper_verdict = paper_verdict(d.Delta, d.delta);
  rep.agrees = rep.verdict == rep.paper_verdict;
  rep.index = index_from_delta(d.delta);
  return rep;
}

ClassificationReport a_zero_blowup(double a1) {
  ClassificationReport rep;
  rep.invariants.point_case = PointCase::a_zero;
  rep.invariants.a1 = a1;
  rep.jet = LinearJet::a_zero(a1);
  const double s = std::sqrt(a1 * a1 + 12);
  // Stable pair for p^2 - a1 p - 3: product of the two is -3.
  const double big = a1 >= 0 ? (a1 + s) / 2 : (a1 - s) / 2;
  std::vector<double> roots{0.0, big, -3.0 / big};
  std::sort(roots.begin(), roots.end());
  int saddles = 0, nodes = 0, nonhyp = 0;
  for (double p : roots) {
    const double l1 = 2 - 2 * p * p + a1 * p;
    const double l2 = 3 * p * p - 2 * a1 * p - 3;
    const BlowUpSingularity sing{p, l1, l2, kind_of(l1, l2)};
    saddles += sing.kind == SingularityKind::saddle;
    nodes += sing.kind == SingularityKind::node;
    nonhyp += sing.kind == SingularityKind::nonhyperbolic;
    rep.singularities.push_back(sing);
  }
  rep.verdict = census_verdict(saddles, nodes, nonhyp, Verdict::a_zero_D3);
  if (rep.verdict != Verdict::a_zero_D3) rep.verdict = Verdict::degenerate;
  rep.paper_verdict = Verdict::a_zero_D3;
  rep.agrees = rep.verdict == rep.paper_verdict;
  rep.index = -0.5;
  return rep;
}

LinearJet surface_jet(const UmbilicSurfaceSpec& spec, double u0) {
  const double k1 = spec.k.eval(u0, 1);
  const double k2 = spec.k.eval(u0, 2);
  const double a = spec.a(u0);
  const double a1 = spec.a.eval(u0, 1);
  const double k = spec.k(u0);
  const double g = spec.kg(u0);
  if (a1 == 0.0) throw HypothesisViolation("surface jet needs a'(u0) != 0");
  // Linear parts of the divided coefficients (-k' - (k_g k' + a')v/2, a + ..., k' + ...).
  const double s = 2 / a1;
  return {s * -k2,
          s * -0.5 * (g * k1 + a1),
          s * a1,
          s * 0.5 * (spec.b(u0) - 3 * k * k * k - k2 - 3 * g * a),
          s * k2,
          s * 0.5 * (a1 - 3 * g * k1)};
}

ClassificationReport classify_point(const UmbilicSurfaceSpec& spec, double u0, double tol) {
  const LocalInvariants inv = local_invariants(spec, u0, tol);
  ClassificationReport rep;
  switch (inv.point_case) {
    case PointCase::transversal:
      rep.verdict = rep.paper_verdict = Verdict::transversal;
      rep.agrees = true;
      break;
    case PointCase::tangential:
      rep.verdict = rep.paper_verdict = Verdict::tangential;
      rep.agrees = true;
      break;
    case PointCase::darboux_like: {
      rep = classify_darboux(inv.A, inv.B);
      const JetCensus surface = classify_jet(surface_jet(spec, u0));
      rep.surface_verdict = surface.verdict;
      break;
    }
    case PointCase::a_zero: {
      rep = a_zero_blowup(inv.a1);
      rep.surface_verdict = classify_jet(surface_jet(spec, u0)).verdict;
      break;
    }
    case PointCase::degenerate:
      rep.verdict = rep.paper_verdict = Verdict::degenerate;
      rep.diagnostics.push_back("jet conditions of no case hold at u0");
      break;
  }
  rep.invariants = inv;
  return rep;
}

ResultantReport resultant_checks(double A, double B) {
  const CubicRoots roots = roots_R(A, B);
  std::complex<double> r1(1.0), r2(1.0);
  for (const auto& p : roots.all) {
    r1 *= 2.0 + (B - 2 * A) * p - 2.0 * p * p;
    r2 *= 3.0 * p * p + 2 * (A - B) * p - 3.0;
  }
  const DeltaPair d = delta_Delta(A, B);
  const double t = 2 * A - B;
  return {r2.real(), r1.real(), d.Delta, d.delta * (16 + t * t)};
}

double printed_linearization_det(double A, double B) {
  // DY(0) = [[A, 1], [-1, -B/2]]
  return A * (-B / 2) - 1 * (-1);
}

}  // namespace umbilic
