#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "umbilic/chart.hpp"

namespace umbilic {

enum class PointCase { transversal, tangential, darboux_like, a_zero, degenerate };
std::string_view to_string(PointCase c);

struct LocalInvariants {
  double u0 = 0;
  double kprime = 0, ksecond = 0, a0 = 0, aprime = 0, b0 = 0, k0 = 0, kg0 = 0;
  PointCase point_case = PointCase::degenerate;
  double A = 0, B = 0;          // darboux_like
  double a1 = 0;                // a_zero
  double Delta = 0, delta = 0;  // darboux_like
};

/// Jet quantities at u0 and the case decision tree (tol applies to the jets).
LocalInvariants local_invariants(const UmbilicSurfaceSpec& spec, double u0, double tol = 1e-8);

struct DeltaPair {
  double Delta;
  double delta;
};
DeltaPair delta_Delta(double A, double B);

/// Monic cubic p^3 + c[2] p^2 + c[1] p + c[0].
struct Cubic {
  std::array<double, 3> c;
  double operator()(double p) const { return ((p + c[2]) * p + c[1]) * p + c[0]; }
  double derivative(double p) const { return (3 * p + 2 * c[2]) * p + c[1]; }
};

/// R(p) = p^3 + (A - B) p^2 - 3p - A.
Cubic cubic_R(double A, double B);

struct CubicRoots {
  std::vector<double> real;                  // ascending, Newton-polished
  std::array<std::complex<double>, 3> all;   // all three roots
  bool multiple_root_warning = false;
};
CubicRoots solve_cubic(const Cubic& cubic);
/// Real roots of R; flags a possible multiple root when |Delta| < 1e-9.
CubicRoots roots_R(double A, double B);

struct EigenPair {
  double lambda1;
  double lambda2;
};
/// lambda1 = 2 + (B - 2A)p - 2p^2, lambda2 = 3p^2 + 2(A - B)p - 3.
EigenPair eigenvalues_at(double p, double A, double B);

/// Linear part of the divided equation near a point of the umbilic curve:
///   (lu u + lv v) p^2 + (mu u + mv v) p + (nu u + nv v).
struct LinearJet {
  double lu = 0, lv = 0, mu = 0, mv = 0, nu = 0, nv = 0;

  /// -(Au + v) p^2 + (2u + Bv) p + (Au + v)
  static LinearJet darboux(double A, double B) { return {-A, -1, 2, B, A, 1}; }
  /// -v p^2 + (2u + a1 v) p + v
  static LinearJet a_zero(double a1) { return {0, -1, 2, a1, 0, 1}; }

  /// F_u + p F_v at u = v = 0, a cubic in p (the singular points of the lift).
  std::array<double, 4> lift_polynomial() const;  // ascending powers
};

enum class SingularityKind { saddle, node, nonhyperbolic };
std::string_view to_string(SingularityKind k);

struct BlowUpSingularity {
  double p = 0;
  double lambda1 = 0, lambda2 = 0;
  SingularityKind kind = SingularityKind::nonhyperbolic;
};

enum class Verdict { transversal, tangential, D1, D2, D3, a_zero_D3, degenerate };
std::string_view to_string(Verdict v);

/// Singular points of the lifted field on the projective line and the
/// saddle/node census (hyperbolicity threshold 1e-9).
struct JetCensus {
  std::vector<BlowUpSingularity> singularities;
  int saddles = 0, nodes = 0, nonhyperbolic = 0;
  Verdict verdict = Verdict::degenerate;
};
JetCensus classify_jet(const LinearJet& jet);

/// Verdict read off the printed (Delta, delta) sign table.
Verdict paper_verdict(double Delta, double delta);

/// +1/2 for delta < 0, -1/2 for delta > 0, 0 when delta = 0.
double index_from_delta(double delta);

struct ClassificationReport {
  LocalInvariants invariants;
  std::vector<BlowUpSingularity> singularities;
  Verdict verdict = Verdict::degenerate;
  Verdict paper_verdict = Verdict::degenerate;
  bool agrees = false;
  double index = 0;
  /// Census of the linear jet the surface actually carries at u0 (computed
  /// from the profile jets, independent of the printed A, B).
  std::optional<Verdict> surface_verdict;
  LinearJet jet;
  std::vector<std::string> diagnostics;
};

ClassificationReport classify_point(const UmbilicSurfaceSpec& spec, double u0, double tol = 1e-8);

/// Report for the jet with given A, B (no surface needed).
ClassificationReport classify_darboux(double A, double B);

/// Point where a vanishes on a constant-k curve: roots of p(p^2 - a1 p - 3) and
/// the eigenvalue formulas there.
ClassificationReport a_zero_blowup(double a1);

/// Linear jet of the divided equation at u0 read from the profile jets,
/// scaled by 2/a'(u0) (requires k'(u0) = a(u0) = 0 and a'(u0) != 0).
LinearJet surface_jet(const UmbilicSurfaceSpec& spec, double u0);

struct ResultantReport {
  double res_R_lambda2 = 0;  // prod of lambda2 over the roots of R
  double res_R_lambda1 = 0;  // prod of lambda1 over the roots of R
  double Delta = 0;
  double delta_expr = 0;     // (2 - AB)(16 + (2A - B)^2)
};
ResultantReport resultant_checks(double A, double B);

/// det of the linearisation Y = (Au + v, -u - (B/2) v) at 0.
double printed_linearization_det(double A, double B);

}  // namespace umbilic
