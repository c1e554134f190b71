#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "umbilic/chart.hpp"

namespace umbilic {

enum class CoeffSource { series, numeric };

/// Coefficients of L dv^2 + M dv du + N du^2 = 0.
struct LineODECoeffs {
  double L = 0, M = 0, N = 0;
  CoeffSource source = CoeffSource::numeric;

  double discriminant() const { return M * M - 4 * L * N; }
  double eval_p(double p) const { return (L * p + M) * p + N; }
  double eval_q(double q) const { return (N * q + M) * q + L; }
};

/// L = Fg - Gf, M = Eg - Ge, N = Ef - Fe.
LineODECoeffs ode_coeffs(const FundamentalForms& forms);

/// ode_coeffs(forms_numeric(spec, u, v)).
LineODECoeffs ode_coeffs_numeric(const UmbilicSurfaceSpec& spec, double u, double v);

/// The truncated series of L, M, N through v^3.
LineODECoeffs ode_coeffs_series(const UmbilicSurfaceSpec& spec, double u, double v);

/// Series of L/v, M/v, N/v through v^2.
LineODECoeffs reduced_coeffs_series(const UmbilicSurfaceSpec& spec, double u, double v);

/// F(u, v, p) = L~ p^2 + M~ p + N~ with the divided series coefficients.
double reduced_equation(const UmbilicSurfaceSpec& spec, double u, double v, double p);

/// L/v, M/v, N/v from finite differences. Close to v = 0 the quotient is
/// replaced by a quartic interpolant through |v| in {d, 2d} and the exact limit
/// (-k', a, k') at v = 0.
LineODECoeffs reduced_coeffs_numeric(const UmbilicSurfaceSpec& spec, double u, double v);

/// Half-width of the band around v = 0 where reduced_coeffs_numeric interpolates.
inline constexpr double kReducedBand = 5e-4;

struct PrincipalDirections {
  /// Slopes dv/du ordered p1 <= p2 (+-infinity for vertical directions).
  double p1 = 0, p2 = 0;
  /// Unit chart vectors (du, dv) of the same two directions.
  Eigen::Vector2d w1, w2;
  /// True when the roots were computed from the du/dv form.
  bool q_chart = false;
};

/// Roots of the quadratic; throws UmbilicDegeneracy if all three coefficients
/// are below 1e-12 and InconsistentCoefficients if M^2 - 4LN < -1e-10.
PrincipalDirections principal_directions(const LineODECoeffs& coeffs);

/// Normal curvature II(w)/I(w) of the chart direction w = (du, dv).
double normal_curvature(const FundamentalForms& forms, const Eigen::Vector2d& w);

enum class Termination { step_budget, strip_exit, umbilic_hit, discriminant_degeneracy };
std::string_view to_string(Termination t);

struct ChartPoint {
  double u = 0, v = 0;
};

struct Trajectory {
  int foliation = 1;
  std::vector<ChartPoint> points;
  Termination terminated_by = Termination::step_budget;
};

struct LineOptions {
  /// Surface arclength between output points.
  double ds = 1e-2;
  long max_steps = 1000;
  double tol = 1e-8;
  /// Follow the foliation backwards from the start.
  bool reverse = false;
};

/// Curvature line of foliation 1 (smaller principal curvature at the start) or
/// 2 (larger), continued by root tracking. Throws AmbiguousStart if the
/// direction field is undetermined at the start point.
Trajectory integrate_principal_line(const UmbilicSurfaceSpec& spec, ChartPoint start, int foliation,
                                    const LineOptions& opt = {});

enum class GraphChart { p, q };

/// Curvature line as a graph: v(u) with dv/du = p (p chart) or u(v) with
/// du/dv = q (q chart), from `start` until the independent variable reaches
/// `end`. At the start the root nearest `slope_hint` is taken, afterwards the
/// root nearest the previous one. Output every `step` of the independent variable.
std::vector<ChartPoint> integrate_graph(const UmbilicSurfaceSpec& spec, ChartPoint start,
                                        GraphChart chart, double slope_hint, double end,
                                        double step, double tol = 1e-10);

/// CSV columns: foliation,index,u,v
void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& lines);

}  // namespace umbilic
