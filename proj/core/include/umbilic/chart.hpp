#pragma once

#include <optional>
#include <utility>

#include "umbilic/curvebuild.hpp"
#include "umbilic/profiles.hpp"

namespace umbilic {

/// Profiles of the canonical chart
///   alpha(u, v) = c(u) + v S(u) + (k v^2/2 + a v^3/6 + b v^4/24) N(u)
/// around a curve of umbilics, truncated after the v^4 term.
struct SurfaceProfiles {
  ScalarProfile k;
  ScalarProfile kg;
  ScalarProfile a;
  ScalarProfile b;
};

struct SurfaceOptions {
  bool closed = false;
  double u_begin = 0.0;
  double frame_step = 1e-3;
  /// Strip half-width; default 0.5 / max(1, sup |k|).
  std::optional<double> v_max;
};

struct UmbilicSurfaceSpec {
  double l = 0.0;
  ScalarProfile k, kg, a, b;
  bool closed = false;
  double u_begin = 0.0;
  double v_max = 0.0;
  FrameField frame;

  double u_end() const { return u_begin + l; }
  bool in_domain(double u) const;
};

/// Validates the profiles (periodicity when closed), integrates the frame and
/// fixes the strip width.
UmbilicSurfaceSpec make_surface(double l, SurfaceProfiles profiles, const SurfaceOptions& opt = {});

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double e = 0, f = 0, g = 0;
  double H = 0, K = 0;
  double k1 = 0, k2 = 0;  // k1 <= k2
};

/// Derived quantities H, K, k1, k2 from the six coefficients.
FundamentalForms complete_forms(double E, double F, double G, double e, double f, double g);

/// alpha(u, v); throws OutOfStrip for |v| > v_max or u outside an open curve's domain.
Vec3 eval_chart(const UmbilicSurfaceSpec& spec, double u, double v);

/// Unit normal alpha_u x alpha_v / |alpha_u x alpha_v| in world coordinates.
Vec3 surface_normal(const UmbilicSurfaceSpec& spec, double u, double v);

struct FiniteDifferenceOptions {
  double h = 1e-4;
  /// Combine steps h and h/2 to cancel the O(h^2) stencil error.
  bool richardson = true;
};

/// Fundamental forms from centred finite differences of the chart.
FundamentalForms forms_numeric(const UmbilicSurfaceSpec& spec, double u, double v,
                               const FiniteDifferenceOptions& opt = {});

/// The six truncated series (through v^3) and H, K derived from them.
FundamentalForms forms_series(const UmbilicSurfaceSpec& spec, double u, double v);

/// Mean and Gauss curvature series through v^2.
std::pair<double, double> hk_series(const UmbilicSurfaceSpec& spec, double u, double v);

/// Focal points alpha + N/k1 and alpha + N/k2.
std::pair<Vec3, Vec3> focal_sheets(const FundamentalForms& forms, const Vec3& base, const Vec3& N);

/// Supremum of |k| over the chart's u-domain (sampled).
double sup_abs_k(const ScalarProfile& k, double u_begin, double l);

}  // namespace umbilic
