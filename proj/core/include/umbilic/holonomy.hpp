#pragma once

#include <string_view>
#include <vector>

#include "umbilic/chart.hpp"

namespace umbilic {

// Return map of the foliation tangent to a closed curve of umbilics on which
// k is constant (spherical or planar case) and a(u) > 0.

/// Throws HypothesisViolation unless k' = 0 (to 1e-12) and a > 0 on the curve.
void require_constant_k_positive_a(const UmbilicSurfaceSpec& spec);

/// dv/dv0 along the tangent foliation: sqrt(a(0) / a(u)).
double first_variation(const UmbilicSurfaceSpec& spec, double u);

struct SecondVariationSample {
  double u;
  double q_ode;     // linear ODE a q' + a'q/2 = S(u), q(0) = 0, integrated numerically
  double q_closed;  // closed form by integrating factor
};

std::vector<SecondVariationSample> second_variation_ode(const UmbilicSurfaceSpec& spec,
                                                        const std::vector<double>& u_grid);

enum class Spiral { toward, away, none_at_second_order };
std::string_view to_string(Spiral s);

struct ReturnMapSample {
  double v0;
  double pi;
};

struct ReturnMapReport {
  double a0 = 0;
  double pi_prime = 1;            // analytic
  double spiral_integral = 0;     // I = int k_g a' a^(-3/2) du over one period
  double pi_second_analytic = 0;  // sqrt(a0)/6 * I
  // Numeric part (return_map_numeric only).
  double pi_prime_numeric = 0;    // fitted slope
  double pi_second_numeric = 0;   // twice the fitted quadratic coefficient
  double relative_error = 0;
  std::vector<ReturnMapSample> samples;
  /// Direction of the drift on the v > 0 side at second order.
  Spiral spiral = Spiral::none_at_second_order;
};

/// Analytic fields; `none_tol` bounds |pi''| reported as no spiralling.
ReturnMapReport return_map_analytic(const UmbilicSurfaceSpec& spec, double none_tol = 1e-9);

struct ReturnMapOptions {
  std::vector<double> v0_grid{1e-3, 2e-3, 4e-3, 8e-3};
  double tol = 1e-12;
  double none_tol = 1e-9;
};

/// Analytic fields plus the numeric return map: the tangent foliation is
/// integrated from (0, v0) over one period and pi(v0) = a v0 + b v0^2 is
/// fitted with weights 1/v0^2. Throws V0TooLarge if a trajectory leaves the strip.
ReturnMapReport return_map_numeric(const UmbilicSurfaceSpec& spec, const ReturnMapOptions& opt = {});

}  // namespace umbilic
