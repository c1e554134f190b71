#pragma once

#include <span>
#include <vector>

namespace umbilic {

enum class ProfileKind { fourier, polynomial };

/// Smooth scalar function of arclength with exact derivatives up to order 3.
///
/// Two representations are supported:
///  - fourier:    c0 + sum_j (a_j cos(w_j u) + b_j sin(w_j u)),  w_j = 2 pi j / period,
///                coefficients stored as [c0, a1, b1, a2, b2, ...];
///  - polynomial: sum_i c_i u^i, coefficients in ascending powers.
///
/// At most 16 frequencies (fourier) or degree 16 (polynomial). Instances are
/// immutable and safe to share between threads.
class ScalarProfile {
 public:
  static constexpr int kMaxDegree = 16;
  static constexpr int kMaxOrder = 3;

  ScalarProfile() : ScalarProfile(constant(0.0)) {}

  static ScalarProfile constant(double c);
  static ScalarProfile polynomial(std::vector<double> coeffs);
  static ScalarProfile fourier(double period, std::vector<double> coeffs);

  ProfileKind kind() const { return kind_; }
  double period() const { return period_; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// order-th derivative at u; throws UnsupportedDerivative unless 0 <= order <= 3.
  double eval(double u, int order = 0) const;
  double operator()(double u) const { return eval(u, 0); }

  /// Exact integral over [from, to] of the representation.
  double integral(double from, double to) const;

  /// True when value(u + l) == value(u) for every u: fourier profiles with
  /// this period, and constants.
  bool is_periodic_with(double l) const;

  /// True when the representation is a constant (all non-constant coefficients zero).
  bool is_constant() const;

 private:
  ScalarProfile(ProfileKind kind, double period, std::vector<double> coeffs)
      : kind_(kind), period_(period), coeffs_(std::move(coeffs)) {}

  ProfileKind kind_;
  double period_;
  std::vector<double> coeffs_;
};

double eval_profile(const ScalarProfile& p, double u, int order);

}  // namespace umbilic
