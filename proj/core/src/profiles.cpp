#include "umbilic/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "umbilic/errors.hpp"

namespace umbilic {

ScalarProfile ScalarProfile::constant(double c) {
  return ScalarProfile(ProfileKind::polynomial, 0.0, {c});
}

ScalarProfile ScalarProfile::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  if (static_cast<int>(coeffs.size()) > kMaxDegree + 1) {
    throw InvalidArgument("polynomial profile degree exceeds " + std::to_string(kMaxDegree));
  }
  return ScalarProfile(ProfileKind::polynomial, 0.0, std::move(coeffs));
}

ScalarProfile ScalarProfile::fourier(double period, std::vector<double> coeffs) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidArgument("fourier profile needs a positive finite period");
  }
  if (coeffs.empty()) coeffs.push_back(0.0);
  // A trailing cosine without its sine partner is allowed.
  if (coeffs.size() % 2 == 0) coeffs.push_back(0.0);
  if (static_cast<int>(coeffs.size()) > 2 * kMaxDegree + 1) {
    throw InvalidArgument("fourier profile has more than " + std::to_string(kMaxDegree) +
                          " frequencies");
  }
  return ScalarProfile(ProfileKind::fourier, period, std::move(coeffs));
}

double ScalarProfile::eval(double u, int order) const {
  if (order < 0 || order > kMaxOrder) {
    throw UnsupportedDerivative("profile derivative of order " + std::to_string(order) +
                                " requested (supported: 0..3)");
  }
  if (kind_ == ProfileKind::polynomial) {
    // Horner on the order-th derivative coefficients.
    const int n = static_cast<int>(coeffs_.size());
    double acc = 0.0;
    for (int i = n - 1; i >= order; --i) {
      double c = coeffs_[i];
      for (int m = 0; m < order; ++m) c *= static_cast<double>(i - m);
      acc = acc * u + c;
    }
    return acc;
  }

  // fmod is exact, so periodicity holds to the rounding of one product.
  double x = std::fmod(u, period_);
  if (x < 0.0) x += period_;
  const double base = 2.0 * std::numbers::pi / period_;
  const double shift = 0.5 * std::numbers::pi * order;
  double acc = order == 0 ? coeffs_[0] : 0.0;
  const int nfreq = static_cast<int>(coeffs_.size()) / 2;
  for (int j = 1; j <= nfreq; ++j) {
    const double a = coeffs_[2 * j - 1];
    const double b = coeffs_[2 * j];
    if (a == 0.0 && b == 0.0) continue;
    const double w = base * j;
    const double scale = std::pow(w, order);
    const double arg = w * x + shift;
    acc += scale * (a * std::cos(arg) + b * std::sin(arg));
  }
  return acc;
}

double ScalarProfile::integral(double from, double to) const {
  if (kind_ == ProfileKind::polynomial) {
    auto antiderivative = [this](double u) {
      double acc = 0.0;
      for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
        acc = acc * u + coeffs_[i] / static_cast<double>(i + 1);
      }
      return acc * u;
    };
    return antiderivative(to) - antiderivative(from);
  }
  const double base = 2.0 * std::numbers::pi / period_;
  double acc = coeffs_[0] * (to - from);
  const int nfreq = static_cast<int>(coeffs_.size()) / 2;
  for (int j = 1; j <= nfreq; ++j) {
    const double a = coeffs_[2 * j - 1];
    const double b = coeffs_[2 * j];
    if (a == 0.0 && b == 0.0) continue;
    const double w = base * j;
    acc += a / w * (std::sin(w * to) - std::sin(w * from));
    acc -= b / w * (std::cos(w * to) - std::cos(w * from));
  }
  return acc;
}

bool ScalarProfile::is_constant() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0.0) return false;
  }
  return true;
}

bool ScalarProfile::is_periodic_with(double l) const {
  if (is_constant()) return true;
  if (kind_ != ProfileKind::fourier) return false;
  return std::abs(period_ - l) <= 1e-12 * std::max(1.0, l);
}

double eval_profile(const ScalarProfile& p, double u, int order) { return p.eval(u, order); }

}  // namespace umbilic
