#pragma once

#include <stdexcept>
#include <string>

namespace umbilic {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Derivative order outside 0..3 requested from a profile.
class UnsupportedDerivative : public Error {
 public:
  using Error::Error;
};

// Malformed profile or surface parameters (bad period, too many coefficients...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Chart evaluated outside |v| <= v_max or outside the u-domain of an open curve.
class OutOfStrip : public Error {
 public:
  using Error::Error;
};

// First fundamental form lost positive definiteness (EG - F^2 <= 0).
class DegenerateChart : public Error {
 public:
  using Error::Error;
};

// A focal radius 1/k_i is infinite; `sheets()` names the offending sheet(s).
class InfiniteFocalRadius : public Error {
 public:
  InfiniteFocalRadius(const std::string& sheets)
      : Error("infinite focal radius on sheet(s) " + sheets), sheets_(sheets) {}
  const std::string& sheets() const { return sheets_; }

 private:
  std::string sheets_;
};

// All three coefficients of the curvature-line equation vanish: principal
// directions are undefined at an umbilic.
class UmbilicDegeneracy : public Error {
 public:
  using Error::Error;
};

// M^2 - 4LN clearly negative: coefficients do not come from a real surface.
class InconsistentCoefficients : public Error {
 public:
  using Error::Error;
};

// Trajectory requested from a point where the direction field is undetermined.
class AmbiguousStart : public Error {
 public:
  using Error::Error;
};

// Hypotheses of the requested analysis do not hold for the given surface
// (k not constant, a(u) <= 0, wrong point case, ...).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

// Return-map trajectory left the strip; `v0()` is the offending initial offset.
class V0TooLarge : public Error {
 public:
  V0TooLarge(double v0, const std::string& what) : Error(what), v0_(v0) {}
  double v0() const { return v0_; }

 private:
  double v0_;
};

}  // namespace umbilic
