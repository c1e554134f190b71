#pragma once

#include <array>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "umbilic/chart.hpp"

namespace umbilic::detail {

using real = long double;
using Vec3L = Eigen::Matrix<real, 3, 1>;
using Mat3L = Eigen::Matrix<real, 3, 3>;

struct ChartDerivatives {
  Vec3L au, av, auu, auv, avv;
};

// The chart around u0 in extended precision. The frame is Taylor-expanded
// from the exact profile jets (through s^4, the curve through s^5), so
// points are measured relative to c(u0) without any stored-frame noise.
class LocalChart {
 public:
  LocalChart(const UmbilicSurfaceSpec& spec, double u0, const Mat3L& frame0);

  struct Slice {
    Vec3L dc, S, N;
    real k = 0, a = 0, b = 0;
  };
  Slice slice(real s) const;
  static Vec3L point(const Slice& sl, real v);

  ChartDerivatives derivatives(real s0, real v, const FiniteDifferenceOptions& opt) const;

 private:
  const UmbilicSurfaceSpec& spec_;
  double u0_;
  std::array<Mat3L, 5> X_;
};

FundamentalForms forms_from_derivatives(const ChartDerivatives& d);
FundamentalForms complete_forms_ld(real E, real F, real G, real e, real f, real g);

}  // namespace umbilic::detail
