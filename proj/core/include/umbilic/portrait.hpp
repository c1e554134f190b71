#pragma once

#include <optional>
#include <vector>

#include "umbilic/blowup.hpp"

namespace umbilic {

// Directional (polar) blow-up of the line fields defined by a linear jet.
// The two line fields are followed around the unit circle; rays along which a
// field is radial are found from the angle psi between the line and the ray,
// and each ray is classified by integrating d(phi)/d(log r) = tan(psi) inward
// from both sides. Neither R(p) nor the eigenvalue formulas are used.

enum class RayKind { separatrix, parabolic, inconclusive };

struct RadialRay {
  double phi = 0;       // polar angle of the ray
  double slope = 0;     // tan(phi) = dv/du of the tangent direction
  RayKind kind = RayKind::inconclusive;
  double psi_slope = 0; // d psi / d phi at the ray (< 0 separatrix, > 0 parabolic)
};

struct FoliationCensus {
  std::vector<RadialRay> rays;  // sorted by phi
  int separatrices = 0;
  int parabolic_rays = 0;
  int hyperbolic_sectors = 0;
  int parabolic_sectors = 0;
  bool conclusive = false;
  std::optional<Verdict> verdict;
};

struct PortraitCensus {
  FoliationCensus foliation[2];
  /// Turning of each line field along the circle divided by 2 pi.
  double index = 0;
  bool conclusive = false;
  std::optional<Verdict> verdict;  // set only when both foliations agree
};

struct OracleOptions {
  int samples = 7200;
  double fan_offset = 0.02;   // initial angular offset of the fan trajectories
  double rho_span = 25.0;     // how far inward (in log r) the fan is followed
  double rho_step = 0.01;
};

PortraitCensus phase_portrait_oracle(const LinearJet& jet, const OracleOptions& opt = {});

}  // namespace umbilic
