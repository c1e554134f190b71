#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "umbilic/profiles.hpp"

namespace umbilic {

using Vec3 = Eigen::Vector3d;

/// Curve point with its Darboux frame {T, S = N x T, N}.
struct FrameSample {
  double u;
  Vec3 c;
  Vec3 T;
  Vec3 S;
  Vec3 N;
};

/// Darboux frame sampled at uniform arclength spacing along the umbilic curve.
struct FrameField {
  std::vector<FrameSample> samples;
  double step = 0.0;
  bool closed = false;
  /// Largest Gram-Schmidt correction applied after an RK4 step (local
  /// orthonormality defect of the unconstrained scheme).
  double max_reorth_correction = 0.0;

  double u_begin() const { return samples.front().u; }
  double u_end() const { return samples.back().u; }
  /// Sample whose u is closest to the argument (clamped to the domain).
  const FrameSample& nearest(double u) const;
};

/// Integrates T' = k_g S + k N, S' = -k_g T, N' = -k T, c' = T (geodesic
/// torsion zero along a curve of umbilics) with fixed-step RK4 and
/// re-orthonormalisation after each step. The frame at u_begin is the
/// identity and c(u_begin) = 0.
FrameField integrate_darboux_frame(const ScalarProfile& k, const ScalarProfile& kg, double l,
                                   double step, double u_begin = 0.0);

/// CSV columns: u,cx,cy,cz,Tx,Ty,Tz,Sx,Sy,Sz,Nx,Ny,Nz
void write_frame_csv(std::ostream& out, const FrameField& frame);

/// Largest distance between the frame (and point) at both ends of the field.
struct FrameGap {
  double position;
  double frame;
};
FrameGap frame_end_gap(const FrameField& frame);

struct ClosureReport {
  double total_torsion = 0.0;
  double residual = 0.0;  // total torsion reduced to (-pi, pi]
  bool passes = false;
  /// Rotation of the surface normal relative to the Frenet normal after one
  /// period, obtained by integrating theta' = -tau as a planar rotation (RK4).
  double frame_monodromy_angle = 0.0;
  double tolerance = 0.0;
};

struct ClosureOptions {
  double tolerance = 1e-6;
  double quadrature_tol = 1e-10;
  double rotation_step = 1e-3;
};

/// Closure test for a closed curve: a surface having it as a curve of umbilics
/// exists iff the total torsion is a multiple of 2 pi.
ClosureReport closure_check(const ScalarProfile& tau, double l, const ClosureOptions& opt = {});
ClosureReport closure_check(const std::function<double(double)>& tau, double l,
                            const ClosureOptions& opt = {});

/// Reduce an angle to (-pi, pi].
double wrap_angle(double x);

/// Darboux curvatures of a curve given by its Frenet data, with the surface
/// normal N = cos(theta) n + sin(theta) b rotating so that tau_g = 0.
class FrenetDarboux {
 public:
  FrenetDarboux(ScalarProfile kappa, ScalarProfile tau, double theta0)
      : kappa_(std::move(kappa)), tau_(std::move(tau)), theta0_(theta0) {}

  double theta(double u) const { return theta0_ - tau_.integral(0.0, u); }
  double normal_curvature(double u) const;
  double geodesic_curvature(double u) const;
  /// -(theta' + tau) with theta' taken by a 5-point difference of theta(u).
  double geodesic_torsion(double u, double h = 1e-3) const;

  struct Sample {
    double u, theta, kn, kg;
  };
  std::vector<Sample> sample(double u0, double u1, int count) const;

 private:
  ScalarProfile kappa_;
  ScalarProfile tau_;
  double theta0_;
};

FrenetDarboux darboux_from_frenet(const ScalarProfile& kappa, const ScalarProfile& tau,
                                  double theta0 = 0.0);

}  // namespace umbilic
