#include "umbilic/curvebuild.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "umbilic/errors.hpp"
#include "umbilic/ode.hpp"
#include "umbilic/quadrature.hpp"

namespace umbilic {

namespace {

using FrameState = State<12>;

FrameState pack(const Vec3& c, const Vec3& T, const Vec3& S, const Vec3& N) {
  FrameState y{};
  for (int i = 0; i < 3; ++i) {
    y[i] = c[i];
    y[3 + i] = T[i];
    y[6 + i] = S[i];
    y[9 + i] = N[i];
  }
  return y;
}

Vec3 part(const FrameState& y, int block) {
  return {y[3 * block], y[3 * block + 1], y[3 * block + 2]};
}

}  // namespace

const FrameSample& FrameField::nearest(double u) const {
  const double x = (u - u_begin()) / step;
  const long n = static_cast<long>(samples.size());
  const long i = std::clamp(std::lround(x), 0L, n - 1);
  return samples[static_cast<std::size_t>(i)];
}

FrameField integrate_darboux_frame(const ScalarProfile& k, const ScalarProfile& kg, double l,
                                   double step, double u_begin) {
  if (!(l > 0.0)) throw InvalidArgument("frame integration needs l > 0");
  if (!(step > 0.0)) throw InvalidArgument("frame integration needs step > 0");

  const long n = std::max(1L, static_cast<long>(std::ceil(l / step - 1e-9)));
  const double h = l / static_cast<double>(n);

  auto rhs = [&](double u, const FrameState& y) {
    const double kn = k(u);
    const double g = kg(u);
    const Vec3 T = part(y, 1), S = part(y, 2), N = part(y, 3);
    const Vec3 dT = g * S + kn * N;
    const Vec3 dS = -g * T;
    const Vec3 dN = -kn * T;
    return pack(T, dT, dS, dN);
  };

  FrameField field;
  field.step = h;
  field.samples.reserve(static_cast<std::size_t>(n + 1));
  FrameState y = pack(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ());
  field.samples.push_back({u_begin, Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()});

  for (long i = 0; i < n; ++i) {
    const double u = u_begin + h * static_cast<double>(i);
    y = rk4_step<12>(rhs, u, y, h);

    const Vec3 c = part(y, 0);
    const Vec3 T0 = part(y, 1), S0 = part(y, 2), N0 = part(y, 3);
    const Vec3 T = T0.normalized();
    const Vec3 S = (S0 - S0.dot(T) * T).normalized();
    const Vec3 N = T.cross(S);
    field.max_reorth_correction =
        std::max({field.max_reorth_correction, (T - T0).norm(), (S - S0).norm(), (N - N0).norm()});
    y = pack(c, T, S, N);
    field.samples.push_back({u_begin + h * static_cast<double>(i + 1), c, T, S, N});
  }
  return field;
}

void write_frame_csv(std::ostream& out, const FrameField& frame) {
  out << "u,cx,cy,cz,Tx,Ty,Tz,Sx,Sy,Sz,Nx,Ny,Nz\n";
  for (const auto& s : frame.samples) {
    out << fmt::format("{:.12g}", s.u);
    for (const Vec3* v : {&s.c, &s.T, &s.S, &s.N}) {
      out << fmt::format(",{:.12g},{:.12g},{:.12g}", (*v)[0], (*v)[1], (*v)[2]);
    }
    out << '\n';
  }
}

FrameGap frame_end_gap(const FrameField& frame) {
  const auto& a = frame.samples.front();
  const auto& b = frame.samples.back();
  const double frame_gap = std::max({(a.T - b.T).norm(), (a.S - b.S).norm(), (a.N - b.N).norm()});
  return {(a.c - b.c).norm(), frame_gap};
}

double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = x - two_pi * std::round(x / two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

ClosureReport closure_check(const std::function<double(double)>& tau, double l,
                            const ClosureOptions& opt) {
  if (!(l > 0.0)) throw InvalidArgument("closure check needs l > 0");

  ClosureReport report;
  report.tolerance = opt.tolerance;
  report.total_torsion = adaptive_simpson(tau, 0.0, l, opt.quadrature_tol);
  report.residual = wrap_angle(report.total_torsion);
  report.passes = std::abs(report.residual) < opt.tolerance;

  // (cos theta, sin theta) with theta' = -tau, integrated as a linear system.
  const long n = std::max(16L, static_cast<long>(std::ceil(l / opt.rotation_step)));
  const double h = l / static_cast<double>(n);
  auto rhs = [&](double u, const State<2>& y) {
    const double t = tau(u);
    return State<2>{t * y[1], -t * y[0]};
  };
  State<2> y{1.0, 0.0};
  for (long i = 0; i < n; ++i) y = rk4_step<2>(rhs, h * static_cast<double>(i), y, h);
  // theta(l) - theta(0) = -total torsion; report the angle with the torsion's sign.
  report.frame_monodromy_angle = std::atan2(-y[1], y[0]);
  return report;
}

ClosureReport closure_check(const ScalarProfile& tau, double l, const ClosureOptions& opt) {
  return closure_check(std::function<double(double)>([&tau](double u) { return tau(u); }), l,
                       opt);
}

double FrenetDarboux::normal_curvature(double u) const {
  return kappa_(u) * std::cos(theta(u));
}

double FrenetDarboux::geodesic_curvature(double u) const {
  return -kappa_(u) * std::sin(theta(u));
}

double FrenetDarboux::geodesic_torsion(double u, double h) const {
  const double d = (theta(u - 2 * h) - 8 * theta(u - h) + 8 * theta(u + h) - theta(u + 2 * h)) /
                   (12 * h);
  return -(d + tau_(u));
}

std::vector<FrenetDarboux::Sample> FrenetDarboux::sample(double u0, double u1, int count) const {
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double u = count == 1 ? u0 : u0 + (u1 - u0) * i / (count - 1);
    out.push_back({u, theta(u), normal_curvature(u), geodesic_curvature(u)});
  }
  return out;
}

FrenetDarboux darboux_from_frenet(const ScalarProfile& kappa, const ScalarProfile& tau,
                                  double theta0) {
  return FrenetDarboux(kappa, tau, theta0);
}

}  // namespace umbilic
