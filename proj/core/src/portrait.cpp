#include "umbilic/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "umbilic/errors.hpp"
#include "umbilic/lineode.hpp"

namespace umbilic {

namespace {

constexpr double kPi = std::numbers::pi;

// Representative of x modulo pi in (-pi/2, pi/2].
double reduce_half_turn(double x) {
  double r = x - kPi * std::round(x / kPi);
  if (r <= -kPi / 2) r += kPi;
  return r;
}

// Line angles (mod pi) of the two roots at the point (cos phi, sin phi).
std::optional<std::array<double, 2>> line_angles(const LinearJet& jet, double phi) {
  const double u = std::cos(phi), v = std::sin(phi);
  const LineODECoeffs c{jet.lu * u + jet.lv * v, jet.mu * u + jet.mv * v, jet.nu * u + jet.nv * v,
                        CoeffSource::series};
  try {
    const PrincipalDirections d = principal_directions(c);
    return std::array<double, 2>{std::atan2(d.w1.y(), d.w1.x()), std::atan2(d.w2.y(), d.w2.x())};
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Angle of the root line closest (mod pi) to `guess`, lifted next to it.
double follow_line(const std::array<double, 2>& cand, double guess) {
  const double d0 = reduce_half_turn(cand[0] - guess);
  const double d1 = reduce_half_turn(cand[1] - guess);
  return guess + (std::abs(d0) <= std::abs(d1) ? d0 : d1);
}

class Tracker {
 public:
  Tracker(const LinearJet& jet, int samples) : jet_(jet), n_(samples) {}

  bool run() {
    theta_[0].assign(n_ + 1, 0.0);
    theta_[1].assign(n_ + 1, 0.0);
    auto start = line_angles(jet_, 0.0);
    if (!start) return false;
    theta_[0][0] = (*start)[0];
    theta_[1][0] = (*start)[1];
    for (int j = 1; j <= n_; ++j) {
      auto cand = line_angles(jet_, phi(j));
      if (!cand) return false;
      const double t0 = theta_[0][j - 1], t1 = theta_[1][j - 1];
      // Assignment of the two candidates with the smaller total jump.
      const double straight = std::abs(reduce_half_turn((*cand)[0] - t0)) +
                              std::abs(reduce_half_turn((*cand)[1] - t1));
      const double crossed = std::abs(reduce_half_turn((*cand)[1] - t0)) +
                             std::abs(reduce_half_turn((*cand)[0] - t1));
      if (crossed < straight) std::swap((*cand)[0], (*cand)[1]);
      theta_[0][j] = t0 + reduce_half_turn((*cand)[0] - t0);
      theta_[1][j] = t1 + reduce_half_turn((*cand)[1] - t1);
    }
    return true;
  }

  double phi(int j) const { return 2 * kPi * j / n_; }
  double step() const { return 2 * kPi / n_; }
  const std::vector<double>& theta(int f) const { return theta_[f]; }

  // psi = theta - phi for foliation f at arbitrary phi, reduced to (-pi/2, pi/2].
  std::optional<double> psi(int f, double ph) const {
    double x = std::fmod(ph, 2 * kPi);
    if (x < 0) x += 2 * kPi;
    const double pos = x / step();
    const int j = std::min(static_cast<int>(pos), n_ - 1);
    const double w = pos - j;
    const double guess = (1 - w) * theta_[f][j] + w * theta_[f][j + 1];
    auto cand = line_angles(jet_, ph);
    if (!cand) return std::nullopt;
    return reduce_half_turn(follow_line(*cand, guess) - ph);
  }

 private:
  const LinearJet& jet_;
  int n_;
  std::vector<double> theta_[2];
};

enum class Fan { converges, diverges, unclear };

Fan follow_fan(const Tracker& tr, int f, double phi_star, double offset, const OracleOptions& opt) {
  double ph = phi_star + offset;
  const double h = -opt.rho_step;
  const int steps = static_cast<int>(std::ceil(opt.rho_span / opt.rho_step));
  auto rate = [&](double x) -> std::optional<double> {
    auto p = tr.psi(f, x);
    if (!p) return std::nullopt;
    return std::tan(*p);
  };
  for (int i = 0; i < steps; ++i) {
    auto p = tr.psi(f, ph);
    if (!p) return Fan::unclear;
    if (std::abs(*p) > kPi / 4) return Fan::diverges;
    auto k1 = rate(ph);
    auto k2 = k1 ? rate(ph + 0.5 * h * *k1) : std::nullopt;
    auto k3 = k2 ? rate(ph + 0.5 * h * *k2) : std::nullopt;
    auto k4 = k3 ? rate(ph + h * *k3) : std::nullopt;
    if (!k4) return Fan::unclear;
    ph += h / 6 * (*k1 + 2 * *k2 + 2 * *k3 + *k4);
  }
  // A fan leaving the ray may also settle on a neighbouring parabolic ray.
  const double drift = std::abs(ph - phi_star);
  if (drift < 0.5 * std::abs(offset)) return Fan::converges;
  if (drift > 2 * std::abs(offset)) return Fan::diverges;
  return Fan::unclear;
}

FoliationCensus census_of(const Tracker& tr, int f, int samples, const OracleOptions& opt) {
  FoliationCensus out;
  const auto& th = tr.theta(f);
  for (int j = 0; j < samples; ++j) {
    const double p0 = th[j] - tr.phi(j), p1 = th[j + 1] - tr.phi(j + 1);
    const double s0 = std::sin(2 * p0), s1 = std::sin(2 * p1);
    if (std::cos(2 * p0) <= 0 || std::cos(2 * p1) <= 0) continue;
    if ((s0 < 0) != (s1 < 0)) {
      RadialRay ray;
      const double w = s0 == s1 ? 0.0 : s0 / (s0 - s1);
      ray.phi = tr.phi(j) + w * tr.step();
      ray.slope = std::tan(ray.phi);
      ray.psi_slope = (p1 - p0) / tr.step();
      out.rays.push_back(ray);
    }
  }

  bool all_clear = true;
  const std::size_t n = out.rays.size();
  for (std::size_t i = 0; i < n; ++i) {
    RadialRay& ray = out.rays[i];
    double gap = 2 * kPi;
    if (n > 1) {
      const double prev = out.rays[(i + n - 1) % n].phi, next = out.rays[(i + 1) % n].phi;
      gap = std::min(std::fmod(ray.phi - prev + 2 * kPi, 2 * kPi),
                     std::fmod(next - ray.phi + 2 * kPi, 2 * kPi));
    }
    const double offset = std::min(opt.fan_offset, 0.25 * gap);
    const Fan plus = follow_fan(tr, f, ray.phi, offset, opt);
    const Fan minus = follow_fan(tr, f, ray.phi, -offset, opt);
    if (plus == Fan::converges && minus == Fan::converges && ray.psi_slope > 0) {
      ray.kind = RayKind::parabolic;
      ++out.parabolic_rays;
    } else if (plus == Fan::diverges && minus == Fan::diverges && ray.psi_slope < 0) {
      ray.kind = RayKind::separatrix;
      ++out.separatrices;
    } else {
      ray.kind = RayKind::inconclusive;
      all_clear = false;
    }
  }

  if (!all_clear || out.separatrices == 0) return out;
  // Sectors between consecutive separatrices (cyclically).
  std::vector<std::size_t> seps;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.rays[i].kind == RayKind::separatrix) seps.push_back(i);
  }
  for (std::size_t s = 0; s < seps.size(); ++s) {
    const std::size_t from = seps[s];
    const std::size_t to = seps[(s + 1) % seps.size()];
    bool parabolic = false;
    for (std::size_t i = (from + 1) % n; i != to; i = (i + 1) % n) {
      parabolic = parabolic || out.rays[i].kind == RayKind::parabolic;
    }
    if (seps.size() == 1) {
      parabolic = out.parabolic_rays > 0;
    }
    ++(parabolic ? out.parabolic_sectors : out.hyperbolic_sectors);
  }
  out.conclusive = true;
  if (out.separatrices == 1 && out.parabolic_rays == 0 && out.hyperbolic_sectors == 1) {
    out.verdict = Verdict::D1;
  } else if (out.separatrices == 2 && out.parabolic_sectors == 1 && out.hyperbolic_sectors == 1) {
    out.verdict = Verdict::D2;
  } else if (out.separatrices == 3 && out.parabolic_rays == 0 && out.hyperbolic_sectors == 3) {
    out.verdict = Verdict::D3;
  } else {
    out.conclusive = false;
  }
  return out;
}

}  // namespace

PortraitCensus phase_portrait_oracle(const LinearJet& jet, const OracleOptions& opt) {
  if (opt.samples < 16) throw InvalidArgument("oracle needs at least 16 samples");
  PortraitCensus out;
  Tracker tr(jet, opt.samples);
  if (!tr.run()) return out;

  // Each line field must close up after one turn (same line, not the other field).
  for (int f = 0; f < 2; ++f) {
    const double turn = tr.theta(f).back() - tr.theta(f).front();
    if (std::abs(reduce_half_turn(turn)) > 1e-3) return out;
  }
  out.index = (tr.theta(0).back() - tr.theta(0).front()) / (2 * kPi);

  for (int f = 0; f < 2; ++f) out.foliation[f] = census_of(tr, f, opt.samples, opt);
  const auto& a = out.foliation[0];
  const auto& b = out.foliation[1];
  out.conclusive = a.conclusive && b.conclusive && a.verdict == b.verdict;
  if (out.conclusive) out.verdict = a.verdict;
  return out;
}

}  // namespace umbilic
