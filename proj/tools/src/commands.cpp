#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "svg.hpp"
#include "umbilic/blowup.hpp"
#include "umbilic/curvebuild.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/holonomy.hpp"
#include "umbilic/lineode.hpp"
#include "umbilic/portrait.hpp"
#include "umbilic/verify.hpp"

namespace umbilic::cli {

namespace fs = std::filesystem;

namespace {

fs::path command_dir(const Scenario& s, const RunOptions& opt, const char* command) {
  const fs::path dir = opt.out / s.name / command;
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

std::string g(double x) { return fmt::format("{:.12g}", x); }

// ---- classification report ------------------------------------------------

std::string classification_text(const Scenario& s, const ClassificationReport& r) {
  const LocalInvariants& inv = r.invariants;
  std::string t;
  t += fmt::format("scenario: {}\nu0: {}\ncase: {}\n", s.name, g(inv.u0), to_string(inv.point_case));
  t += fmt::format("jet: k={} k'={} k''={} k_g={} a={} a'={} b={}\n", g(inv.k0), g(inv.kprime),
                   g(inv.ksecond), g(inv.kg0), g(inv.a0), g(inv.aprime), g(inv.b0));
  if (inv.point_case == PointCase::darboux_like) {
    t += fmt::format("A: {}\nB: {}\nDelta: {}\ndelta: {}\n", g(inv.A), g(inv.B), g(inv.Delta),
                     g(inv.delta));
  }
  if (inv.point_case == PointCase::a_zero) t += fmt::format("a1: {}\n", g(inv.a1));
  if (!r.singularities.empty()) {
    t += "singularities:\n";
    for (const auto& sg : r.singularities) {
      t += fmt::format("  p={} lambda1={} lambda2={} {}\n", g(sg.p), g(sg.lambda1), g(sg.lambda2),
                       to_string(sg.kind));
    }
  }
  t += fmt::format("verdict: {}\npaper_verdict: {}\nagrees: {}\n", to_string(r.verdict),
                   to_string(r.paper_verdict), r.agrees ? "true" : "false");
  if (inv.point_case == PointCase::darboux_like || inv.point_case == PointCase::a_zero) {
    t += fmt::format("index: {}\n", g(r.index));
  }
  if (r.surface_verdict) t += fmt::format("surface_verdict: {}\n", to_string(*r.surface_verdict));
  for (const auto& d : r.diagnostics) t += fmt::format("note: {}\n", d);
  return t;
}

std::string singularities_csv(const ClassificationReport& r) {
  std::string t = "p,lambda1,lambda2,kind\n";
  for (const auto& sg : r.singularities) {
    t += fmt::format("{},{},{},{}\n", g(sg.p), g(sg.lambda1), g(sg.lambda2), to_string(sg.kind));
  }
  return t;
}

// ---- portraits ---------------------------------------------------------------

struct PortraitData {
  double u0, radius;
  std::vector<Trajectory> lines;
};

// Curvature lines of both foliations started on a ring around (u0, 0), cut to
// a square window of half-width 1.5 radius.
PortraitData ring_portrait(const UmbilicSurfaceSpec& spec, double u0) {
  PortraitData data{u0, std::min(0.05, 0.4 * spec.v_max), {}};
  const double r = data.radius;
  const double window = 1.5 * r;
  constexpr int kStarts = 24;
  LineOptions opt;
  opt.ds = r / 40;
  opt.max_steps = 160;
  for (int i = 0; i < kStarts; ++i) {
    const double phi = 2 * std::numbers::pi * (i + 0.5) / kStarts;
    const ChartPoint start{u0 + r * std::cos(phi), r * std::sin(phi)};
    if (!spec.in_domain(start.u)) continue;
    for (int f = 1; f <= 2; ++f) {
      Trajectory merged;
      merged.foliation = f;
      for (bool reverse : {true, false}) {
        opt.reverse = reverse;
        Trajectory t;
        try {
          t = integrate_principal_line(spec, start, f, opt);
        } catch (const Error&) {
          continue;
        }
        std::vector<ChartPoint> kept;
        for (const auto& p : t.points) {
          if (std::abs(p.u - u0) > window || std::abs(p.v) > window) break;
          kept.push_back(p);
        }
        if (reverse) {
          merged.points.assign(kept.rbegin(), kept.rend());
        } else if (!kept.empty()) {
          merged.points.insert(merged.points.end(), kept.begin() + (merged.points.empty() ? 0 : 1),
                               kept.end());
        }
      }
      if (merged.points.size() >= 2) data.lines.push_back(std::move(merged));
    }
  }
  return data;
}

const char* foliation_color(int f) { return f == 1 ? "#1f5fbf" : "#c0392b"; }

std::string blowdown_svg(const PortraitData& d, const std::string& title) {
  const double w = 1.5 * d.radius;
  SvgPlot plot(d.u0 - w, d.u0 + w, -w, w);
  plot.axes_box();
  plot.polyline({{d.u0 - w, 0.0}, {d.u0 + w, 0.0}}, "#555", 1.5, true);
  for (const auto& line : d.lines) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : line.points) pts.emplace_back(p.u, p.v);
    plot.polyline(pts, foliation_color(line.foliation), 0.8);
  }
  plot.dot(d.u0, 0.0, 3, "black");
  plot.label(d.u0 - w, w, title);
  return plot.str();
}

// Same lines in polar blow-up coordinates (angle, log radius).
std::string blowup_svg(const PortraitData& d, const PortraitCensus* census, const std::string& title) {
  const double rho_max = std::log(1.5 * std::sqrt(2.0) * d.radius);
  const double rho_min = rho_max - 4;
  SvgPlot plot(0, 2 * std::numbers::pi, rho_min, rho_max);
  plot.axes_box();
  for (const auto& line : d.lines) {
    std::vector<std::pair<double, double>> seg;
    double prev = -1;
    for (const auto& p : line.points) {
      const double du = p.u - d.u0;
      const double r = std::hypot(du, p.v);
      if (r <= 0) continue;
      double phi = std::atan2(p.v, du);
      if (phi < 0) phi += 2 * std::numbers::pi;
      if (prev >= 0 && std::abs(phi - prev) > std::numbers::pi) {
        plot.polyline(seg, foliation_color(line.foliation), 0.8);
        seg.clear();
      }
      seg.emplace_back(phi, std::max(std::log(r), rho_min));
      prev = phi;
    }
    plot.polyline(seg, foliation_color(line.foliation), 0.8);
  }
  if (census != nullptr) {
    for (int f = 0; f < 2; ++f) {
      for (const auto& ray : census->foliation[f].rays) {
        double phi = std::fmod(ray.phi, 2 * std::numbers::pi);
        if (phi < 0) phi += 2 * std::numbers::pi;
        plot.polyline({{phi, rho_min}, {phi, rho_max}}, foliation_color(f + 1), 1.2,
                      ray.kind != RayKind::separatrix);
      }
    }
  }
  plot.label(0, rho_max, title);
  return plot.str();
}

std::string trajectories_csv(const std::vector<Trajectory>& lines) {
  std::ostringstream os;
  write_trajectory_csv(os, lines);
  return os.str();
}

const char* ray_kind(RayKind k) {
  switch (k) {
    case RayKind::separatrix: return "separatrix";
    case RayKind::parabolic: return "parabolic";
    case RayKind::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string census_text(const char* label, const PortraitCensus& c) {
  std::string t = fmt::format("{}:\n", label);
  for (int f = 0; f < 2; ++f) {
    const auto& fc = c.foliation[f];
    t += fmt::format("  foliation {}: separatrices={} parabolic_rays={} hyperbolic_sectors={} parabolic_sectors={}\n",
                     f + 1, fc.separatrices, fc.parabolic_rays, fc.hyperbolic_sectors,
                     fc.parabolic_sectors);
  }
  t += fmt::format("  index: {}\n  census: {}\n", g(c.index),
                   c.verdict ? std::string(to_string(*c.verdict)) : std::string("inconclusive"));
  return t;
}

void append_rays(std::string& csv, const char* jet, const PortraitCensus& c) {
  for (int f = 0; f < 2; ++f) {
    for (const auto& ray : c.foliation[f].rays) {
      csv += fmt::format("{},{},{},{},{}\n", jet, f + 1, g(ray.phi), g(ray.slope), ray_kind(ray.kind));
    }
  }
}

}  // namespace

void run_classify(const Scenario& s, double u0, const RunOptions& opt, std::ostream& out) {
  const UmbilicSurfaceSpec spec = s.surface();
  if (!spec.in_domain(u0)) throw ConfigError("u0 outside the scenario's curve");
  const double tol = opt.tol.value_or(s.tolerances.jet);
  const ClassificationReport r = classify_point(spec, u0, tol);
  const fs::path dir = command_dir(s, opt, "classify");
  const std::string text = classification_text(s, r);
  write_file(dir / "report.txt", text);
  write_file(dir / "singularities.csv", singularities_csv(r));
  if (opt.svg) {
    const PortraitData d = ring_portrait(spec, u0);
    write_file(dir / "blowdown.svg", blowdown_svg(d, s.name + " near u0 = " + g(u0)));
    std::optional<PortraitCensus> census;
    if (r.invariants.point_case == PointCase::darboux_like || r.invariants.point_case == PointCase::a_zero) {
      census = phase_portrait_oracle(surface_jet(spec, u0));
    }
    write_file(dir / "blowup.svg", blowup_svg(d, census ? &*census : nullptr, "polar blow-up"));
  }
  out << text;
}

void run_portrait(const Scenario& s, double u0, const RunOptions& opt, std::ostream& out) {
  const UmbilicSurfaceSpec spec = s.surface();
  if (!spec.in_domain(u0)) throw ConfigError("u0 outside the scenario's curve");
  const double tol = opt.tol.value_or(s.tolerances.jet);
  const ClassificationReport r = classify_point(spec, u0, tol);
  const fs::path dir = command_dir(s, opt, "portrait");

  std::string text = fmt::format("scenario: {}\nu0: {}\ncase: {}\n", s.name, g(u0),
                                 to_string(r.invariants.point_case));
  std::string rays = "jet,foliation,phi,slope,kind\n";
  std::optional<PortraitCensus> surface_census;
  if (r.invariants.point_case == PointCase::darboux_like || r.invariants.point_case == PointCase::a_zero) {
    const PortraitCensus printed = phase_portrait_oracle(r.jet);
    surface_census = phase_portrait_oracle(surface_jet(spec, u0));
    text += census_text("printed jet", printed);
    text += census_text("surface jet", *surface_census);
    text += fmt::format("classify verdict: {}\n", to_string(r.verdict));
    if (r.surface_verdict) text += fmt::format("surface verdict: {}\n", to_string(*r.surface_verdict));
    append_rays(rays, "printed", printed);
    append_rays(rays, "surface", *surface_census);
  } else {
    text += "no blow-up census: the point is not an isolated singularity of the divided equation\n";
  }
  const PortraitData d = ring_portrait(spec, u0);
  text += fmt::format("trajectories: {}\n", d.lines.size());
  write_file(dir / "report.txt", text);
  write_file(dir / "rays.csv", rays);
  write_file(dir / "trajectories.csv", trajectories_csv(d.lines));
  if (opt.svg) {
    write_file(dir / "blowdown.svg", blowdown_svg(d, s.name + " near u0 = " + g(u0)));
    write_file(dir / "blowup.svg",
               blowup_svg(d, surface_census ? &*surface_census : nullptr, "polar blow-up"));
  }
  out << text;
}

void run_flow(const Scenario& s, double u, double v, int foliation, const RunOptions& opt,
              std::ostream& out) {
  if (foliation != 1 && foliation != 2) throw ConfigError("foliation must be 1 or 2");
  const UmbilicSurfaceSpec spec = s.surface();
  LineOptions lo;
  lo.ds = 1e-2;
  lo.max_steps = 2000;
  if (opt.tol) lo.tol = *opt.tol;
  lo.reverse = true;
  const Trajectory back = integrate_principal_line(spec, {u, v}, foliation, lo);
  lo.reverse = false;
  const Trajectory fwd = integrate_principal_line(spec, {u, v}, foliation, lo);

  Trajectory merged;
  merged.foliation = foliation;
  merged.points.assign(back.points.rbegin(), back.points.rend());
  merged.points.insert(merged.points.end(), fwd.points.begin() + 1, fwd.points.end());

  const fs::path dir = command_dir(s, opt, "flow");
  write_file(dir / "trajectory.csv", trajectories_csv({merged}));
  std::string text = fmt::format(
      "scenario: {}\nstart: ({}, {})\nfoliation: {}\npoints: {}\nbackward_termination: {}\n"
      "forward_termination: {}\n",
      s.name, g(u), g(v), foliation, merged.points.size(), to_string(back.terminated_by),
      to_string(fwd.terminated_by));
  write_file(dir / "report.txt", text);
  if (opt.svg) {
    double umin = spec.u_begin, umax = spec.u_end();
    SvgPlot plot(umin, umax, -spec.v_max, spec.v_max);
    plot.axes_box();
    plot.polyline({{umin, 0.0}, {umax, 0.0}}, "#555", 1.5, true);
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : merged.points) pts.emplace_back(p.u, p.v);
    plot.polyline(pts, foliation_color(foliation), 1.2);
    plot.dot(u, v, 3, "black");
    write_file(dir / "trajectory.svg", plot.str());
  }
  out << text;
}

void run_holonomy(const Scenario& s, const RunOptions& opt, std::ostream& out) {
  const UmbilicSurfaceSpec spec = s.surface();
  ReturnMapOptions ro;
  if (opt.tol) ro.none_tol = *opt.tol;
  const ReturnMapReport r = return_map_numeric(spec, ro);

  std::vector<double> grid;
  for (int i = 0; i <= 64; ++i) grid.push_back(spec.u_begin + spec.l * i / 64);
  const auto q = second_variation_ode(spec, grid);

  const fs::path dir = command_dir(s, opt, "holonomy");
  std::string csv = "v0,pi\n";
  for (const auto& smp : r.samples) csv += fmt::format("{},{}\n", g(smp.v0), fmt::format("{:.15g}", smp.pi));
  write_file(dir / "return_map.csv", csv);
  std::string qcsv = "u,q_ode,q_closed\n";
  for (const auto& smp : q) qcsv += fmt::format("{},{},{}\n", g(smp.u), g(smp.q_ode), g(smp.q_closed));
  write_file(dir / "second_variation.csv", qcsv);

  const std::string text = fmt::format(
      "scenario: {}\na0: {}\npi_prime: {}\npi_prime_numeric: {}\nspiral_integral: {}\n"
      "pi_second_analytic: {}\npi_second_numeric: {}\nrelative_error: {}\nq(l) ode: {}\n"
      "q(l) closed form: {}\nspiral: {}\n",
      s.name, g(r.a0), g(r.pi_prime), g(r.pi_prime_numeric), g(r.spiral_integral),
      g(r.pi_second_analytic), g(r.pi_second_numeric), g(r.relative_error), g(q.back().q_ode),
      g(q.back().q_closed), to_string(r.spiral));
  write_file(dir / "report.txt", text);
  out << text;
}

void run_closure(const Scenario& s, const RunOptions& opt, std::ostream& out) {
  ClosureOptions co;
  co.tolerance = opt.tol.value_or(s.tolerances.closure);
  const ClosureReport r = closure_check(s.profile("tau"), s.l, co);
  const fs::path dir = command_dir(s, opt, "closure");
  std::string text = fmt::format(
      "scenario: {}\ntotal_torsion: {}\nresidual: {}\ntolerance: {}\npasses: {}\n"
      "frame_monodromy_angle: {}\nmonodromy_minus_residual: {}\n",
      s.name, g(r.total_torsion), g(r.residual), g(r.tolerance), r.passes ? "true" : "false",
      g(r.frame_monodromy_angle), g(wrap_angle(r.frame_monodromy_angle - r.residual)));
  if (s.has("k") && s.has("k_g")) {
    const FrameField frame = integrate_darboux_frame(s.profile("k"), s.profile("k_g"), s.l,
                                                     s.frame_step, s.u_begin);
    std::ostringstream csv;
    write_frame_csv(csv, frame);
    write_file(dir / "frame.csv", csv.str());
    const FrameGap gap = frame_end_gap(frame);
    text += fmt::format("curve_end_gap: {}\nframe_end_gap: {}\n", g(gap.position), g(gap.frame));
  }
  write_file(dir / "report.txt", text);
  out << text;
}

void run_verify_forms(const Scenario& s, const RunOptions& opt, std::ostream& out) {
  const UmbilicSurfaceSpec spec = s.surface();
  std::mt19937_64 rng(opt.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<double> us;
  for (int i = 0; i < 3; ++i) us.push_back(spec.u_begin + spec.l * (0.1 + 0.8 * uniform()));
  const std::vector<double> vs = geometric_grid(1e-3, std::min(1e-1, spec.v_max), 9);

  std::string csv = "u,v";
  for (const char* c : {"E", "F", "G", "e", "f", "g"}) csv += fmt::format(",{0}_series,{0}_numeric", c);
  csv += '\n';
  std::string law = "u,coefficient,order,slope,passes\n";
  std::string text = fmt::format("scenario: {}\nseed: {}\n", s.name, opt.seed);
  for (double u : us) {
    for (double v : vs) {
      const auto pairs = compare_series(spec, u, v);
      csv += fmt::format("{},{}", g(u), g(v));
      for (int i = 0; i < 6; ++i) csv += fmt::format(",{:.15g},{:.15g}", pairs[i].series, pairs[i].numeric);
      csv += '\n';
    }
    text += fmt::format("u = {}:", g(u));
    for (const auto& o : order_law(spec, u, vs)) {
      law += fmt::format("{},{},{},{:.4f},{}\n", g(u), o.name, o.order, o.slope, o.passes ? "true" : "false");
      text += fmt::format(" {}={:.2f}{}", o.name, o.slope, o.passes ? "" : "!");
    }
    text += '\n';
  }
  text += "(slope of |series - numeric| against v; '!' marks slopes below order - 0.5)\n";
  const fs::path dir = command_dir(s, opt, "verify-forms");
  write_file(dir / "forms.csv", csv);
  write_file(dir / "order_law.csv", law);
  write_file(dir / "report.txt", text);
  out << text;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal curvature lines near a curve of umbilic points", "umbilic"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string scenario_file;
  RunOptions opt;
  std::string out_dir = "out";
  double tol = 0;
  app.add_option("--scenario", scenario_file, "scenario file (JSON)")->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_flag("--svg", opt.svg, "also write SVG plots");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance override (jet, closure or spiral)");
  app.add_option("--seed", opt.seed, "seed for sampled evaluation points")->capture_default_str();

  double u0 = 0, u = 0, v = 0;
  int foliation = 1;
  auto* classify = app.add_subcommand("classify", "classify a point of the umbilic curve");
  classify->add_option("u0", u0)->required();
  auto* portrait = app.add_subcommand("portrait", "blow-up census and curvature lines near a point");
  portrait->add_option("u0", u0)->required();
  auto* flow = app.add_subcommand("flow", "integrate one curvature line");
  flow->add_option("u", u)->required();
  flow->add_option("v", v)->required();
  flow->add_option("foliation", foliation)->required()->check(CLI::Range(1, 2));
  auto* holonomy = app.add_subcommand("holonomy", "return map along a closed umbilic curve");
  auto* closure = app.add_subcommand("closure", "closure condition for the total torsion");
  auto* verify = app.add_subcommand("verify-forms", "printed series against finite differences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  opt.out = out_dir;
  if (tol_opt->count() > 0) opt.tol = tol;

  try {
    const Scenario s = load_scenario(scenario_file);
    if (classify->parsed()) run_classify(s, u0, opt, out);
    if (portrait->parsed()) run_portrait(s, u0, opt, out);
    if (flow->parsed()) run_flow(s, u, v, foliation, opt, out);
    if (holonomy->parsed()) run_holonomy(s, opt, out);
    if (closure->parsed()) run_closure(s, opt, out);
    if (verify->parsed()) run_verify_forms(s, opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violation: " << e.what() << '\n';
    return kHypothesisViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kHypothesisViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

}  // namespace umbilic::cli
