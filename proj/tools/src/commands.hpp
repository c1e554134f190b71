#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "scenario.hpp"

namespace umbilic::cli {

enum ExitStatus : int { kOk = 0, kHypothesisViolation = 1, kConfigError = 2 };

struct RunOptions {
  std::filesystem::path out = "out";
  bool svg = false;
  std::optional<double> tol;
  std::uint64_t seed = 1;
};

// Each command prints its report to `out` and writes its files under
// <out>/<scenario>/<command>/.
void run_classify(const Scenario& s, double u0, const RunOptions& opt, std::ostream& out);
void run_portrait(const Scenario& s, double u0, const RunOptions& opt, std::ostream& out);
void run_flow(const Scenario& s, double u, double v, int foliation, const RunOptions& opt,
              std::ostream& out);
void run_holonomy(const Scenario& s, const RunOptions& opt, std::ostream& out);
void run_closure(const Scenario& s, const RunOptions& opt, std::ostream& out);
void run_verify_forms(const Scenario& s, const RunOptions& opt, std::ostream& out);

/// Parses the command line, runs the command and maps failures to exit statuses.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace umbilic::cli
