#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "umbilic/chart.hpp"
#include "umbilic/profiles.hpp"

namespace umbilic::cli {

// Malformed or incomplete scenario file (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double jet = 1e-8;
  double closure = 1e-6;
};

// Scenario file (JSON):
//   {
//     "name": "darboux_d3",
//     "l": 1.0, "closed": false, "u_begin": -0.5,
//     "profiles": {
//       "k":   {"kind": "polynomial", "coeffs": [1, 0, -1]},
//       "k_g": {"kind": "fourier", "period": 6.283185307179586, "coeffs": [0, 1, 0]},
//       "a": 2.0,                      // a bare number is a constant profile
//       ...
//     },
//     "strip": {"v_max": 0.2},          // optional
//     "tolerances": {"jet": 1e-8, "closure": 1e-6},  // optional
//     "frame_step": 1e-3                // optional
//   }
// Profiles: k, k_g, a, b (default 0) and tau (closure only).
struct Scenario {
  std::string name;
  double l = 0;
  bool closed = false;
  double u_begin = 0;
  std::map<std::string, ScalarProfile> profiles;
  std::optional<double> v_max;
  double frame_step = 1e-3;
  Tolerances tolerances;

  bool has(const std::string& profile) const { return profiles.count(profile) != 0; }
  const ScalarProfile& profile(const std::string& name) const;
  UmbilicSurfaceSpec surface() const;
};

Scenario parse_scenario(const nlohmann::json& doc, const std::string& fallback_name);
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace umbilic::cli
